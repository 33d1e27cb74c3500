//! Convergecast routing on capacitated packets: instance generators,
//! shortest path tree routers, lower bounds and an exact oracle for small
//! instances.

pub mod bounds;
pub mod error;
pub mod experiment;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod packing;
pub mod routing;
pub mod spt;

pub use bounds::{BoundReport, RawBounds};
pub use error::{FormatError, InstanceError, OracleError, RoutingError, TraceError};
pub use graph::{DistanceMap, Graph, Instance, Mode, VertexId, SINK};
pub use oracle::{solve_exact, ExactSolution, OracleLimits, RoutingPlan};
pub use routing::{HopTrace, Metrics, PacketHop, Reading};
pub use spt::{build_spt, ParentPolicy, ShortestPathTree};
