use thiserror::Error;

/// Reasons an instance is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("graph is disconnected: vertex {0} cannot reach the sink")]
    DisconnectedGraph(usize),
    #[error("reading size of vertex {vertex} is {size}, outside [1, {capacity}]")]
    SizeOutOfRange {
        vertex: usize,
        size: u32,
        capacity: u32,
    },
    #[error("malformed edge ({0}, {1})")]
    MalformedEdge(usize, usize),
    #[error("packet capacity must be positive")]
    InvalidCapacity,
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("ell = {0} exceeds the supported maximum of 6")]
    EllTooLarge(usize),
    #[error("element {0} is not covered by any subset")]
    UncoveredElement(usize),
}

/// Errors raised while reading or writing the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("header declares {declared} but reading sizes imply {actual}")]
    ModeMismatch {
        declared: &'static str,
        actual: &'static str,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Errors raised by the routers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error("tree does not match instance: {0}")]
    TreeMismatch(String),
    #[error("instance is not a row-major grid with the sink at (1,1)")]
    NotAGrid,
    #[error("instance does not match the gadget construction: {0}")]
    NotAGadget(String),
}

/// Replay failures reported by [`crate::routing::validate_trace`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("hop {seq} carries {bytes} bytes, capacity is {capacity}")]
    CapacityExceeded { seq: u64, bytes: u64, capacity: u32 },
    #[error("hop {seq} uses ({from}, {to}) which is not an edge")]
    NonEdgeHop { seq: u64, from: usize, to: usize },
    #[error("hop {seq} is empty")]
    EmptyPacket { seq: u64 },
    #[error("hop {seq} has sequence number not greater than its predecessor")]
    SequenceOrder { seq: u64 },
    #[error("hop {seq} carries unknown reading {origin}")]
    UnknownReading { seq: u64, origin: usize },
    #[error("hop {seq} declares size {declared} for reading {origin}, instance says {actual}")]
    SizeMismatch {
        seq: u64,
        origin: usize,
        declared: u32,
        actual: u32,
    },
    #[error("hop {seq} sends reading {origin} from {from}, but the reading is not there")]
    CausalityViolation { seq: u64, origin: usize, from: usize },
    #[error("reading {origin} is duplicated (hop {seq})")]
    ReadingDuplicated { seq: u64, origin: usize },
    #[error("reading {origin} never reaches the sink")]
    ReadingLost { origin: usize },
}

/// Oracle failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance exceeds oracle limits: {0}")]
    LimitsExceeded(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("edge multiset of {0} items is too large for exact packing")]
    PackingTooLarge(usize),
    #[error("plan has a cyclic edge dependency through {0} -> {1}")]
    CyclicDependency(usize, usize),
}
