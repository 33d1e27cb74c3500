//! Exact optima on small instances.
//!
//! A plan sends every reading along one simple path to the sink. Nodes may
//! buffer indefinitely, so an arc carrying a multiset of readings costs the
//! minimum number of packets that hold them: `ceil(x/k)` for `x` unit
//! readings, an exact bin packing otherwise. Restricting to simple paths
//! loses nothing: cutting a cycle out of a walk never raises any arc's
//! load, and arc cost is monotone in load.

mod search;

pub use search::{enumerate_simple_paths, solve_exact, ExactSolution, OracleLimits};

use std::collections::BTreeSet;

use crate::error::OracleError;
use crate::graph::{Instance, Mode, VertexId, SINK};
use crate::packing::min_bins;
use crate::routing::{HopTrace, Reading};

/// One simple path to the sink per reading; `paths[v]` starts at `v`.
/// `paths[0]` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingPlan {
    pub paths: Vec<Vec<VertexId>>,
}

impl RoutingPlan {
    /// Plan following a parent map (e.g. a shortest path tree).
    pub fn from_parents(parent: &[Option<VertexId>]) -> Self {
        let paths = (0..parent.len())
            .map(|v| {
                if v == SINK {
                    return Vec::new();
                }
                let mut path = vec![v];
                let mut at = v;
                while let Some(p) = parent[at] {
                    path.push(p);
                    at = p;
                    if path.len() > parent.len() {
                        break;
                    }
                }
                path
            })
            .collect();
        Self { paths }
    }

    pub fn validate(&self, instance: &Instance) -> Result<(), OracleError> {
        let n = instance.vertex_count();
        if self.paths.len() != n {
            return Err(OracleError::InvalidPlan(format!(
                "{} paths for {n} vertices",
                self.paths.len()
            )));
        }
        if !self.paths[SINK].is_empty() {
            return Err(OracleError::InvalidPlan("the sink has no reading".into()));
        }
        for (v, path) in self.paths.iter().enumerate().skip(1) {
            if path.first() != Some(&v) || path.last() != Some(&SINK) {
                return Err(OracleError::InvalidPlan(format!(
                    "path of {v} must run from {v} to the sink"
                )));
            }
            let mut seen = vec![false; n];
            for &w in path {
                if w >= n || seen[w] {
                    return Err(OracleError::InvalidPlan(format!("path of {v} is not simple")));
                }
                seen[w] = true;
            }
            if let Some(w) = path.windows(2).find(|w| !instance.graph().has_edge(w[0], w[1])) {
                return Err(OracleError::InvalidPlan(format!(
                    "path of {v} uses non-edge ({}, {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Readings crossing each arc, in ascending origin order.
    pub fn arc_loads(&self, instance: &Instance) -> Vec<Vec<Reading>> {
        let mut loads = vec![Vec::new(); 2 * instance.graph().edge_count()];
        for (origin, path) in self.paths.iter().enumerate().skip(1) {
            let reading = Reading {
                origin,
                size: instance.size(origin),
            };
            for w in path.windows(2) {
                let arc = instance.graph().arc_index(w[0], w[1]).expect("validated");
                loads[arc].push(reading);
            }
        }
        loads
    }
}

/// Σ over arcs of `ceil(load / k)`.
pub fn plan_cost_uccp(instance: &Instance, plan: &RoutingPlan) -> Result<u64, OracleError> {
    if instance.mode() != Mode::Uccp {
        return Err(OracleError::InvalidPlan("instance is not UCCP".into()));
    }
    plan.validate(instance)?;
    let k = instance.capacity() as usize;
    Ok(plan
        .arc_loads(instance)
        .iter()
        .map(|l| l.len().div_ceil(k) as u64)
        .sum())
}

/// Σ over arcs of the exact bin packing of the crossing readings.
pub fn plan_cost_ccp(instance: &Instance, plan: &RoutingPlan) -> Result<u64, OracleError> {
    plan.validate(instance)?;
    let mut total = 0;
    for load in plan.arc_loads(instance) {
        let sizes: Vec<u32> = load.iter().map(|r| r.size).collect();
        total += min_bins(&sizes, instance.capacity())?.0 as u64;
    }
    Ok(total)
}

pub fn plan_cost(instance: &Instance, plan: &RoutingPlan) -> Result<u64, OracleError> {
    match instance.mode() {
        Mode::Uccp => plan_cost_uccp(instance, plan),
        Mode::Ccp => plan_cost_ccp(instance, plan),
    }
}

/// Realizes a plan as a trace: arcs are emitted in a topological order of
/// the "some reading crosses this arc, then that one" relation, each
/// shipping its whole load in the minimum number of packets.
pub fn plan_to_trace(instance: &Instance, plan: &RoutingPlan) -> Result<HopTrace, OracleError> {
    plan.validate(instance)?;
    let graph = instance.graph();
    let arcs = 2 * graph.edge_count();
    let loads = plan.arc_loads(instance);

    let mut successors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); arcs];
    for path in plan.paths.iter().skip(1) {
        let route: Vec<usize> = path
            .windows(2)
            .map(|w| graph.arc_index(w[0], w[1]).expect("validated"))
            .collect();
        for pair in route.windows(2) {
            successors[pair[0]].insert(pair[1]);
        }
    }
    let mut indegree = vec![0usize; arcs];
    for next in successors.iter().flatten() {
        indegree[*next] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..arcs)
        .filter(|&a| !loads[a].is_empty() && indegree[a] == 0)
        .collect();
    let mut order = Vec::new();
    while let Some(a) = ready.pop_first() {
        order.push(a);
        for &b in &successors[a] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    let used = loads.iter().filter(|l| !l.is_empty()).count();
    if order.len() != used {
        let stuck = (0..arcs)
            .find(|&a| !loads[a].is_empty() && indegree[a] > 0)
            .expect("some arc is on a cycle");
        let (from, to) = arc_endpoints(instance, stuck);
        return Err(OracleError::CyclicDependency(from, to));
    }

    let k = instance.capacity();
    let mut trace = HopTrace::new();
    for a in order {
        let (from, to) = arc_endpoints(instance, a);
        let load = &loads[a];
        match instance.mode() {
            Mode::Uccp => {
                for packet in load.chunks(k as usize) {
                    trace.push(from, to, packet.to_vec());
                }
            }
            Mode::Ccp => {
                let sizes: Vec<u32> = load.iter().map(|r| r.size).collect();
                let (bins, assign) = min_bins(&sizes, k)?;
                for b in 0..bins {
                    let packet = load
                        .iter()
                        .zip(&assign)
                        .filter(|(_, &x)| x == b)
                        .map(|(r, _)| *r)
                        .collect();
                    trace.push(from, to, packet);
                }
            }
        }
    }
    Ok(trace)
}

fn arc_endpoints(instance: &Instance, arc: usize) -> (VertexId, VertexId) {
    let (u, v) = instance.graph().edges()[arc / 2];
    let (lo, hi) = (u.min(v), u.max(v));
    if arc % 2 == 0 {
        (lo, hi)
    } else {
        (hi, lo)
    }
}
