//! The layered gadget instance that separates restricted algorithms from
//! the optimum.
//!
//! Gadget `i` (1 = farthest from the sink) has `i*k` parallel lanes of
//! `k/i` vertices each, with `k = ell!`. Lane 0 of every gadget is the
//! corridor segment. A gateway vertex per gadget is adjacent to every lane
//! tail of its gadget and to every lane head of the previous gadget; the
//! heads of the last gadget are adjacent to the sink.

use std::fmt;

use crate::error::InstanceError;
use crate::graph::{Graph, Instance, VertexId, SINK};

/// Largest accepted `ell` (k = 720, about three million vertices).
pub const MAX_ELL: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    ell: usize,
    capacity: u32,
    gateways: Vec<VertexId>,
    /// `lanes[i - 1][j]` lists lane `j` of gadget `i` from tail to head.
    lanes: Vec<Vec<Vec<VertexId>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnnotationRole {
    Gateway,
    Spc,
    Head,
    Tail,
}

impl AnnotationRole {
    pub fn as_str(self) -> &'static str {
        match self {
            AnnotationRole::Gateway => "gateway",
            AnnotationRole::Spc => "spc",
            AnnotationRole::Head => "head",
            AnnotationRole::Tail => "tail",
        }
    }
}

impl fmt::Display for AnnotationRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AnnotationRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "gateway" => AnnotationRole::Gateway,
            "spc" => AnnotationRole::Spc,
            "head" => AnnotationRole::Head,
            "tail" => AnnotationRole::Tail,
            _ => return Err(format!("unknown annotation role {s:?}")),
        })
    }
}

/// One `a <v> <role> gadget=<i>` sidecar line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Annotation {
    pub vertex: VertexId,
    pub role: AnnotationRole,
    pub gadget: usize,
}

impl GadgetSpec {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Gateway of gadget `i` (1-based).
    pub fn gateway(&self, i: usize) -> VertexId {
        self.gateways[i - 1]
    }

    /// Lanes of gadget `i`, each listed tail to head; lane 0 is the
    /// corridor segment.
    pub fn lanes(&self, i: usize) -> &[Vec<VertexId>] {
        &self.lanes[i - 1]
    }

    /// Where the heads of gadget `i` deliver: the next gateway or the sink.
    pub fn exit(&self, i: usize) -> VertexId {
        if i == self.ell {
            SINK
        } else {
            self.gateway(i + 1)
        }
    }

    /// Every corridor vertex, gadget 1 first.
    pub fn spc_vertices(&self) -> Vec<VertexId> {
        self.lanes.iter().flat_map(|g| g[0].iter().copied()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.gateways.len() + self.lanes.iter().flatten().map(Vec::len).sum::<usize>()
    }

    /// Sidecar annotations sorted by vertex, then role.
    pub fn annotations(&self) -> Vec<Annotation> {
        let mut out = Vec::new();
        for i in 1..=self.ell {
            out.push(Annotation {
                vertex: self.gateway(i),
                role: AnnotationRole::Gateway,
                gadget: i,
            });
            for (j, lane) in self.lanes(i).iter().enumerate() {
                for (pos, &v) in lane.iter().enumerate() {
                    let mut push = |role| {
                        out.push(Annotation {
                            vertex: v,
                            role,
                            gadget: i,
                        })
                    };
                    if j == 0 {
                        push(AnnotationRole::Spc);
                    }
                    if pos + 1 == lane.len() {
                        push(AnnotationRole::Head);
                    }
                    if pos == 0 {
                        push(AnnotationRole::Tail);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Number of gadgets implied by a set of annotations (count of gateways).
    pub fn ell_from_annotations(annotations: &[Annotation]) -> usize {
        annotations
            .iter()
            .filter(|a| a.role == AnnotationRole::Gateway)
            .count()
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn gen_gadget(ell: usize) -> Result<(Instance, GadgetSpec), InstanceError> {
    if ell > MAX_ELL {
        return Err(InstanceError::EllTooLarge(ell));
    }
    if ell < 2 {
        return Err(InstanceError::InvalidParameter(format!(
            "ell must be at least 2, got {ell}"
        )));
    }
    let k = factorial(ell);
    let mut next: VertexId = 1;
    let mut gateways = Vec::with_capacity(ell);
    let mut lanes = Vec::with_capacity(ell);
    for i in 1..=ell {
        gateways.push(next);
        next += 1;
        let lane_len = k / i;
        let gadget: Vec<Vec<VertexId>> = (0..i * k)
            .map(|_| {
                let lane = (next..next + lane_len).collect();
                next += lane_len;
                lane
            })
            .collect();
        lanes.push(gadget);
    }
    let spec = GadgetSpec {
        ell,
        capacity: k as u32,
        gateways,
        lanes,
    };

    let mut edges = Vec::new();
    for i in 1..=ell {
        let gateway = spec.gateway(i);
        let exit = spec.exit(i);
        for lane in spec.lanes(i) {
            edges.push((gateway, lane[0]));
            edges.extend(lane.windows(2).map(|w| (w[0], w[1])));
            edges.push((lane[lane.len() - 1], exit));
        }
    }
    let graph = Graph::new(next, edges)?;
    debug_assert_eq!(graph.vertex_count(), spec.vertex_count());
    Ok((Instance::unit(graph, k as u32)?, spec))
}
