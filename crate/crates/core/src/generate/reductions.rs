//! Instances built from SET-COVER and SET-PARTITION inputs.

use crate::error::InstanceError;
use crate::graph::{Graph, Instance, VertexId, SINK};

/// Ground set `0..elements` and a family of subsets of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverSpec {
    pub elements: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl SetCoverSpec {
    pub fn new(elements: usize, subsets: Vec<Vec<usize>>) -> Self {
        Self { elements, subsets }
    }

    /// Packet capacity, the size of the largest subset.
    pub fn capacity(&self) -> u32 {
        self.subsets.iter().map(Vec::len).max().unwrap_or(0) as u32
    }

    /// Vertex of subset `i` (0-based).
    pub fn set_vertex(&self, i: usize) -> VertexId {
        1 + i
    }

    /// Vertex of element `j` (0-based).
    pub fn element_vertex(&self, j: usize) -> VertexId {
        1 + self.subsets.len() + j
    }

    /// Enforcer leaves hanging off subset `i`.
    pub fn enforcers(&self, i: usize) -> std::ops::Range<VertexId> {
        let per_set = self.capacity().saturating_sub(1) as usize;
        let start = 1 + self.subsets.len() + self.elements + i * per_set;
        start..start + per_set
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let mut covered = vec![false; self.elements];
        for subset in &self.subsets {
            let mut seen = vec![false; self.elements];
            for &x in subset {
                if x >= self.elements || seen[x] {
                    return Err(InstanceError::InvalidParameter(format!(
                        "subset {subset:?} has an out-of-range or repeated element"
                    )));
                }
                seen[x] = true;
                covered[x] = true;
            }
        }
        match covered.iter().position(|&c| !c) {
            Some(x) => Err(InstanceError::UncoveredElement(x)),
            None => Ok(()),
        }
    }
}

/// Three-level instance: sink, one vertex per subset, one vertex per
/// element, plus `k - 1` enforcer leaves per subset; `k = max |S_i|`.
pub fn gen_setcover(spec: &SetCoverSpec) -> Result<Instance, InstanceError> {
    spec.validate()?;
    let k = spec.capacity();
    if k == 0 {
        return Err(InstanceError::InvalidParameter("no non-empty subset".into()));
    }
    let m = spec.subsets.len();
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((SINK, spec.set_vertex(i)));
    }
    for (i, subset) in spec.subsets.iter().enumerate() {
        let mut members = subset.clone();
        members.sort_unstable();
        for x in members {
            edges.push((spec.set_vertex(i), spec.element_vertex(x)));
        }
    }
    for i in 0..m {
        for e in spec.enforcers(i) {
            edges.push((spec.set_vertex(i), e));
        }
    }
    let vertex_count = 1 + m + spec.elements + m * (k as usize - 1);
    Instance::unit(Graph::new(vertex_count, edges)?, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionShape {
    /// Chain ending at the sink; the first listed element is farthest away.
    Line,
    /// Leaves attached to a neck vertex of size `k`, which is attached to
    /// the sink.
    NeckTree,
}

/// Multiset of integers in `[1, k]` summing to `2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartitionSpec {
    pub elements: Vec<u32>,
    pub capacity: u32,
    pub shape: PartitionShape,
}

pub fn gen_setpartition(spec: &SetPartitionSpec) -> Result<Instance, InstanceError> {
    let k = spec.capacity;
    if k == 0 {
        return Err(InstanceError::InvalidCapacity);
    }
    let sum: u64 = spec.elements.iter().map(|&x| u64::from(x)).sum();
    if sum != 2 * u64::from(k) {
        return Err(InstanceError::InvalidParameter(format!(
            "elements sum to {sum}, expected {}",
            2 * k
        )));
    }
    if let Some((i, &x)) = spec.elements.iter().enumerate().find(|(_, &x)| x == 0 || x > k) {
        return Err(InstanceError::SizeOutOfRange {
            vertex: i + 1,
            size: x,
            capacity: k,
        });
    }
    let len = spec.elements.len();
    match spec.shape {
        PartitionShape::Line => {
            let graph = Graph::new(len + 1, (0..len).map(|i| (i, i + 1)).collect())?;
            let mut sizes = vec![0];
            sizes.extend(spec.elements.iter().rev());
            Instance::new(graph, k, sizes)
        }
        PartitionShape::NeckTree => {
            let mut edges = vec![(SINK, 1)];
            edges.extend((0..len).map(|i| (1, i + 2)));
            let graph = Graph::new(len + 2, edges)?;
            let mut sizes = vec![0, k];
            sizes.extend(&spec.elements);
            Instance::new(graph, k, sizes)
        }
    }
}
