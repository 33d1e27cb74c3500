//! Graphs, problem instances and hop distances to the sink.

use std::collections::VecDeque;
use std::fmt;

use crate::error::InstanceError;

pub type VertexId = usize;

/// The sink is always vertex 0.
pub const SINK: VertexId = 0;

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are kept in the order they were supplied so that text files
/// round-trip byte for byte; adjacency lists are sorted by neighbor id.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    // (neighbor, undirected edge index), sorted by neighbor
    adjacency: Vec<Vec<(VertexId, usize)>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, InstanceError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u == v || u >= vertex_count || v >= vertex_count {
                return Err(InstanceError::MalformedEdge(u, v));
            }
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
        }
        for list in &mut adjacency {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                let (a, b) = edges[w[1].1];
                return Err(InstanceError::MalformedEdge(a, b));
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Index of the undirected edge `{u, v}`, if present.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Dense index in `0..2 * edge_count` for the directed arc `u -> v`.
    pub fn arc_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edge_index(u, v).map(|e| 2 * e + usize::from(u > v))
    }

    /// Same edge set, ignoring edge order and orientation.
    pub fn same_edge_set(&self, other: &Graph) -> bool {
        self.vertex_count == other.vertex_count && self.adjacency_sets() == other.adjacency_sets()
    }

    fn adjacency_sets(&self) -> Vec<Vec<VertexId>> {
        (0..self.vertex_count)
            .map(|v| self.neighbors(v).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Unit readings (UCCP) or arbitrary integral sizes (CCP).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Uccp,
    Ccp,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Uccp => "uccp",
            Mode::Ccp => "ccp",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// BFS hop distance of every vertex to the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap(Vec<u32>);

impl DistanceMap {
    pub fn get(&self, v: VertexId) -> u32 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Largest distance, `D`.
    pub fn depth(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }
}

/// A validated convergecast instance: connected graph, sink 0, capacity `k`
/// and one reading per non-sink vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    capacity: u32,
    sizes: Vec<u32>,
    distances: DistanceMap,
    mode: Mode,
}

impl Instance {
    /// Validates and builds an instance. `sizes[v]` is the reading size of
    /// vertex `v`; `sizes[0]` must be 0 since the sink holds no reading.
    pub fn new(graph: Graph, capacity: u32, sizes: Vec<u32>) -> Result<Self, InstanceError> {
        if capacity == 0 {
            return Err(InstanceError::InvalidCapacity);
        }
        let n = graph.vertex_count();
        if n == 0 {
            return Err(InstanceError::InvalidParameter("graph has no sink".into()));
        }
        if sizes.len() != n {
            return Err(InstanceError::InvalidParameter(format!(
                "{} reading sizes for {} vertices",
                sizes.len(),
                n
            )));
        }
        if sizes[SINK] != 0 {
            return Err(InstanceError::SizeOutOfRange {
                vertex: SINK,
                size: sizes[SINK],
                capacity,
            });
        }
        for (vertex, &size) in sizes.iter().enumerate().skip(1) {
            if size == 0 || size > capacity {
                return Err(InstanceError::SizeOutOfRange {
                    vertex,
                    size,
                    capacity,
                });
            }
        }
        let distances = bfs_distances(&graph)?;
        let mode = if sizes[1..].iter().all(|&s| s == 1) {
            Mode::Uccp
        } else {
            Mode::Ccp
        };
        Ok(Self {
            graph,
            capacity,
            sizes,
            distances,
            mode,
        })
    }

    /// Instance with a unit reading at every non-sink vertex.
    pub fn unit(graph: Graph, capacity: u32) -> Result<Self, InstanceError> {
        let mut sizes = vec![1; graph.vertex_count()];
        if let Some(s) = sizes.first_mut() {
            *s = 0;
        }
        Self::new(graph, capacity, sizes)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Packet capacity `k` in bytes.
    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn size(&self, v: VertexId) -> u32 {
        self.sizes[v]
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn distances(&self) -> &DistanceMap {
        &self.distances
    }

    pub fn distance(&self, v: VertexId) -> u32 {
        self.distances.get(v)
    }

    /// Number of non-sink vertices, `n = |V|`.
    pub fn reading_count(&self) -> usize {
        self.graph.vertex_count() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Non-sink vertices.
    pub fn readings(&self) -> impl Iterator<Item = VertexId> {
        1..self.graph.vertex_count()
    }

    pub fn total_bytes(&self) -> u64 {
        self.sizes.iter().map(|&s| u64::from(s)).sum()
    }
}

/// Re-validates the parts of an instance and returns it as a checked
/// [`Instance`].
pub fn validate_instance(graph: Graph, capacity: u32, sizes: Vec<u32>) -> Result<Instance, InstanceError> {
    Instance::new(graph, capacity, sizes)
}

/// BFS distances to the sink. Fails if some vertex is unreachable.
pub fn bfs_distances(graph: &Graph) -> Result<DistanceMap, InstanceError> {
    let n = graph.vertex_count();
    let mut dist = vec![u32::MAX; n];
    if n == 0 {
        return Ok(DistanceMap(dist));
    }
    let mut queue = VecDeque::new();
    dist[SINK] = 0;
    queue.push_back(SINK);
    while let Some(u) = queue.pop_front() {
        for w in graph.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = dist.iter().position(|&d| d == u32::MAX) {
        return Err(InstanceError::DisconnectedGraph(v));
    }
    Ok(DistanceMap(dist))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> Graph {
        Graph::new(n + 1, (0..n).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn line_of_three_is_valid_uccp() {
        let inst = Instance::unit(line(3), 2).unwrap();
        assert_eq!(inst.mode(), Mode::Uccp);
        assert_eq!(inst.reading_count(), 3);
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            Instance::unit(g, 2),
            Err(InstanceError::DisconnectedGraph(_))
        ));
    }

    #[test]
    fn oversized_reading_is_rejected() {
        let err = Instance::new(line(2), 3, vec![0, 1, 4]).unwrap_err();
        assert_eq!(
            err,
            InstanceError::SizeOutOfRange {
                vertex: 2,
                size: 4,
                capacity: 3
            }
        );
    }

    #[test]
    fn malformed_edges() {
        assert_eq!(
            Graph::new(3, vec![(1, 1)]).unwrap_err(),
            InstanceError::MalformedEdge(1, 1)
        );
        assert_eq!(
            Graph::new(3, vec![(0, 1), (1, 0)]).unwrap_err(),
            InstanceError::MalformedEdge(1, 0)
        );
        assert_eq!(
            Graph::new(3, vec![(0, 3)]).unwrap_err(),
            InstanceError::MalformedEdge(0, 3)
        );
    }

    #[test]
    fn ccp_mode_and_zero_capacity() {
        let inst = Instance::new(line(3), 2, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(inst.mode(), Mode::Ccp);
        assert_eq!(
            Instance::unit(line(1), 0).unwrap_err(),
            InstanceError::InvalidCapacity
        );
    }

    #[test]
    fn line_distances() {
        let inst = Instance::unit(line(3), 2).unwrap();
        assert_eq!(inst.distances().as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn two_by_two_grid_distances() {
        // (1,1)=0 (1,2)=1 (2,1)=2 (2,2)=3
        let g = Graph::new(4, vec![(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap();
        let d = bfs_distances(&g).unwrap();
        assert_eq!(d.get(1), 1);
        assert_eq!(d.get(2), 1);
        assert_eq!(d.get(3), 2);
    }

    #[test]
    fn arc_indices_are_distinct_per_direction() {
        let g = line(2);
        let a = g.arc_index(0, 1).unwrap();
        let b = g.arc_index(1, 0).unwrap();
        assert_ne!(a, b);
        assert!(a < 4 && b < 4);
        assert_eq!(g.arc_index(0, 2), None);
    }

    #[test]
    fn sink_only_instance() {
        let inst = Instance::unit(Graph::new(1, vec![]).unwrap(), 3).unwrap();
        assert_eq!(inst.reading_count(), 0);
        assert_eq!(inst.mode(), Mode::Uccp);
    }
}
