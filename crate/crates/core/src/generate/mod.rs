//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters (and seed); the
//! output always passes instance validation.

mod gadget;
mod reductions;

pub use gadget::{gen_gadget, Annotation, AnnotationRole, GadgetSpec, MAX_ELL};
pub use reductions::{gen_setcover, gen_setpartition, PartitionShape, SetCoverSpec, SetPartitionSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::InstanceError;
use crate::graph::{Graph, Instance, VertexId};

fn check_positive(name: &str, value: usize) -> Result<(), InstanceError> {
    if value == 0 {
        Err(InstanceError::InvalidParameter(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Path of `n` unit readings; vertex `i` sits at distance `i`.
pub fn gen_line(n: usize, k: u32) -> Result<Instance, InstanceError> {
    gen_line_with_sizes(&vec![1; n], k)
}

/// Path whose vertex at distance `j` carries `sizes[j - 1]`.
pub fn gen_line_with_sizes(sizes: &[u32], k: u32) -> Result<Instance, InstanceError> {
    let n = sizes.len();
    check_positive("n", n)?;
    check_positive("k", k as usize)?;
    let graph = Graph::new(n + 1, (0..n).map(|i| (i, i + 1)).collect())?;
    let mut all = Vec::with_capacity(n + 1);
    all.push(0);
    all.extend_from_slice(sizes);
    Instance::new(graph, k, all)
}

/// Row-major layout of an `rows x cols` grid; the sink is cell (1,1), id 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    /// Vertex id of the 1-based cell `(row, col)`.
    pub fn id(&self, row: usize, col: usize) -> VertexId {
        (row - 1) * self.cols + (col - 1)
    }

    /// 1-based `(row, col)` of a vertex id.
    pub fn cell(&self, v: VertexId) -> (usize, usize) {
        (v / self.cols + 1, v % self.cols + 1)
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = r * self.cols + c;
                if c + 1 < self.cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < self.rows {
                    edges.push((v, v + self.cols));
                }
            }
        }
        Graph::new(self.rows * self.cols, edges).expect("grid edges are well formed")
    }

    /// Recovers the grid shape of an instance, if its graph is exactly a
    /// row-major grid. A `1 x n` and an `n x 1` grid are the same line; the
    /// one with more columns is reported.
    pub fn detect(instance: &Instance) -> Option<GridShape> {
        let total = instance.vertex_count();
        let edges = instance.graph().edge_count();
        (1..=total)
            .filter(|rows| total % rows == 0)
            .map(|rows| GridShape {
                rows,
                cols: total / rows,
            })
            .filter(|s| s.rows * (s.cols - 1) + s.cols * (s.rows - 1) == edges)
            .find(|s| s.graph().same_edge_set(instance.graph()))
    }
}

/// `m x n` grid with the sink at (1,1) and `mn - 1` unit readings.
pub fn gen_grid(m: usize, n: usize, k: u32) -> Result<Instance, InstanceError> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    check_positive("k", k as usize)?;
    Instance::unit(GridShape { rows: m, cols: n }.graph(), k)
}

fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    (1..=n)
        .map(|v| (rng.gen_range(0..v as u64) as VertexId, v))
        .collect()
}

/// Uniform random recursive tree: vertex `v` attaches to a uniformly chosen
/// vertex in `0..v`.
pub fn gen_random_tree(n: usize, k: u32, seed: u64) -> Result<Instance, InstanceError> {
    check_positive("n", n)?;
    check_positive("k", k as usize)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = Graph::new(n + 1, random_tree_edges(n, &mut rng))?;
    Instance::unit(graph, k)
}

/// Random recursive spanning tree plus every other vertex pair added
/// independently with probability `density`.
pub fn gen_random_connected(n: usize, density: f64, k: u32, seed: u64) -> Result<Instance, InstanceError> {
    check_positive("n", n)?;
    check_positive("k", k as usize)?;
    if !(0.0..=1.0).contains(&density) {
        return Err(InstanceError::InvalidParameter(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree_edges(n, &mut rng);
    let mut present = vec![vec![false; n + 1]; n + 1];
    for &(u, v) in &edges {
        present[u][v] = true;
        present[v][u] = true;
    }
    for u in 0..=n {
        for v in u + 1..=n {
            if !present[u][v] && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Instance::unit(Graph::new(n + 1, edges)?, k)
}
