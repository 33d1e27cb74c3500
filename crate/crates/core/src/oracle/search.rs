use std::collections::HashMap;

use crate::error::OracleError;
use crate::graph::{Instance, Mode, VertexId, SINK};
use crate::packing::min_bins;

use super::RoutingPlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest number of non-sink vertices accepted.
    pub max_vertices: usize,
    pub max_paths_per_vertex: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            max_paths_per_vertex: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub optimum: u64,
    pub plan: RoutingPlan,
    /// Search nodes visited.
    pub nodes: u64,
}

/// All simple paths from `origin` to the sink, shortest first, ties in
/// lexicographic vertex order.
pub fn enumerate_simple_paths(
    instance: &Instance,
    origin: VertexId,
    limit: usize,
) -> Result<Vec<Vec<VertexId>>, OracleError> {
    let graph = instance.graph();
    let mut on_path = vec![false; instance.vertex_count()];
    let mut paths = Vec::new();
    let mut path = vec![origin];
    on_path[origin] = true;
    let mut stack: Vec<Vec<VertexId>> = vec![graph.neighbors(origin).collect()];
    while let Some(frontier) = stack.last_mut() {
        let Some(w) = frontier.pop() else {
            stack.pop();
            let v = path.pop().expect("path tracks stack");
            on_path[v] = false;
            continue;
        };
        if on_path[w] {
            continue;
        }
        if w == SINK {
            let mut found = path.clone();
            found.push(SINK);
            paths.push(found);
            if paths.len() > limit {
                return Err(OracleError::LimitsExceeded(format!(
                    "vertex {origin} has more than {limit} simple paths to the sink"
                )));
            }
            continue;
        }
        on_path[w] = true;
        path.push(w);
        stack.push(graph.neighbors(w).collect());
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(paths)
}

/// Minimum hop count over all plans, by depth-first branch and bound.
///
/// Readings are fixed in order of decreasing distance (ties by id), each
/// trying its simple paths. A node is pruned when a lower bound on every
/// completion reaches the incumbent. The bound charges each distance layer
/// the larger of two estimates of the packets leaving it: the per-vertex
/// one (all bytes entering a vertex, and its own reading, must leave it)
/// and the per-cut one (all bytes at distance `>= i` cross into layer
/// `i - 1`).
pub fn solve_exact(instance: &Instance, limits: OracleLimits) -> Result<ExactSolution, OracleError> {
    let n = instance.reading_count();
    if n > limits.max_vertices {
        return Err(OracleError::LimitsExceeded(format!(
            "{n} non-sink vertices, limit is {}",
            limits.max_vertices
        )));
    }
    let mut search = Search::new(instance, limits)?;
    search.run(0);
    let mut paths = vec![Vec::new(); instance.vertex_count()];
    for (pos, &v) in search.order.iter().enumerate() {
        paths[v] = search.vertex_paths[pos][search.best_choice[pos]].clone();
    }
    Ok(ExactSolution {
        optimum: search.best,
        plan: RoutingPlan { paths },
        nodes: search.nodes,
    })
}

struct Search<'a> {
    instance: &'a Instance,
    k: u32,
    order: Vec<VertexId>,
    vertex_paths: Vec<Vec<Vec<VertexId>>>,
    arc_paths: Vec<Vec<Vec<usize>>>,
    /// Earlier position of an interchangeable leaf; its choice index is a
    /// lower limit for ours.
    twin_of: Vec<Option<usize>>,
    assigned: Vec<bool>,
    arc_tail: Vec<VertexId>,
    arc_down: Vec<bool>,
    layer: Vec<usize>,
    layers: usize,
    /// Bytes at distance `>= i`, indexed by `i`.
    cut_need: Vec<u64>,

    load: Vec<u32>,
    items: Vec<Vec<u32>>,
    arc_cost: Vec<u32>,
    out_bytes: Vec<u32>,
    out_cost: Vec<u32>,
    total: u64,

    choice: Vec<usize>,
    best: u64,
    best_choice: Vec<usize>,
    nodes: u64,
    bins_memo: HashMap<Vec<u32>, u32>,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, limits: OracleLimits) -> Result<Self, OracleError> {
        let graph = instance.graph();
        let nv = instance.vertex_count();
        let arcs = 2 * graph.edge_count();

        let mut order: Vec<VertexId> = instance.readings().collect();
        order.sort_by(|&a, &b| {
            instance
                .distance(b)
                .cmp(&instance.distance(a))
                .then(a.cmp(&b))
        });

        let mut vertex_paths = Vec::with_capacity(order.len());
        let mut arc_paths = Vec::with_capacity(order.len());
        for &v in &order {
            let paths = enumerate_simple_paths(instance, v, limits.max_paths_per_vertex)?;
            arc_paths.push(
                paths
                    .iter()
                    .map(|p| {
                        p.windows(2)
                            .map(|w| graph.arc_index(w[0], w[1]).expect("path follows edges"))
                            .collect()
                    })
                    .collect(),
            );
            vertex_paths.push(paths);
        }

        let twin_key = |v: VertexId| {
            (graph.degree(v) == 1 && v != SINK).then(|| {
                let hub = graph.neighbors(v).next().expect("degree one");
                (hub, instance.size(v))
            })
        };
        let mut twin_of = vec![None; order.len()];
        for pos in 0..order.len() {
            if let Some(key) = twin_key(order[pos]) {
                twin_of[pos] = (0..pos).rev().find(|&q| twin_key(order[q]) == Some(key));
            }
        }

        let mut arc_tail = vec![0; arcs];
        let mut arc_down = vec![false; arcs];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            let (lo, hi) = (u.min(v), u.max(v));
            for (arc, from, to) in [(2 * e, lo, hi), (2 * e + 1, hi, lo)] {
                arc_tail[arc] = from;
                arc_down[arc] = instance.distance(to) + 1 == instance.distance(from);
            }
        }
        let layers = instance.distances().depth() as usize + 1;
        let layer: Vec<usize> = (0..nv).map(|v| instance.distance(v) as usize).collect();
        let mut cut_need = vec![0u64; layers + 1];
        for v in instance.readings() {
            cut_need[layer[v]] += u64::from(instance.size(v));
        }
        for i in (1..layers).rev() {
            cut_need[i] += cut_need[i + 1];
        }

        let len = order.len();
        Ok(Self {
            instance,
            k: instance.capacity(),
            order,
            vertex_paths,
            arc_paths,
            twin_of,
            assigned: vec![false; nv],
            arc_tail,
            arc_down,
            layer,
            layers,
            cut_need,
            load: vec![0; arcs],
            items: vec![Vec::new(); arcs],
            arc_cost: vec![0; arcs],
            out_bytes: vec![0; nv],
            out_cost: vec![0; nv],
            total: 0,
            choice: vec![0; len],
            best: u64::MAX,
            best_choice: vec![0; len],
            nodes: 0,
            bins_memo: HashMap::new(),
        })
    }

    fn arc_cost_of(&mut self, arc: usize) -> u32 {
        match self.instance.mode() {
            Mode::Uccp => self.load[arc].div_ceil(self.k),
            Mode::Ccp => {
                let mut key = self.items[arc].clone();
                key.sort_unstable();
                if let Some(&c) = self.bins_memo.get(&key) {
                    return c;
                }
                // readings are at most 16 by the vertex limit in practice;
                // fall back to the byte bound past the exact packer's reach
                let c = match min_bins(&key, self.k) {
                    Ok((c, _)) => c as u32,
                    Err(_) => key.iter().sum::<u32>().div_ceil(self.k),
                };
                self.bins_memo.insert(key, c);
                c
            }
        }
    }

    fn set_arc(&mut self, arc: usize) {
        let cost = self.arc_cost_of(arc);
        let old = self.arc_cost[arc];
        let tail = self.arc_tail[arc];
        self.arc_cost[arc] = cost;
        self.out_cost[tail] = self.out_cost[tail] + cost - old;
        self.total = self.total + u64::from(cost) - u64::from(old);
    }

    fn apply(&mut self, pos: usize, idx: usize) {
        let origin = self.order[pos];
        let size = self.instance.size(origin);
        self.assigned[origin] = true;
        for i in 0..self.arc_paths[pos][idx].len() {
            let arc = self.arc_paths[pos][idx][i];
            self.load[arc] += size;
            if self.instance.mode() == Mode::Ccp {
                self.items[arc].push(size);
            }
            self.out_bytes[self.arc_tail[arc]] += size;
            self.set_arc(arc);
        }
    }

    fn undo(&mut self, pos: usize, idx: usize) {
        let origin = self.order[pos];
        let size = self.instance.size(origin);
        self.assigned[origin] = false;
        for i in (0..self.arc_paths[pos][idx].len()).rev() {
            let arc = self.arc_paths[pos][idx][i];
            self.load[arc] -= size;
            if self.instance.mode() == Mode::Ccp {
                self.items[arc].pop();
            }
            self.out_bytes[self.arc_tail[arc]] -= size;
            self.set_arc(arc);
        }
    }

    fn lower_bound(&self) -> u64 {
        let k = u64::from(self.k);
        let mut vertex_part = vec![0u64; self.layers];
        let mut down = vec![0u64; self.layers];
        let mut other = vec![0u64; self.layers];
        for v in self.instance.readings() {
            let pending = if self.assigned[v] { 0 } else { self.instance.size(v) };
            let must_leave = u64::from(self.out_bytes[v] + pending);
            vertex_part[self.layer[v]] += u64::from(self.out_cost[v]).max(must_leave.div_ceil(k));
        }
        for (arc, &c) in self.arc_cost.iter().enumerate() {
            let l = self.layer[self.arc_tail[arc]];
            if self.arc_down[arc] {
                down[l] += u64::from(c);
            } else {
                other[l] += u64::from(c);
            }
        }
        (1..self.layers)
            .map(|i| {
                let cut = down[i].max(self.cut_need[i].div_ceil(k)) + other[i];
                cut.max(vertex_part[i])
            })
            .sum::<u64>()
            + other[0]
    }

    fn run(&mut self, pos: usize) {
        self.nodes += 1;
        if pos == self.order.len() {
            if self.total < self.best {
                self.best = self.total;
                self.best_choice.clone_from(&self.choice);
            }
            return;
        }
        let start = self.twin_of[pos].map_or(0, |q| self.choice[q]);
        let mut candidates = Vec::new();
        for idx in start..self.arc_paths[pos].len() {
            self.apply(pos, idx);
            let lb = self.lower_bound();
            self.undo(pos, idx);
            if lb < self.best {
                candidates.push((lb, idx));
            }
        }
        candidates.sort_unstable();
        for (lb, idx) in candidates {
            if lb >= self.best {
                break;
            }
            self.choice[pos] = idx;
            self.apply(pos, idx);
            self.run(pos + 1);
            self.undo(pos, idx);
        }
    }
}
