//! Convergecast routers and the checks every trace is held to.

mod gadget;
mod trace;

pub use gadget::run_gadget_opt;
pub use trace::{
    check_elementary_property, check_shortest_path_property, elementary_violators, validate_trace,
    HopTrace, Metrics, PacketHop, Reading,
};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::RoutingError;
use crate::generate::GridShape;
use crate::graph::{Instance, Mode, VertexId, SINK};
use crate::packing::{chunk_units, first_fit_decreasing};
use crate::spt::ShortestPathTree;

/// Elementary aggregation over an arbitrary rooted spanning tree.
///
/// Vertices are handled by decreasing tree depth, ties by ascending id.
/// Full incoming packets are forwarded unchanged; the readings of partial
/// packets plus the vertex's own reading are repacked (in UCCP into full
/// packets and at most one partial, in CCP by first-fit decreasing).
fn aggregate(instance: &Instance, parent: &[Option<VertexId>], depth: &[u32]) -> HopTrace {
    let n = instance.vertex_count();
    let k = instance.capacity();
    let mut order: Vec<VertexId> = (1..n).collect();
    order.sort_by(|&a, &b| depth[b].cmp(&depth[a]).then(a.cmp(&b)));

    let mut inbox: Vec<Vec<Vec<Reading>>> = vec![Vec::new(); n];
    let mut trace = HopTrace::new();
    for v in order {
        let to = parent[v].expect("non-sink vertex has a parent");
        let mut outgoing = Vec::new();
        let mut loose = Vec::new();
        for packet in std::mem::take(&mut inbox[v]) {
            let bytes: u32 = packet.iter().map(|r| r.size).sum();
            if bytes == k {
                outgoing.push(packet);
            } else {
                loose.extend(packet);
            }
        }
        loose.push(Reading {
            origin: v,
            size: instance.size(v),
        });
        match instance.mode() {
            Mode::Uccp => outgoing.extend(chunk_units(&loose, k)),
            Mode::Ccp => outgoing.extend(first_fit_decreasing(&loose, k)),
        }
        for packet in outgoing {
            trace.push(v, to, packet.clone());
            inbox[to].push(packet);
        }
    }
    trace
}

fn check_tree(instance: &Instance, tree: &ShortestPathTree) -> Result<(), RoutingError> {
    let n = instance.vertex_count();
    if tree.vertex_count() != n {
        return Err(RoutingError::TreeMismatch(format!(
            "tree has {} vertices, instance has {n}",
            tree.vertex_count()
        )));
    }
    if tree.parent(SINK).is_some() {
        return Err(RoutingError::TreeMismatch("sink has a parent".into()));
    }
    for v in 1..n {
        let Some(p) = tree.parent(v) else {
            return Err(RoutingError::TreeMismatch(format!("vertex {v} has no parent")));
        };
        if p >= n || !instance.graph().has_edge(v, p) {
            return Err(RoutingError::TreeMismatch(format!("({v}, {p}) is not an edge")));
        }
        if instance.distance(p) + 1 != instance.distance(v) {
            return Err(RoutingError::TreeMismatch(format!(
                "parent {p} of {v} is not one hop closer to the sink"
            )));
        }
    }
    Ok(())
}

/// SPT: elementary aggregation along a shortest path tree.
pub fn run_spt(instance: &Instance, tree: &ShortestPathTree) -> Result<HopTrace, RoutingError> {
    check_tree(instance, tree)?;
    Ok(aggregate(
        instance,
        tree.parents(),
        instance.distances().as_slice(),
    ))
}

/// The grid tree: all vertical edges, plus the horizontal edges of row 1.
pub fn sptg_tree(instance: &Instance) -> Result<ShortestPathTree, RoutingError> {
    let shape = GridShape::detect(instance).ok_or(RoutingError::NotAGrid)?;
    let parent = (0..instance.vertex_count())
        .map(|v| match shape.cell(v) {
            (1, 1) => None,
            (1, c) => Some(shape.id(1, c - 1)),
            (r, c) => Some(shape.id(r - 1, c)),
        })
        .collect();
    Ok(ShortestPathTree::from_parents(parent))
}

/// SPT-G: SPT on a grid with the column-then-row-1 tree.
pub fn run_sptg(instance: &Instance) -> Result<HopTrace, RoutingError> {
    run_spt(instance, &sptg_tree(instance)?)
}

/// Depth-first search tree from the sink. Neighbors are explored in
/// ascending id order, or in a seeded random order when `seed` is given.
pub fn dfs_tree(instance: &Instance, seed: Option<u64>) -> (Vec<Option<VertexId>>, Vec<u32>) {
    let n = instance.vertex_count();
    let graph = instance.graph();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut order_of = |v: VertexId| {
        let mut ns: Vec<VertexId> = graph.neighbors(v).collect();
        if let Some(rng) = rng.as_mut() {
            ns.shuffle(rng);
        }
        ns
    };
    let mut parent = vec![None; n];
    let mut depth = vec![0u32; n];
    let mut visited = vec![false; n];
    visited[SINK] = true;
    let mut stack = vec![(SINK, order_of(SINK), 0usize)];
    while let Some((v, neighbors, next)) = stack.last_mut() {
        let v = *v;
        if *next == neighbors.len() {
            stack.pop();
            continue;
        }
        let w = neighbors[*next];
        *next += 1;
        if !visited[w] {
            visited[w] = true;
            parent[w] = Some(v);
            depth[w] = depth[v] + 1;
            let ns = order_of(w);
            stack.push((w, ns, 0));
        }
    }
    (parent, depth)
}

/// BASIC: the same per-vertex aggregation, over a depth-first search tree.
pub fn run_basic(instance: &Instance, seed: Option<u64>) -> HopTrace {
    let (parent, depth) = dfs_tree(instance, seed);
    aggregate(instance, &parent, &depth)
}
