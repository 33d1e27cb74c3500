//! The branch-and-bound oracle against a slow enumerator that keeps every
//! reachable arc-load vector (no bounds, no symmetry breaking).

use std::collections::{BTreeSet, HashSet};

use convergecast::generate::gen_random_connected;
use convergecast::oracle::{enumerate_simple_paths, plan_cost, plan_to_trace, solve_exact, OracleLimits};
use convergecast::routing::validate_trace;
use convergecast::{Graph, Instance};
use rayon::prelude::*;

fn all_paths(inst: &Instance, v: usize) -> Vec<Vec<usize>> {
    // plain recursive enumeration, independent of the library's
    fn go(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == 0 {
            out.push(path.clone());
            return;
        }
        for w in g.neighbors(v).collect::<Vec<_>>() {
            if !path.contains(&w) {
                path.push(w);
                go(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(inst.graph(), &mut vec![v], &mut out);
    out
}

fn routes(inst: &Instance) -> Vec<Vec<Vec<usize>>> {
    let g = inst.graph();
    inst.readings()
        .map(|v| {
            all_paths(inst, v)
                .iter()
                .map(|p| p.windows(2).map(|w| g.arc_index(w[0], w[1]).unwrap()).collect())
                .collect()
        })
        .collect()
}

/// Every combination of paths, unit readings: depth-first over the full
/// Cartesian product with the cost kept up to date along the way.
fn slow_optimum_uccp(inst: &Instance) -> u64 {
    fn go(routes: &[Vec<Vec<usize>>], loads: &mut [u32], k: u32, cost: u64, best: &mut u64) {
        let Some((choices, rest)) = routes.split_first() else {
            *best = (*best).min(cost);
            return;
        };
        for r in choices {
            let mut c = cost;
            for &a in r {
                if loads[a] % k == 0 {
                    c += 1;
                }
                loads[a] += 1;
            }
            go(rest, loads, k, c, best);
            for &a in r {
                loads[a] -= 1;
            }
        }
    }
    let mut best = u64::MAX;
    let mut loads = vec![0; 2 * inst.graph().edge_count()];
    go(&routes(inst), &mut loads, inst.capacity(), 0, &mut best);
    best
}

/// Every reachable multiset-per-arc state, packed exactly at the end.
fn slow_optimum_ccp(inst: &Instance) -> u64 {
    let arcs = 2 * inst.graph().edge_count();
    let mut states: HashSet<Vec<Vec<u8>>> = HashSet::new();
    states.insert(vec![Vec::new(); arcs]);
    for (v, choices) in inst.readings().zip(routes(inst)) {
        let size = inst.size(v) as u8;
        let mut next = HashSet::new();
        for s in &states {
            for r in &choices {
                let mut t = s.clone();
                for &a in r {
                    let pos = t[a].partition_point(|&x| x <= size);
                    t[a].insert(pos, size);
                }
                next.insert(t);
            }
        }
        states = next;
    }
    states
        .iter()
        .map(|s| s.iter().map(|items| bins(items, inst.capacity())).sum())
        .min()
        .unwrap()
}

/// Exact bins by trying every assignment.
fn bins(items: &[u8], k: u32) -> u64 {
    fn go(items: &[u8], loads: &mut Vec<u32>, k: u32, best: &mut usize) {
        if loads.len() >= *best {
            return;
        }
        let Some((&x, rest)) = items.split_first() else {
            *best = loads.len();
            return;
        };
        for b in 0..loads.len() {
            if loads[b] + u32::from(x) <= k {
                loads[b] += u32::from(x);
                go(rest, loads, k, best);
                loads[b] -= u32::from(x);
            }
        }
        loads.push(u32::from(x));
        go(rest, loads, k, best);
        loads.pop();
    }
    let mut best = items.len() + 1;
    go(items, &mut Vec::new(), k, &mut best);
    if items.is_empty() {
        0
    } else {
        best as u64
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// One edge list per connected graph on `n` vertices, up to relabelings
/// that fix the sink.
fn rooted_classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms: Vec<Vec<usize>> = permutations(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canonical = perms
            .iter()
            .map(|p| {
                let mut es: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                es.sort();
                es
            })
            .min()
            .unwrap();
        if seen.insert(canonical.clone()) {
            if let Ok(g) = Graph::new(n, canonical.clone()) {
                if Instance::unit(g, 2).is_ok() {
                    out.push(canonical);
                }
            }
        }
    }
    out
}

fn check(inst: &Instance, slow: fn(&Instance) -> u64) {
    let sol = solve_exact(inst, OracleLimits::default()).unwrap();
    assert_eq!(sol.optimum, slow(inst), "{:?}", inst.graph().edges());
    assert_eq!(plan_cost(inst, &sol.plan).unwrap(), sol.optimum);
    let trace = plan_to_trace(inst, &sol.plan).unwrap();
    assert_eq!(validate_trace(inst, &trace).unwrap().total_hops, sol.optimum);
}

#[test]
fn every_rooted_graph_up_to_six_vertices() {
    for n in 2..=6 {
        let classes = rooted_classes(n);
        classes.par_iter().for_each(|edges| {
            for k in [2, 3] {
                let inst = Instance::unit(Graph::new(n, edges.clone()).unwrap(), k).unwrap();
                check(&inst, slow_optimum_uccp);
            }
        });
    }
}

#[test]
fn rooted_class_counts() {
    // connected graphs with a distinguished vertex
    assert_eq!(rooted_classes(2).len(), 1);
    assert_eq!(rooted_classes(3).len(), 3);
    assert_eq!(rooted_classes(4).len(), 11);
    assert_eq!(rooted_classes(5).len(), 58);
    assert_eq!(rooted_classes(6).len(), 407);
}

#[test]
fn ccp_sizes_on_small_graphs() {
    (0..150u64).into_par_iter().for_each(|seed| {
        let n = 1 + (seed % 4) as usize;
        let base = gen_random_connected(n, 0.5, 3, seed).unwrap();
        let sizes: Vec<u32> = (0..=n)
            .map(|v| if v == 0 { 0 } else { 1 + ((seed as usize * 7 + v * 5) % 3) as u32 })
            .collect();
        let inst = Instance::new(base.graph().clone(), 3, sizes).unwrap();
        check(&inst, slow_optimum_ccp);
    });
}

#[test]
fn library_paths_match_plain_enumeration() {
    for seed in 0..40 {
        let inst = gen_random_connected(6, 0.4, 2, seed).unwrap();
        for v in inst.readings() {
            let mut a = enumerate_simple_paths(&inst, v, usize::MAX).unwrap();
            let mut b = all_paths(&inst, v);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}
