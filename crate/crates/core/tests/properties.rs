use convergecast::bounds::{grid_lb, lb1, lb2, lb3, partial_lb, BoundReport};
use convergecast::generate::{
    gen_gadget, gen_grid, gen_line, gen_line_with_sizes, gen_random_connected, gen_random_tree,
    gen_setpartition, PartitionShape, SetPartitionSpec,
};
use convergecast::graph::bfs_distances;
use convergecast::oracle::{plan_to_trace, solve_exact, OracleLimits, RoutingPlan};
use convergecast::routing::{
    check_elementary_property, check_shortest_path_property, run_basic, run_gadget_opt, run_spt,
    run_sptg, validate_trace,
};
use convergecast::{build_spt, Graph, Instance, Metrics, ParentPolicy};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn policies() -> Vec<ParentPolicy> {
    vec![
        ParentPolicy::MinId,
        ParentPolicy::MaxId,
        ParentPolicy::Random(3),
        ParentPolicy::Random(4),
        ParentPolicy::RoundRobin,
        ParentPolicy::PreferSet(vec![2, 5, 7]),
    ]
}

fn spt_metrics(inst: &Instance, policy: &ParentPolicy) -> Metrics {
    validate_trace(inst, &run_spt(inst, &build_spt(inst, policy)).unwrap()).unwrap()
}

fn floyd_warshall(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d[0].clone()
}

fn sample_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..60u64 {
        let n = 1 + (seed as usize * 7) % 49;
        let density = [0.0, 0.05, 0.2, 0.6][(seed % 4) as usize];
        out.push(gen_random_connected(n, density, 2 + (seed % 4) as u32, seed).unwrap());
        out.push(gen_random_tree(n, 3, seed).unwrap());
    }
    for (m, n) in [(1, 2), (2, 2), (3, 5), (7, 7)] {
        out.push(gen_grid(m, n, 4).unwrap());
    }
    out.push(gen_gadget(2).unwrap().0);
    out
}

#[test]
fn bfs_matches_floyd_warshall() {
    for inst in sample_instances() {
        assert!(inst.vertex_count() <= 50);
        assert_eq!(
            bfs_distances(inst.graph()).unwrap().as_slice(),
            floyd_warshall(inst.graph()).as_slice()
        );
    }
}

#[test]
fn parent_chains_have_distance_length() {
    for inst in sample_instances() {
        for policy in policies() {
            let tree = build_spt(&inst, &policy);
            for v in 0..inst.vertex_count() {
                assert_eq!(tree.path_to_sink(v).len() as u32 - 1, inst.distance(v));
            }
        }
    }
}

#[test]
fn spt_ignores_edge_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for inst in sample_instances() {
        let mut edges = inst.graph().edges().to_vec();
        edges.shuffle(&mut rng);
        let edges: Vec<_> = edges.into_iter().map(|(u, v)| (v, u)).collect();
        let shuffled =
            Instance::new(Graph::new(inst.vertex_count(), edges).unwrap(), inst.capacity(), inst.sizes().to_vec())
                .unwrap();
        for policy in policies().into_iter().filter(|p| !matches!(p, ParentPolicy::Random(_))) {
            assert_eq!(build_spt(&inst, &policy), build_spt(&shuffled, &policy));
        }
    }
}

#[test]
fn spt_traces_are_valid_shortest_and_elementary() {
    for inst in sample_instances() {
        for policy in policies() {
            let trace = run_spt(&inst, &build_spt(&inst, &policy)).unwrap();
            let m = validate_trace(&inst, &trace).unwrap();
            assert!(check_shortest_path_property(&inst, &trace));
            assert!(check_elementary_property(&inst, &trace));
            assert!(m.partial_hops <= inst.reading_count() as u64);
            assert_eq!(m.reading_distance_sum, inst.distances().sum());
        }
    }
}

#[test]
fn policies_agree_on_trees() {
    for seed in 0..50 {
        let inst = gen_random_tree(20, 3, seed).unwrap();
        let base = spt_metrics(&inst, &ParentPolicy::MinId);
        for policy in policies() {
            assert_eq!(spt_metrics(&inst, &policy), base);
        }
    }
}

#[test]
fn policy_changes_total_off_trees() {
    // sink 0 adjacent to a=1 and c=3, leaf x=4 below a, b=2 adjacent to a and c
    let g = Graph::new(5, vec![(0, 1), (0, 3), (1, 4), (1, 2), (2, 3)]).unwrap();
    let inst = Instance::unit(g, 2).unwrap();
    assert_eq!(spt_metrics(&inst, &ParentPolicy::MinId).total_hops, 5);
    assert_eq!(spt_metrics(&inst, &ParentPolicy::MaxId).total_hops, 4);
}

#[test]
fn partial_hop_law_for_every_router() {
    for inst in sample_instances().into_iter().filter(|i| i.capacity() >= 2) {
        let n = inst.reading_count() as u64;
        let mut traces = vec![run_basic(&inst, None), run_basic(&inst, Some(5))];
        traces.extend(policies().iter().map(|p| run_spt(&inst, &build_spt(&inst, p)).unwrap()));
        if let Ok(t) = run_sptg(&inst) {
            traces.push(t);
        }
        for t in traces {
            let m = validate_trace(&inst, &t).unwrap();
            assert!(m.partial_hops >= n.div_ceil(2));
            assert!(m.partial_hops <= n);
        }
    }
    for ell in [2, 3] {
        let (inst, spec) = gen_gadget(ell).unwrap();
        let m = validate_trace(&inst, &run_gadget_opt(&inst, &spec).unwrap()).unwrap();
        assert!(m.partial_hops >= (inst.reading_count() as u64).div_ceil(2));
    }
}

#[test]
fn basic_matches_spt_on_trees_and_loses_on_grids() {
    for seed in 0..30 {
        let inst = gen_random_tree(25, 4, seed).unwrap();
        let b = validate_trace(&inst, &run_basic(&inst, None)).unwrap();
        assert_eq!(b.total_hops, spt_metrics(&inst, &ParentPolicy::MinId).total_hops);
    }
    let grid = gen_grid(8, 8, 4).unwrap();
    let b = validate_trace(&grid, &run_basic(&grid, None)).unwrap().total_hops;
    let s = validate_trace(&grid, &run_sptg(&grid).unwrap()).unwrap().total_hops;
    assert_eq!((b, s), (528, 136));
}

#[test]
fn oracle_sandwich_and_movement_inequality() {
    for seed in 0..120u64 {
        let n = 2 + (seed % 7) as usize;
        let k = 2 + (seed % 3) as u32;
        let inst = gen_random_connected(n, [0.15, 0.3, 0.5][(seed % 3) as usize], k, seed).unwrap();
        let sol = solve_exact(&inst, OracleLimits::default()).unwrap();
        let opt = validate_trace(&inst, &plan_to_trace(&inst, &sol.plan).unwrap()).unwrap();
        assert_eq!(opt.total_hops, sol.optimum);
        assert!(opt.partial_hops >= partial_lb(&inst));

        let spt = spt_metrics(&inst, &ParentPolicy::MinId);
        let best = lb1(&inst).max(lb2(&inst)).max(lb3(&inst));
        assert!(best <= sol.optimum && sol.optimum <= spt.total_hops);
        let k = u64::from(k);
        assert!(
            spt.partial_hops + k * spt.full_hops <= (k - 1) * opt.partial_hops + k * opt.full_hops,
            "seed {seed}"
        );
    }
}

#[test]
fn grid_bound_below_oracle() {
    for m in 1..=3 {
        for n in 1..=3 {
            if m * n == 1 {
                continue;
            }
            for k in [2u32, 3] {
                let inst = gen_grid(m, n, k).unwrap();
                let opt = solve_exact(&inst, OracleLimits::default()).unwrap().optimum;
                assert!(grid_lb(m as u64, n as u64, u64::from(k)) <= opt);
                assert!(BoundReport::compute(&inst).best <= opt);
            }
        }
    }
}

#[test]
fn sptg_grid_bounds() {
    for side in [2usize, 4, 8, 16] {
        let inst = gen_grid(side, side, 4).unwrap();
        let m = validate_trace(&inst, &run_sptg(&inst).unwrap()).unwrap();
        let (s, k) = (side as u64, 4u64);
        // integer form of full <= mn(m+n)/2k
        assert!(2 * k * m.full_hops <= s * s * (2 * s));
        assert!(2 * k * m.total_hops <= s * s * (2 * s) + 2 * k * s * s);
    }
}

#[test]
fn line_partition_sink_edge() {
    // the packets on the sink edge are the bins of the whole multiset
    let spec = |elements: Vec<u32>| SetPartitionSpec {
        elements,
        capacity: 3,
        shape: PartitionShape::Line,
    };
    for (elements, bins) in [(vec![1, 2, 3], 2), (vec![2, 2, 2], 3)] {
        let inst = gen_setpartition(&spec(elements)).unwrap();
        let sol = solve_exact(&inst, OracleLimits::default()).unwrap();
        let trace = plan_to_trace(&inst, &sol.plan).unwrap();
        let sink_hops = trace.hops.iter().filter(|h| h.to == 0).count();
        assert_eq!(sink_hops, bins);
    }
}

#[test]
fn small_line_examples() {
    let inst = gen_line_with_sizes(&[1, 1, 2], 2).unwrap();
    assert_eq!(inst.sizes(), &[0, 1, 1, 2]);
    assert_eq!(lb3(&gen_line(5, 2).unwrap()), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lb3_dominates_lb2(n in 1usize..40, density in 0.0f64..0.5, k in 1u32..6, seed in any::<u64>()) {
        let inst = gen_random_connected(n, density, k, seed).unwrap();
        prop_assert!(lb3(&inst) >= lb2(&inst));
        prop_assert!(BoundReport::compute(&inst).best <= spt_metrics(&inst, &ParentPolicy::MinId).total_hops);
    }

    #[test]
    fn ccp_spt_traces_validate(sizes in proptest::collection::vec(1u32..=4, 1..25), seed in any::<u64>()) {
        let base = gen_random_connected(sizes.len(), 0.2, 4, seed).unwrap();
        let mut all = vec![0];
        all.extend(&sizes);
        let inst = Instance::new(base.graph().clone(), 4, all).unwrap();
        let trace = run_spt(&inst, &build_spt(&inst, &ParentPolicy::MinId)).unwrap();
        let m = validate_trace(&inst, &trace).unwrap();
        prop_assert_eq!(m.reading_distance_sum, sizes.iter().zip(1..).map(|(_, v)| u64::from(inst.distance(v))).sum::<u64>());
        prop_assert!(BoundReport::compute(&inst).best <= m.total_hops);
    }

    #[test]
    fn plans_from_trees_cost_what_spt_costs(n in 1usize..10, density in 0.0f64..0.6, seed in any::<u64>()) {
        let inst = gen_random_connected(n, density, 3, seed).unwrap();
        let tree = build_spt(&inst, &ParentPolicy::Random(seed));
        let plan = RoutingPlan::from_parents(tree.parents());
        let a = validate_trace(&inst, &plan_to_trace(&inst, &plan).unwrap()).unwrap();
        let b = validate_trace(&inst, &run_spt(&inst, &tree).unwrap()).unwrap();
        prop_assert_eq!(a.total_hops, b.total_hops);
    }
}
