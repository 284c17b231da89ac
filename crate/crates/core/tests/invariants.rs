mod common;

use std::collections::BTreeSet;

use coc_kernel::allocation::{cancel_cycles, round_unsplitting, AllocationProblem, EdgeWeightFn};
use coc_kernel::bipartite::{
    hall_violator, max_matching, BipartiteGraph, CapacityFn, NodeSet, Side,
};
use coc_kernel::cli::InstanceFile;
use coc_kernel::expansion::{find_q_expansion_pair, weighted_q_expansion_pair};
use coc_kernel::graph::{Graph, VertexSet};
use coc_kernel::kernel::{find_reducible_pair_lp, kernelize, witness_partition, CocInstance};
use coc_kernel::lp::{build_coc_lp, solve_lp};
use coc_kernel::solvers::{brute_force_optimum, brute_force_solve};
use num_rational::BigRational;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn bipartite_strategy(max_a: usize, max_b: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_a, 1..=max_b).prop_flat_map(|(a, b)| {
        proptest::collection::vec(any::<bool>(), a * b).prop_map(move |keep| {
            let edges: Vec<_> = (0..a * b)
                .filter(|&i| keep[i])
                .map(|i| (i / b, i % b))
                .collect();
            BipartiteGraph::from_edges(a, b, &edges).unwrap()
        })
    })
}

fn subsets<T: Copy + Ord>(items: &[T]) -> Vec<BTreeSet<T>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Hall's condition for `q` copies of every vertex of `x`, restricted to `y`.
fn hall_holds(g: &BipartiteGraph, x: &NodeSet, y: &NodeSet, q: u64) -> bool {
    let xs: Vec<_> = x.iter().copied().collect();
    subsets(&xs).into_iter().all(|s| {
        let n = g.neighborhood_of_a(&s).intersection(y).count() as u64;
        n >= q * s.len() as u64
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn connected_sets_match_brute_force(g in graph_strategy(8), size in 1usize..5) {
        let verts: Vec<_> = g.vertices().collect();
        let expected: Vec<VertexSet> = subsets(&verts)
            .into_iter()
            .filter(|s| s.len() == size && g.is_connected_set(s))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        prop_assert_eq!(g.enumerate_connected_sets(size), expected);
    }

    #[test]
    fn components_partition_vertices(g in graph_strategy(12)) {
        let comps = g.connected_components();
        let mut seen = VertexSet::new();
        for c in &comps {
            prop_assert!(g.is_connected_set(c));
            prop_assert!(g.neighborhood(c).unwrap().is_empty());
            for &v in c {
                prop_assert!(seen.insert(v));
            }
        }
        prop_assert_eq!(seen, g.vertex_set());
    }

    #[test]
    fn matching_is_maximum(g in bipartite_strategy(5, 5)) {
        let m = max_matching(&g);
        prop_assert!(m.is_valid_in(&g));
        // König-Hall: maximum matching size = |A| - max deficiency.
        let a: Vec<_> = g.side_a().collect();
        let deficiency = subsets(&a)
            .into_iter()
            .map(|s| s.len() as i64 - g.neighborhood_of_a(&s).len() as i64)
            .max()
            .unwrap_or(0)
            .max(0);
        prop_assert_eq!(m.len() as i64, a.len() as i64 - deficiency);
    }

    #[test]
    fn hall_violator_matches_exhaustive(g in bipartite_strategy(5, 8), q in 1u64..4) {
        let found = hall_violator(&g, q).unwrap();
        let holds = hall_holds(&g, &g.a_set(), &g.b_set(), q);
        match found {
            Some(s) => {
                prop_assert!(!holds);
                prop_assert!(!s.is_empty());
                prop_assert!((g.neighborhood_of_a(&s).len() as u64) < q * s.len() as u64);
            }
            None => prop_assert!(holds),
        }
    }

    #[test]
    fn q_expansion_pair_matches_exhaustive(g in bipartite_strategy(5, 8), q in 1u64..4) {
        let a: Vec<_> = g.side_a().collect();
        let exists = subsets(&a).into_iter().filter(|x| !x.is_empty()).any(|x| {
            let y: NodeSet = g.side_b().filter(|&b| g.neighbors_b(b).all(|u| x.contains(&u))).collect();
            hall_holds(&g, &x, &y, q)
        });
        let found = find_q_expansion_pair(&g, q).unwrap();
        prop_assert_eq!(found.is_some(), exists);
        if let Some(p) = found {
            let unit: CapacityFn = g.side_b().map(|b| (b, 1)).collect();
            prop_assert!(!p.x.is_empty());
            prop_assert!(p.is_weighted_expansion(&g, &unit, q));
            prop_assert!(p.assignment.is_unsplitting());
        }
    }

    #[test]
    fn weighted_pairs_are_valid(
        g in bipartite_strategy(4, 6),
        caps in proptest::collection::vec(1u64..4, 6),
        q in 1u64..5,
    ) {
        let cap: CapacityFn = g.side_b().map(|b| (b, caps[b])).collect();
        if let Some(p) = weighted_q_expansion_pair(&g, q, &cap).unwrap() {
            prop_assert!(!p.x.is_empty() && !p.y.is_empty());
            prop_assert!(p.is_weighted_expansion(&g, &cap, q));
        }
    }

    #[test]
    fn rounding_keeps_guarantees(
        g in bipartite_strategy(5, 6),
        caps in proptest::collection::vec(1u64..5, 6),
        split in proptest::collection::vec(0u64..4, 30),
        root_pick in 0usize..5,
    ) {
        let capacity: CapacityFn = g.side_b().map(|b| (b, caps[b])).collect();
        let mut f = EdgeWeightFn::new();
        for (i, (a, b)) in g.edges().enumerate() {
            let room = capacity[&b] - f.load(b);
            f.add(a, b, split[i % split.len()].min(room));
        }
        let demand = g.side_a().map(|a| (a, f.allocated(a))).collect();
        let p = AllocationProblem::new(g.clone(), demand, capacity.clone()).unwrap();
        let forest = cancel_cycles(&p, &f).unwrap();
        prop_assert!(forest.has_forest_support());
        for a in g.side_a() {
            prop_assert_eq!(forest.vertex_sum(Side::A, a), f.vertex_sum(Side::A, a));
        }
        for b in g.side_b() {
            prop_assert_eq!(forest.vertex_sum(Side::B, b), f.vertex_sum(Side::B, b));
        }
        let root = root_pick % g.len_a();
        let h = round_unsplitting(&p, &f, root).unwrap();
        let w = p.max_capacity();
        prop_assert!(h.is_unsplitting());
        prop_assert!(h.satisfies_capacities(&g, &capacity));
        prop_assert!(h.allocated(root) >= f.allocated(root));
        for a in g.side_a() {
            prop_assert!(h.allocated(a) + w.saturating_sub(1) >= f.allocated(a));
        }
    }

    #[test]
    fn lp_is_a_feasible_lower_bound(g in graph_strategy(9), ell in 1usize..4) {
        let lp = build_coc_lp(&g, ell).unwrap();
        let sol = solve_lp(&lp).unwrap();
        prop_assert!(sol.is_feasible_for(&lp));
        let opt = brute_force_optimum(&g, ell, 16).unwrap();
        prop_assert!(sol.objective <= BigRational::from_integer(opt.into()));
        prop_assert_eq!(solve_lp(&lp).unwrap(), sol);
    }

    #[test]
    fn found_pairs_validate(g in graph_strategy(10), ell in 1usize..3, k in 1usize..4) {
        let inst = CocInstance::new(g, ell, k).unwrap();
        let search = find_reducible_pair_lp(&inst).unwrap();
        if let Some(pair) = search.pair {
            prop_assert!(pair.validate(&inst.graph, ell).is_ok());
            let parts = witness_partition(&inst, &pair).unwrap();
            prop_assert!(parts.is_valid_for(&inst.graph, &pair, ell));
        }
    }

    #[test]
    fn kernel_solutions_lift(g in graph_strategy(11), ell in 1usize..4, k in 0usize..4) {
        let inst = CocInstance::new(g, ell, k).unwrap();
        let res = kernelize(&inst).unwrap();
        let original = brute_force_solve(&inst, 16).unwrap();
        let kernel = brute_force_solve(&res.instance, 16).unwrap();
        prop_assert_eq!(original.answer, kernel.answer);
        if let Some(w) = kernel.witness {
            let lifted = res.lift_solution(&w);
            prop_assert!(lifted.len() <= k);
            prop_assert!(inst.graph.is_coc_solution(&lifted, ell));
        }
    }

    #[test]
    fn instance_files_round_trip(
        g in graph_strategy(12),
        ell in proptest::option::of(1usize..5),
        k in proptest::option::of(0usize..9),
    ) {
        let file = InstanceFile { graph: g, ell, k };
        let text = file.emit();
        let parsed = InstanceFile::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.emit(), text);
    }
}
