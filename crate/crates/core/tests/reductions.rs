//! Hub-and-pendant graphs, where reducible pairs are plentiful.

use coc_kernel::graph::Graph;
use coc_kernel::kernel::{kernelize, kernelize_with, verify_kernel, CocInstance, KernelConfig};
use coc_kernel::solvers::brute_force_solve;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Up to three hubs, each with pendant paths of at most `ell` vertices, plus
/// a few random edges.
fn hub_graph(rng: &mut StdRng, ell: usize, max_n: usize) -> Graph {
    let hubs = rng.gen_range(1..=3usize).min(max_n);
    let mut edges = Vec::new();
    let mut n = hubs;
    for h in 1..hubs {
        if rng.gen_bool(0.5) {
            edges.push((h - 1, h));
        }
    }
    while n < max_n {
        let len = rng.gen_range(1..=ell).min(max_n - n);
        let hub = rng.gen_range(0..hubs);
        edges.push((hub, n));
        if rng.gen_bool(0.2) && hubs > 1 {
            let other = rng.gen_range(0..hubs);
            if other != hub {
                edges.push((other, n));
            }
        }
        (1..len).for_each(|i| edges.push((n + i - 1, n + i)));
        n += len;
    }
    for _ in 0..rng.gen_range(0..=2) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn hub_graphs_reduce_and_stay_equivalent() {
    let mut rng = StdRng::seed_from_u64(42);
    let mut steps = 0;
    for i in 0..400 {
        let ell = rng.gen_range(1..=3);
        let n = rng.gen_range(4..=15);
        let g = hub_graph(&mut rng, ell, n);
        let k = rng.gen_range(1..=4);
        let inst = CocInstance::new(g, ell, k).unwrap();
        for config in [KernelConfig::default(), KernelConfig::pairs_only()] {
            let res = kernelize_with(&inst, &config).unwrap();
            steps += res.trace.len();
            let check = verify_kernel(&inst, &res, 16).unwrap();
            assert!(
                check.passed(),
                "instance {i}: {check:?} ell={ell} k={k} edges={:?}",
                inst.graph.edges().collect::<Vec<_>>()
            );
            for step in &res.trace {
                assert!(!step.x.is_empty() && step.k_after == step.k_before - step.x.len());
            }
        }
    }
    assert!(steps >= 200, "only {steps} reduction steps");
}

#[test]
fn single_hub_reduces_to_nothing() {
    // A hub with 2ℓ - 1 pendant paths of ℓ vertices: X = {hub} is reducible.
    for ell in 1..=3 {
        let mut edges = Vec::new();
        let mut n = 1;
        for _ in 0..2 * ell - 1 {
            edges.push((0, n));
            (1..ell).for_each(|i| edges.push((n + i - 1, n + i)));
            n += ell;
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let inst = CocInstance::new(g, ell, 1).unwrap();
        let res = kernelize(&inst).unwrap();
        assert_eq!(res.trace.len(), 1, "ell={ell}");
        assert_eq!(res.trace[0].x, [0].into());
        assert!(res.instance.graph.is_empty());
        assert!(brute_force_solve(&inst, 16).unwrap().answer);
    }
}
