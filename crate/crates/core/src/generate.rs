//! Seeded random instance families.

use rand::Rng;

use crate::graph::Graph;

/// Erdős–Rényi `G(n, p)`.
pub fn erdos_renyi(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("ids below n")
}

/// Disjoint small gadgets (stars, paths, cliques, cycles, spiders with legs
/// of up to three vertices) on exactly `n` vertices, plus up to two random
/// extra edges.
pub fn gadgets(rng: &mut impl Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    let mut used = 0;
    while n - used >= 2 {
        let base = used;
        let kind = rng.gen_range(0..5);
        let max_size = if kind == 4 { 10 } else { 6 };
        let size = rng.gen_range(2..=max_size).min(n - used);
        match kind {
            0 => (1..size).for_each(|i| edges.push((base, base + i))),
            1 => (1..size).for_each(|i| edges.push((base + i - 1, base + i))),
            2 => {
                for i in 0..size {
                    for j in i + 1..size {
                        edges.push((base + i, base + j));
                    }
                }
            }
            3 => {
                (1..size).for_each(|i| edges.push((base + i - 1, base + i)));
                if size > 2 {
                    edges.push((base, base + size - 1));
                }
            }
            _ => {
                let mut next = base + 1;
                while next < base + size {
                    let len = rng.gen_range(1..=3).min(base + size - next);
                    edges.push((base, next));
                    (1..len).for_each(|i| edges.push((next + i - 1, next + i)));
                    next += len;
                }
            }
        }
        used += size;
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("ids below n")
}
