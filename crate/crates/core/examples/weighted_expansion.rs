//! The weighted expansion lemma on a random bipartite graph.

use coc_kernel::bipartite::{BipartiteGraph, CapacityFn};
use coc_kernel::expansion::weighted_expansion_lemma;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() -> coc_kernel::Result<()> {
    let mut rng = StdRng::seed_from_u64(2024);
    let (customers, q, w) = (4, 2u64, 3u64);
    let mut g = BipartiteGraph::new();
    (0..customers).for_each(|a| g.add_a(a));
    let mut cap = CapacityFn::new();
    let mut total = 0;
    let mut b = 0;
    while total < (q + w - 1) * customers as u64 {
        g.add_b(b);
        g.add_edge(rng.gen_range(0..customers), b)?;
        g.add_edge(rng.gen_range(0..customers), b)?;
        let c = rng.gen_range(1..=w);
        cap.insert(b, c);
        total += c;
        b += 1;
    }
    let pair = weighted_expansion_lemma(&g, q, w, &cap)?;
    println!("X = {:?}, Y = {:?}", pair.x, pair.y);
    for &a in &pair.x {
        println!("  customer {a} gets {}", pair.assignment.allocated(a));
    }
    println!(
        "valid: {}",
        pair.is_weighted_expansion(&g, &cap, q) && pair.assignment.is_unsplitting()
    );
    Ok(())
}
