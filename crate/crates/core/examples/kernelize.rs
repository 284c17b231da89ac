//! Kernelizes a graph with two hubs and many pendant paths.

use coc_kernel::graph::Graph;
use coc_kernel::{kernelize, CocInstance};

fn main() -> coc_kernel::Result<()> {
    let ell = 2;
    let mut edges = vec![(0, 1)];
    let mut n = 2;
    for hub in [0, 1] {
        for _ in 0..4 {
            edges.extend([(hub, n), (n, n + 1)]);
            n += 2;
        }
    }
    // A triangle with a tail elsewhere.
    edges.extend([(n, n + 1), (n + 1, n + 2), (n, n + 2), (n + 2, n + 3)]);
    n += 4;
    let inst = CocInstance::new(Graph::from_edges(n, &edges)?, ell, 3)?;
    let res = kernelize(&inst)?;
    println!("{} vertices, k = {} -> {:?}", n, inst.k, res.verdict);
    for step in &res.trace {
        println!(
            "  X = {:?}, |Y| = {}, k {} -> {}, LP {}",
            step.x,
            step.y.len(),
            step.k_before,
            step.k_after,
            step.lp_objective
        );
    }
    println!(
        "kernel: {} vertices, {} edges, k = {}",
        res.instance.graph.num_vertices(),
        res.instance.graph.num_edges(),
        res.instance.k
    );
    Ok(())
}
