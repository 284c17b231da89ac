//! With ell = 1 the problem is Vertex Cover and the kernel has at most 2k
//! vertices.

use coc_kernel::generate::erdos_renyi;
use coc_kernel::solvers::branching_solve;
use coc_kernel::{kernelize, CocInstance};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> coc_kernel::Result<()> {
    let mut rng = StdRng::seed_from_u64(7);
    let g = erdos_renyi(&mut rng, 30, 0.05);
    let tau = (0..)
        .find(|&k| branching_solve(&CocInstance::new(g.clone(), 1, k).unwrap()).answer)
        .unwrap();
    println!(
        "{} vertices, {} edges, vertex cover number {tau}",
        g.num_vertices(),
        g.num_edges()
    );
    for k in tau.saturating_sub(2)..=tau + 2 {
        let res = kernelize(&CocInstance::new(g.clone(), 1, k)?)?;
        println!(
            "k = {k:2}: kernel {:2} vertices (bound {:2}), k' = {}, {:?}",
            res.instance.graph.num_vertices(),
            2 * k,
            res.instance.k,
            res.verdict
        );
    }
    Ok(())
}
