//! Brute force and the (ell+1)^k branching algorithm on random gadget graphs.

use coc_kernel::generate::gadgets;
use coc_kernel::solvers::{branching_solve_with_stats, brute_force_solve};
use coc_kernel::CocInstance;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() -> coc_kernel::Result<()> {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..8 {
        let ell = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let inst = CocInstance::new(gadgets(&mut rng, 12), ell, k)?;
        let brute = brute_force_solve(&inst, 16)?;
        let (branch, stats) = branching_solve_with_stats(&inst);
        println!(
            "ell={ell} k={k}: brute {} / branch {} ({} leaves, bound {})",
            brute.answer,
            branch.answer,
            stats.leaves,
            (ell as u64 + 1).pow(k as u32)
        );
    }
    Ok(())
}
