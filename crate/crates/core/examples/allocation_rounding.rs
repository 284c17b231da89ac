//! Turns a splitting allocation into an unsplitting one.

use coc_kernel::allocation::{cancel_cycles, round_unsplitting, AllocationProblem, EdgeWeightFn};
use coc_kernel::bipartite::BipartiteGraph;

fn main() -> coc_kernel::Result<()> {
    // Two customers and two items of capacity 3 forming a 4-cycle.
    let g = BipartiteGraph::complete(2, 2);
    let f = EdgeWeightFn::from_pairs([((0, 0), 1), ((0, 1), 2), ((1, 0), 2), ((1, 1), 1)]);
    let p = AllocationProblem::new(g, [(0, 3), (1, 3)].into(), [(0, 3), (1, 3)].into())?;
    let forest = cancel_cycles(&p, &f)?;
    println!(
        "after cancelling cycles: {:?}",
        forest.support().collect::<Vec<_>>()
    );
    let h = round_unsplitting(&p, &f, 0)?;
    println!("unsplitting: {:?}", h.support().collect::<Vec<_>>());
    for a in 0..2 {
        println!("customer {a}: {} -> {}", f.allocated(a), h.allocated(a));
    }
    Ok(())
}
