//! Maximum matching and q-fold Hall violators in a bipartite graph.

use coc_kernel::bipartite::{hall_violator, max_matching, BipartiteGraph};

fn main() -> coc_kernel::Result<()> {
    // Customers 0 and 1 share item 0; customer 2 owns items 1, 2, 3.
    let g = BipartiteGraph::from_edges(3, 4, &[(0, 0), (1, 0), (2, 1), (2, 2), (2, 3)])?;
    let m = max_matching(&g);
    println!("maximum matching: {:?}", m.edges().collect::<Vec<_>>());
    for q in 1..=3 {
        match hall_violator(&g, q)? {
            Some(s) => println!(
                "q = {q}: violator {s:?}, |N(S)| = {}",
                g.neighborhood_of_a(&s).len()
            ),
            None => println!("q = {q}: every customer can get {q} private items"),
        }
    }
    Ok(())
}
