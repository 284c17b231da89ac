//! Lists the connected vertex sets of size 3 in a small graph.

use coc_kernel::Graph;

fn main() -> coc_kernel::Result<()> {
    // A 4-cycle with a pendant vertex.
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])?;
    for s in g.enumerate_connected_sets(3) {
        println!("{s:?}");
    }
    println!(
        "components after deleting 3: {:?}",
        g.remove_vertices(&[3].into()).connected_components()
    );
    Ok(())
}
