#![allow(dead_code)]

#[allow(unused_imports)]
pub use coc_kernel::generate::{erdos_renyi, gadgets};
use coc_kernel::graph::Graph;

/// Minimum vertex cover size by branching on a maximum-degree vertex
/// (take it, or take all its neighbors). Independent of the COC code.
pub fn min_vertex_cover(g: &Graph) -> usize {
    let Some(v) = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
    else {
        return 0;
    };
    if g.degree(v) == 0 {
        return 0;
    }
    if g.degree(v) <= 2 && g.vertices().all(|u| g.degree(u) <= 2) {
        return cover_paths_and_cycles(g);
    }
    let take_v = 1 + min_vertex_cover(&g.remove_vertices(&[v].into()));
    let nb: coc_kernel::VertexSet = g.neighbors(v).collect();
    let take_nb = nb.len() + min_vertex_cover(&g.remove_vertices(&nb));
    take_v.min(take_nb)
}

fn cover_paths_and_cycles(g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .map(|c| {
            let edges: usize = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            if edges == c.len() {
                c.len().div_ceil(2)
            } else {
                c.len() / 2
            }
        })
        .sum()
}
