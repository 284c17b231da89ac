//! Exact ℓ-COC decision procedures used as ground truth.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::kernel::CocInstance;

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub answer: bool,
    /// A solution of size at most `k` when the answer is yes.
    pub witness: Option<VertexSet>,
}

impl SolveOutcome {
    fn yes(witness: VertexSet) -> Self {
        Self {
            answer: true,
            witness: Some(witness),
        }
    }

    fn no() -> Self {
        Self {
            answer: false,
            witness: None,
        }
    }
}

/// Tries every vertex set of size `0, 1, …, k` in lexicographic order and
/// returns the first solution, which is a smallest one.
pub fn brute_force_solve(inst: &CocInstance, cap: usize) -> Result<SolveOutcome> {
    let n = inst.graph.num_vertices();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let verts: Vec<VertexId> = inst.graph.vertices().collect();
    for size in 0..=inst.k.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s: VertexSet = idx.iter().map(|&i| verts[i]).collect();
            if inst.graph.is_coc_solution(&s, inst.ell) {
                return Ok(SolveOutcome::yes(s));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(SolveOutcome::no())
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Smallest solution size, by brute force. Used by tests and the LP checks.
pub fn brute_force_optimum(g: &Graph, ell: usize, cap: usize) -> Result<usize> {
    let inst = CocInstance::new(g.clone(), ell, g.num_vertices())?;
    let out = brute_force_solve(&inst, cap)?;
    Ok(out.witness.map_or(0, |w| w.len()))
}

/// Counters from a run of [`branching_solve_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BranchStats {
    /// Terminal nodes of the search tree; at most `(ℓ+1)^k`.
    pub leaves: u64,
    pub nodes: u64,
}

/// The `(ℓ+1)^k` branching algorithm: while some component is larger than
/// `ℓ`, pick a connected set of `ℓ + 1` vertices inside it (a truncated BFS
/// tree) and branch on which of its vertices is deleted.
pub fn branching_solve(inst: &CocInstance) -> SolveOutcome {
    branching_solve_with_stats(inst).0
}

pub fn branching_solve_with_stats(inst: &CocInstance) -> (SolveOutcome, BranchStats) {
    let mut stats = BranchStats::default();
    let mut partial = VertexSet::new();
    let found = branch(&inst.graph, inst.ell, inst.k, &mut partial, &mut stats);
    let outcome = match found {
        Some(w) => SolveOutcome::yes(w),
        None => SolveOutcome::no(),
    };
    (outcome, stats)
}

fn branch(
    g: &Graph,
    ell: usize,
    budget: usize,
    partial: &mut VertexSet,
    stats: &mut BranchStats,
) -> Option<VertexSet> {
    stats.nodes += 1;
    let big = g.connected_components().into_iter().find(|c| c.len() > ell);
    let Some(big) = big else {
        stats.leaves += 1;
        return Some(partial.clone());
    };
    if budget == 0 {
        stats.leaves += 1;
        return None;
    }
    let start = *big.first().expect("components are nonempty");
    let target = g.bfs_prefix(start, ell + 1);
    for v in target {
        partial.insert(v);
        let rest = g.remove_vertices(&VertexSet::from([v]));
        if let Some(w) = branch(&rest, ell, budget - 1, partial, stats) {
            return Some(w);
        }
        partial.remove(&v);
    }
    None
}
