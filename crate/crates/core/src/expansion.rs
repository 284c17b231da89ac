//! q-expansions in bipartite graphs, unweighted and weighted.
//!
//! A q-expansion of `X ⊆ A` into `Y ⊆ B` gives every `x ∈ X` at least `q`
//! private neighbors in `Y`. The weighted version lets items in `B` carry a
//! capacity and asks for total value at least `q` per customer. Every pair
//! returned here also satisfies `N(Y) ⊆ X`.

use std::collections::BTreeMap;

use crate::allocation::{round_unsplitting, AllocationProblem, EdgeWeightFn};
use crate::bipartite::{
    build_twin_graph, hall_violator, max_matching, BipartiteGraph, CapacityFn, NodeId, NodeSet,
    Side,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionPair {
    pub x: NodeSet,
    pub y: NodeSet,
    /// Edge weights on `G[x ∪ y]`; unit weights for unweighted expansions.
    pub assignment: EdgeWeightFn,
}

impl ExpansionPair {
    /// `N(y) ⊆ x` in `g`.
    pub fn is_closed_in(&self, g: &BipartiteGraph) -> bool {
        g.neighborhood_of_b(&self.y).is_subset(&self.x)
    }

    /// Smallest value allocated to a member of `x`.
    pub fn min_allocation(&self) -> u64 {
        self.x
            .iter()
            .map(|&a| self.assignment.allocated(a))
            .min()
            .unwrap_or(0)
    }

    pub fn max_allocation(&self) -> u64 {
        self.x
            .iter()
            .map(|&a| self.assignment.allocated(a))
            .max()
            .unwrap_or(0)
    }

    /// Checks closure, capacities, support inside `G[x ∪ y]` and the
    /// per-customer lower bound `q`.
    pub fn is_weighted_expansion(&self, g: &BipartiteGraph, cap: &CapacityFn, q: u64) -> bool {
        let sub = g.induced(&self.x, &self.y);
        self.is_closed_in(g)
            && self.assignment.satisfies_capacities(&sub, cap)
            && self.x.iter().all(|&a| self.assignment.allocated(a) >= q)
    }
}

/// Matches the `q` twins of every vertex of `A` in `g`, assuming `A` has a
/// `q`-expansion into `B`. Returns unit weights on the matched edges.
fn expansion_assignment(g: &BipartiteGraph, q: u64) -> Result<EdgeWeightFn> {
    let weights = g.side_a().map(|a| (a, q)).collect();
    let twin = build_twin_graph(g, Side::A, &weights)?;
    let m = max_matching(&twin.graph);
    let mut f = EdgeWeightFn::new();
    for (t, b) in m.edges() {
        f.add(twin.origin_of(t), b, 1);
    }
    Ok(f)
}

/// The Expansion Lemma: with `|B| ≥ q|A|`, `A` nonempty and no isolated
/// vertex in `B`, finds nonempty `X ⊆ A`, `Y ⊆ B` with a `q`-expansion of `X`
/// into `Y` and `N(Y) ⊆ X`.
///
/// Hall violators `X'` are removed together with `N(X')` until none is left.
/// Each removal keeps `|B| ≥ q|A|` and leaves no isolated `B`-vertex, so the
/// process stops with a nonempty `A`, which then expands into all of `B`.
pub fn expansion_lemma(g: &BipartiteGraph, q: u64) -> Result<ExpansionPair> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    if g.len_a() == 0 {
        return Err(Error::Precondition("side A is empty".into()));
    }
    if (g.len_b() as u64) < q * g.len_a() as u64 {
        return Err(Error::Precondition(format!(
            "|B| = {} < q|A| = {}",
            g.len_b(),
            q * g.len_a() as u64
        )));
    }
    if let Some(b) = g.isolated_b().next() {
        return Err(Error::Precondition(format!("B-vertex {b} is isolated")));
    }

    let mut a = g.a_set();
    let mut b = g.b_set();
    let mut cur = g.clone();
    while let Some(violator) = hall_violator(&cur, q)? {
        let nb = cur.neighborhood_of_a(&violator);
        a.retain(|v| !violator.contains(v));
        b.retain(|v| !nb.contains(v));
        cur = g.induced(&a, &b);
    }
    debug_assert!(!a.is_empty());
    let assignment = expansion_assignment(&cur, q)?;
    Ok(ExpansionPair {
        x: a,
        y: b,
        assignment,
    })
}

/// Decides whether any pair `(X, Y)` with a `q`-expansion of `X` into `Y` and
/// `N(Y) ⊆ X` exists, and returns one.
///
/// Each round matches the `q`-fold twin graph of `A`, keeps the customers `A'`
/// whose twins are all matched and their partners `B'`. If `N(B') ⊆ A'` the
/// pair is found; otherwise the search continues on
/// `G[A' ∪ (B \ N(A \ A'))]`, which still contains every valid pair.
pub fn find_q_expansion_pair(g: &BipartiteGraph, q: u64) -> Result<Option<ExpansionPair>> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    let mut cur = g.clone();
    loop {
        if cur.len_a() == 0 || cur.len_b() == 0 {
            return Ok(None);
        }
        let f = expansion_assignment(&cur, q)?;
        let a_keep: NodeSet = cur.side_a().filter(|&a| f.allocated(a) >= q).collect();
        let b_keep: NodeSet = f
            .support()
            .filter(|((a, _), _)| a_keep.contains(a))
            .map(|((_, b), _)| b)
            .collect();
        if a_keep.is_empty() {
            return Ok(None);
        }
        if cur.neighborhood_of_b(&b_keep).is_subset(&a_keep) {
            return Ok(Some(ExpansionPair {
                assignment: f.restricted(&a_keep, &b_keep),
                x: a_keep,
                y: b_keep,
            }));
        }
        let dropped: NodeSet = cur.a_set().difference(&a_keep).copied().collect();
        let blocked = cur.neighborhood_of_a(&dropped);
        let b_rest: NodeSet = cur.b_set().difference(&blocked).copied().collect();
        // Neighborhoods in `cur` equal those in `g` for the surviving B side,
        // since every B-vertex next to a dropped customer is dropped too.
        cur = cur.induced(&a_keep, &b_rest);
    }
}

/// Maps a pair found in the B-twin graph back to items: `f(uv)` counts the
/// twins of `v` assigned to `u`.
fn fold_twins(pair: &ExpansionPair, origin: &BTreeMap<NodeId, NodeId>) -> (NodeSet, EdgeWeightFn) {
    let y = pair.y.iter().map(|t| origin[t]).collect();
    let mut f = EdgeWeightFn::new();
    for ((a, t), w) in pair.assignment.support() {
        f.add(a, origin[&t], w);
    }
    (y, f)
}

fn check_capacities_positive(g: &BipartiteGraph, cap: &CapacityFn) -> Result<()> {
    for b in g.side_b() {
        match cap.get(&b) {
            None => return Err(Error::Precondition(format!("no capacity for item {b}"))),
            Some(0) => return Err(Error::Precondition(format!("item {b} has capacity 0"))),
            Some(_) => {}
        }
    }
    Ok(())
}

/// Weighted version of [`find_q_expansion_pair`]: returns `X`, `Y` and a
/// splitting allocation giving each member of `X` value at least `q` within
/// the capacities, with `N(Y) ⊆ X`.
pub fn weighted_q_expansion_pair(
    g: &BipartiteGraph,
    q: u64,
    cap: &CapacityFn,
) -> Result<Option<ExpansionPair>> {
    check_capacities_positive(g, cap)?;
    let twin = build_twin_graph(g, Side::B, cap)?;
    let Some(pair) = find_q_expansion_pair(&twin.graph, q)? else {
        return Ok(None);
    };
    let (y, assignment) = fold_twins(&pair, &twin.origin);
    Ok(Some(ExpansionPair {
        x: pair.x,
        y,
        assignment,
    }))
}

/// Rounds a weighted `q`-expansion to an unsplitting one.
///
/// With `W` the largest capacity in `g`, every customer keeps value at least
/// `q - W + 1` and the root keeps at least its value under `f`, hence at least
/// `q`. The root defaults to the smallest customer.
pub fn strictify(
    g: &BipartiteGraph,
    f: &EdgeWeightFn,
    cap: &CapacityFn,
    q: u64,
    root: Option<NodeId>,
) -> Result<EdgeWeightFn> {
    let root = match root {
        Some(r) => r,
        None => g
            .side_a()
            .next()
            .ok_or_else(|| Error::Precondition("side A is empty".into()))?,
    };
    let demand = g.side_a().map(|a| (a, q)).collect();
    let capacity = g
        .side_b()
        .map(|b| (b, cap.get(&b).copied().unwrap_or(0)))
        .collect();
    let problem = AllocationProblem::new(g.clone(), demand, capacity)?;
    round_unsplitting(&problem, f, root)
}

/// The Weighted Expansion Lemma.
///
/// Requires capacities in `1..=w_max`, `Σ cap ≥ (q + w_max - 1)|A|`, `A`
/// nonempty and no isolated item. Returns nonempty `X`, `Y` with `N(Y) ⊆ X`
/// and an unsplitting allocation giving every member of `X` at least `q` and
/// one member at least `q + w_max - 1`.
pub fn weighted_expansion_lemma(
    g: &BipartiteGraph,
    q: u64,
    w_max: u64,
    cap: &CapacityFn,
) -> Result<ExpansionPair> {
    if q == 0 || w_max == 0 {
        return Err(Error::InvalidParameter("q and W must be positive".into()));
    }
    check_capacities_positive(g, cap)?;
    if let Some(b) = g.side_b().find(|b| cap[b] > w_max) {
        return Err(Error::Precondition(format!(
            "item {b} has capacity {} > W = {w_max}",
            cap[&b]
        )));
    }
    let total: u64 = g.side_b().map(|b| cap[&b]).sum();
    let shifted = q + w_max - 1;
    if total < shifted * g.len_a() as u64 {
        return Err(Error::Precondition(format!(
            "total capacity {total} < (q + W - 1)|A| = {}",
            shifted * g.len_a() as u64
        )));
    }

    let twin = build_twin_graph(g, Side::B, cap)?;
    let pair = expansion_lemma(&twin.graph, shifted)?;
    let (y, f) = fold_twins(&pair, &twin.origin);
    let sub = g.induced(&pair.x, &y);
    let h = strictify(&sub, &f, cap, shifted, None)?;
    Ok(ExpansionPair {
        x: pair.x,
        y,
        assignment: h,
    })
}
