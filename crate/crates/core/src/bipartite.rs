//! Bipartite graphs `((A, B), E)`, maximum matchings, Hall violators and twin
//! graphs.
//!
//! The two sides use separate id spaces: `a`-ids and `b`-ids never collide,
//! because an id is always read together with the side it belongs to.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type NodeSet = BTreeSet<NodeId>;

/// Item capacities on side B.
pub type CapacityFn = BTreeMap<NodeId, u64>;
/// Customer demands on side A.
pub type DemandFn = BTreeMap<NodeId, u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj_a: BTreeMap<NodeId, NodeSet>,
    adj_b: BTreeMap<NodeId, NodeSet>,
}

impl BipartiteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sides `0..a` and `0..b` with the given `(a, b)` edges.
    pub fn from_edges(a: usize, b: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = Self::new();
        (0..a).for_each(|v| g.add_a(v));
        (0..b).for_each(|v| g.add_b(v));
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete bipartite graph `K_{a,b}`.
    pub fn complete(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
        Self::from_edges(a, b, &edges).expect("ids in range")
    }

    pub fn add_a(&mut self, a: NodeId) {
        self.adj_a.entry(a).or_default();
    }

    pub fn add_b(&mut self, b: NodeId) {
        self.adj_b.entry(b).or_default();
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<()> {
        let na = self.adj_a.get_mut(&a).ok_or(Error::UnknownVertex(a))?;
        if !self.adj_b.contains_key(&b) {
            return Err(Error::UnknownVertex(b));
        }
        na.insert(b);
        self.adj_b.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn side_a(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj_a.keys().copied()
    }

    pub fn side_b(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj_b.keys().copied()
    }

    pub fn a_set(&self) -> NodeSet {
        self.side_a().collect()
    }

    pub fn b_set(&self) -> NodeSet {
        self.side_b().collect()
    }

    pub fn len_a(&self) -> usize {
        self.adj_a.len()
    }

    pub fn len_b(&self) -> usize {
        self.adj_b.len()
    }

    pub fn has_a(&self, a: NodeId) -> bool {
        self.adj_a.contains_key(&a)
    }

    pub fn has_b(&self, b: NodeId) -> bool {
        self.adj_b.contains_key(&b)
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj_a.get(&a).is_some_and(|ns| ns.contains(&b))
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj_a
            .iter()
            .flat_map(|(&a, ns)| ns.iter().map(move |&b| (a, b)))
    }

    pub fn num_edges(&self) -> usize {
        self.adj_a.values().map(BTreeSet::len).sum()
    }

    pub fn neighbors_a(&self, a: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj_a.get(&a).into_iter().flatten().copied()
    }

    pub fn neighbors_b(&self, b: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj_b.get(&b).into_iter().flatten().copied()
    }

    /// `N(x)` for `x ⊆ A`.
    pub fn neighborhood_of_a(&self, x: &NodeSet) -> NodeSet {
        x.iter().flat_map(|&a| self.neighbors_a(a)).collect()
    }

    /// `N(y)` for `y ⊆ B`.
    pub fn neighborhood_of_b(&self, y: &NodeSet) -> NodeSet {
        y.iter().flat_map(|&b| self.neighbors_b(b)).collect()
    }

    pub fn isolated_b(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj_b
            .iter()
            .filter(|(_, ns)| ns.is_empty())
            .map(|(&b, _)| b)
    }

    /// `G[x ∪ y]`; ids keep their values.
    pub fn induced(&self, x: &NodeSet, y: &NodeSet) -> BipartiteGraph {
        let adj_a = self
            .adj_a
            .iter()
            .filter(|(a, _)| x.contains(a))
            .map(|(&a, ns)| (a, ns.intersection(y).copied().collect()))
            .collect();
        let adj_b = self
            .adj_b
            .iter()
            .filter(|(b, _)| y.contains(b))
            .map(|(&b, ns)| (b, ns.intersection(x).copied().collect()))
            .collect();
        BipartiteGraph { adj_a, adj_b }
    }
}

/// Endpoint-disjoint set of `(a, b)` edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    a_to_b: BTreeMap<NodeId, NodeId>,
    b_to_a: BTreeMap<NodeId, NodeId>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.a_to_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_to_b.is_empty()
    }

    pub fn mate_of_a(&self, a: NodeId) -> Option<NodeId> {
        self.a_to_b.get(&a).copied()
    }

    pub fn mate_of_b(&self, b: NodeId) -> Option<NodeId> {
        self.b_to_a.get(&b).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.a_to_b.iter().map(|(&a, &b)| (a, b))
    }

    /// Checks edge membership in `g` and endpoint-disjointness.
    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        self.a_to_b.len() == self.b_to_a.len()
            && self
                .a_to_b
                .iter()
                .all(|(&a, &b)| g.has_edge(a, b) && self.b_to_a.get(&b) == Some(&a))
    }
}

/// Maximum-cardinality matching by augmenting paths (Kuhn's algorithm).
///
/// A-vertices are processed in ascending id order and neighbors are tried in
/// ascending order, so the result is a function of the input alone.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let mut m = Matching::default();
    for a in g.side_a() {
        let mut visited = NodeSet::new();
        augment(g, a, &mut visited, &mut m);
    }
    m
}

fn augment(g: &BipartiteGraph, a: NodeId, visited: &mut NodeSet, m: &mut Matching) -> bool {
    // Iterative DFS over alternating paths; recursion depth would otherwise
    // grow with the matching size on large twin graphs.
    let mut stack: Vec<(NodeId, Vec<NodeId>)> = vec![(a, g.neighbors_a(a).collect())];
    let mut via: Vec<NodeId> = Vec::new();
    while let Some((_, cands)) = stack.last_mut() {
        let Some(b) = cands.first().copied() else {
            stack.pop();
            via.pop();
            continue;
        };
        cands.remove(0);
        if !visited.insert(b) {
            continue;
        }
        match m.b_to_a.get(&b) {
            None => {
                via.push(b);
                for (i, (u, _)) in stack.iter().enumerate() {
                    let v = via[i];
                    m.a_to_b.insert(*u, v);
                    m.b_to_a.insert(v, *u);
                }
                return true;
            }
            Some(&next) => {
                via.push(b);
                stack.push((next, g.neighbors_a(next).collect()));
            }
        }
    }
    false
}

/// Weighted copies of one side of a bipartite graph.
///
/// Every vertex `v` of the chosen side with weight `w(v)` becomes `w(v)` twins
/// with `N(twin) = N(v)`. Twin ids are `0..total`, allocated in ascending
/// order of origin.
#[derive(Clone, Debug)]
pub struct TwinGraph {
    pub graph: BipartiteGraph,
    pub side: Side,
    pub origin: BTreeMap<NodeId, NodeId>,
    pub copies: BTreeMap<NodeId, Vec<NodeId>>,
}

impl TwinGraph {
    pub fn origin_of(&self, twin: NodeId) -> NodeId {
        self.origin[&twin]
    }
}

pub fn build_twin_graph(
    g: &BipartiteGraph,
    side: Side,
    weights: &BTreeMap<NodeId, u64>,
) -> Result<TwinGraph> {
    let twinned: Vec<NodeId> = match side {
        Side::A => g.side_a().collect(),
        Side::B => g.side_b().collect(),
    };
    let mut origin = BTreeMap::new();
    let mut copies = BTreeMap::new();
    let mut next = 0;
    for &v in &twinned {
        let w = *weights.get(&v).ok_or_else(|| {
            Error::Precondition(format!("no weight given for {side:?}-vertex {v}"))
        })?;
        if w == 0 {
            return Err(Error::Precondition(format!(
                "{side:?}-vertex {v} has weight 0 and cannot be twinned"
            )));
        }
        let ids: Vec<NodeId> = (next..next + w as usize).collect();
        next += w as usize;
        for &t in &ids {
            origin.insert(t, v);
        }
        copies.insert(v, ids);
    }

    let mut graph = BipartiteGraph::new();
    match side {
        Side::A => {
            origin.keys().for_each(|&t| graph.add_a(t));
            g.side_b().for_each(|b| graph.add_b(b));
            for (a, b) in g.edges() {
                for &t in &copies[&a] {
                    graph.add_edge(t, b)?;
                }
            }
        }
        Side::B => {
            g.side_a().for_each(|a| graph.add_a(a));
            origin.keys().for_each(|&t| graph.add_b(t));
            for (a, b) in g.edges() {
                for &t in &copies[&b] {
                    graph.add_edge(a, t)?;
                }
            }
        }
    }
    Ok(TwinGraph {
        graph,
        side,
        origin,
        copies,
    })
}

/// Returns a nonempty `X ⊆ A` with `|N(X)| < q|X|` if one exists.
///
/// Works in the `q`-fold twin graph of `A`: if a maximum matching leaves some
/// twin unmatched, the origins of the twins reachable from it by alternating
/// paths form a violator. Otherwise `A` has a `q`-expansion into `B`.
pub fn hall_violator(g: &BipartiteGraph, q: u64) -> Result<Option<NodeSet>> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    let weights: BTreeMap<NodeId, u64> = g.side_a().map(|a| (a, q)).collect();
    let twin = build_twin_graph(g, Side::A, &weights)?;
    let m = max_matching(&twin.graph);
    let Some(free) = twin.graph.side_a().find(|&t| m.mate_of_a(t).is_none()) else {
        return Ok(None);
    };
    let mut reached = NodeSet::from([free]);
    let mut seen_b = NodeSet::new();
    let mut queue = VecDeque::from([free]);
    while let Some(t) = queue.pop_front() {
        for b in twin.graph.neighbors_a(t) {
            if !seen_b.insert(b) {
                continue;
            }
            // Maximality: every b reached here is matched.
            let mate = m
                .mate_of_b(b)
                .expect("augmenting path in a maximum matching");
            if reached.insert(mate) {
                queue.push_back(mate);
            }
        }
    }
    Ok(Some(reached.iter().map(|&t| twin.origin_of(t)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn matching_sizes() {
        let c4 = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(max_matching(&c4).len(), 2);
        let k23 = BipartiteGraph::complete(2, 3);
        let m = max_matching(&k23);
        assert_eq!(m.len(), 2);
        assert!(m.is_valid_in(&k23));
        let empty = BipartiteGraph::from_edges(3, 3, &[]).unwrap();
        assert!(max_matching(&empty).is_empty());
    }

    #[test]
    fn matching_needs_augmentation() {
        // Greedy would match a0-b0 and strand a1.
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.len(), 2);
        assert_eq!(m.mate_of_a(1), Some(0));
    }

    #[test]
    fn violators() {
        let g = BipartiteGraph::from_edges(2, 1, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(hall_violator(&g, 1).unwrap(), Some(set(&[0, 1])));

        let g = BipartiteGraph::complete(1, 2);
        assert_eq!(hall_violator(&g, 2).unwrap(), None);

        let g = BipartiteGraph::complete(1, 1);
        assert_eq!(hall_violator(&g, 2).unwrap(), Some(set(&[0])));

        assert!(hall_violator(&g, 0).is_err());
    }

    #[test]
    fn twin_graph_on_b() {
        let g = BipartiteGraph::complete(1, 1);
        let t = build_twin_graph(&g, Side::B, &BTreeMap::from([(0, 3)])).unwrap();
        assert_eq!(t.graph.len_b(), 3);
        assert!(t
            .graph
            .side_b()
            .all(|b| t.graph.has_edge(0, b) && t.origin_of(b) == 0));
    }

    #[test]
    fn twin_graph_unit_weights_is_identity() {
        let g = BipartiteGraph::from_edges(2, 3, &[(0, 0), (0, 2), (1, 1)]).unwrap();
        let w: BTreeMap<_, _> = (0..3).map(|b| (b, 1)).collect();
        let t = build_twin_graph(&g, Side::B, &w).unwrap();
        assert_eq!(t.graph, g);
    }

    #[test]
    fn twin_graph_on_a() {
        let g = BipartiteGraph::complete(1, 1);
        let t = build_twin_graph(&g, Side::A, &BTreeMap::from([(0, 2)])).unwrap();
        assert_eq!(t.graph.len_a(), 2);
        assert!(t.graph.has_edge(0, 0) && t.graph.has_edge(1, 0));
    }

    #[test]
    fn zero_weight_rejected() {
        let g = BipartiteGraph::complete(1, 2);
        let w = BTreeMap::from([(0, 1), (1, 0)]);
        assert!(matches!(
            build_twin_graph(&g, Side::B, &w),
            Err(Error::Precondition(_))
        ));
    }
}
