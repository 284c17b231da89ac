//! Allocating items (side B, with capacities) to customers (side A, with
//! demands).
//!
//! An [`EdgeWeightFn`] may split an item among several customers. The two
//! operations here first cancel cycles in the support of a splitting
//! allocation, then round it to an unsplitting one in which each customer loses
//! less than the most valuable item, and one chosen customer loses nothing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::bipartite::{BipartiteGraph, CapacityFn, DemandFn, NodeId, Side};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct AllocationProblem {
    pub graph: BipartiteGraph,
    pub demand: DemandFn,
    pub capacity: CapacityFn,
}

impl AllocationProblem {
    pub fn new(graph: BipartiteGraph, demand: DemandFn, capacity: CapacityFn) -> Result<Self> {
        if let Some(a) = graph.side_a().find(|a| !demand.contains_key(a)) {
            return Err(Error::Precondition(format!("no demand for customer {a}")));
        }
        if let Some(b) = graph.side_b().find(|b| !capacity.contains_key(b)) {
            return Err(Error::Precondition(format!("no capacity for item {b}")));
        }
        Ok(Self {
            graph,
            demand,
            capacity,
        })
    }

    /// `W`, the largest item capacity (0 without items).
    pub fn max_capacity(&self) -> u64 {
        self.capacity.values().copied().max().unwrap_or(0)
    }
}

/// Integer weights on `(a, b)` edges; absent edges weigh 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeWeightFn {
    weights: BTreeMap<(NodeId, NodeId), u64>,
}

impl EdgeWeightFn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = ((NodeId, NodeId), u64)>) -> Self {
        let mut f = Self::new();
        for ((a, b), w) in pairs {
            f.set(a, b, w);
        }
        f
    }

    pub fn get(&self, a: NodeId, b: NodeId) -> u64 {
        self.weights.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, a: NodeId, b: NodeId, w: u64) {
        if w == 0 {
            self.weights.remove(&(a, b));
        } else {
            self.weights.insert((a, b), w);
        }
    }

    pub fn add(&mut self, a: NodeId, b: NodeId, w: u64) {
        let cur = self.get(a, b);
        self.set(a, b, cur + w);
    }

    /// Edges with positive weight, in `(a, b)` order.
    pub fn support(&self) -> impl Iterator<Item = ((NodeId, NodeId), u64)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Value allocated to customer `a`.
    pub fn allocated(&self, a: NodeId) -> u64 {
        self.weights
            .range((a, 0)..=(a, NodeId::MAX))
            .map(|(_, &w)| w)
            .sum()
    }

    /// Total weight on edges at item `b`.
    pub fn load(&self, b: NodeId) -> u64 {
        self.weights
            .iter()
            .filter(|((_, v), _)| *v == b)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Weighted degree of a vertex on either side.
    pub fn vertex_sum(&self, side: Side, v: NodeId) -> u64 {
        match side {
            Side::A => self.allocated(v),
            Side::B => self.load(v),
        }
    }

    pub fn within(&self, g: &BipartiteGraph) -> bool {
        self.weights.keys().all(|&(a, b)| g.has_edge(a, b))
    }

    pub fn satisfies_capacities(&self, g: &BipartiteGraph, cap: &CapacityFn) -> bool {
        let mut load: BTreeMap<NodeId, u64> = BTreeMap::new();
        for (&(_, b), &w) in &self.weights {
            *load.entry(b).or_default() += w;
        }
        self.within(g)
            && load
                .iter()
                .all(|(b, &l)| cap.get(b).is_some_and(|&c| l <= c))
    }

    pub fn satisfies_demands(&self, g: &BipartiteGraph, demand: &DemandFn) -> bool {
        g.side_a()
            .all(|a| self.allocated(a) >= demand.get(&a).copied().unwrap_or(0))
    }

    /// Every item has at most one positive edge.
    pub fn is_unsplitting(&self) -> bool {
        let mut owners = BTreeSet::new();
        self.weights.keys().all(|&(_, b)| owners.insert(b))
    }

    /// The support graph has no cycle.
    pub fn has_forest_support(&self) -> bool {
        let mut uf = UnionFind::default();
        self.weights
            .keys()
            .all(|&(a, b)| uf.union((Side::A, a), (Side::B, b)))
    }

    /// Drops edges outside `x × y`.
    pub fn restricted(&self, x: &BTreeSet<NodeId>, y: &BTreeSet<NodeId>) -> EdgeWeightFn {
        EdgeWeightFn {
            weights: self
                .weights
                .iter()
                .filter(|((a, b), _)| x.contains(a) && y.contains(b))
                .map(|(&e, &w)| (e, w))
                .collect(),
        }
    }
}

type Node = (Side, NodeId);

#[derive(Default)]
struct UnionFind {
    parent: BTreeMap<Node, Node>,
}

impl UnionFind {
    fn find(&mut self, x: Node) -> Node {
        let p = *self.parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent.insert(x, root);
        root
    }

    /// Returns false if `x` and `y` were already connected.
    fn union(&mut self, x: Node, y: Node) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent.insert(rx, ry);
        true
    }
}

fn check_feasible(p: &AllocationProblem, f: &EdgeWeightFn) -> Result<()> {
    if !f.within(&p.graph) {
        return Err(Error::Precondition("weight on a non-edge".into()));
    }
    if !f.satisfies_capacities(&p.graph, &p.capacity) {
        return Err(Error::Precondition("capacity constraint violated".into()));
    }
    if !f.satisfies_demands(&p.graph, &p.demand) {
        return Err(Error::Precondition("demand constraint violated".into()));
    }
    Ok(())
}

/// Finds a cycle in the support of `f`, as its edges in cyclic order.
fn find_support_cycle(f: &EdgeWeightFn) -> Option<Vec<(NodeId, NodeId)>> {
    let mut uf = UnionFind::default();
    let mut forest: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for ((a, b), _) in f.support() {
        let (u, v) = ((Side::A, a), (Side::B, b));
        if uf.union(u, v) {
            forest.entry(u).or_default().push(v);
            forest.entry(v).or_default().push(u);
            continue;
        }
        // The forest path from v back to u closes the cycle with edge uv.
        let mut prev: BTreeMap<Node, Node> = BTreeMap::new();
        let mut queue = VecDeque::from([v]);
        prev.insert(v, v);
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for &y in &forest[&x] {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        let mut nodes = vec![u];
        let mut cur = u;
        while cur != v {
            cur = prev[&cur];
            nodes.push(cur);
        }
        // nodes: u .. v along the forest; then the closing edge v-u.
        let mut edges = Vec::with_capacity(nodes.len());
        for w in nodes.windows(2) {
            edges.push(as_edge(w[0], w[1]));
        }
        edges.push(as_edge(v, u));
        return Some(edges);
    }
    None
}

fn as_edge(x: Node, y: Node) -> (NodeId, NodeId) {
    match (x, y) {
        ((Side::A, a), (Side::B, b)) | ((Side::B, b), (Side::A, a)) => (a, b),
        _ => unreachable!("support edges join A to B"),
    }
}

/// Shifts weight around cycles of the support until it is a forest.
///
/// For a cycle `e_1 … e_2s` rotated so that `e_1` has the minimum weight `c`,
/// odd-indexed edges lose `c` and even-indexed edges gain `c`. Every vertex on
/// the cycle meets one edge of each parity, so all vertex sums are unchanged,
/// and `e_1` leaves the support. At most `|E|` rounds are needed.
pub fn cancel_cycles(p: &AllocationProblem, f: &EdgeWeightFn) -> Result<EdgeWeightFn> {
    check_feasible(p, f)?;
    let mut f = f.clone();
    while let Some(mut cycle) = find_support_cycle(&f) {
        let (min_pos, c) = cycle
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (i, f.get(a, b)))
            .min_by_key(|&(i, w)| (w, i))
            .expect("cycles are nonempty");
        cycle.rotate_left(min_pos);
        for (i, &(a, b)) in cycle.iter().enumerate() {
            let w = f.get(a, b);
            f.set(a, b, if i % 2 == 0 { w - c } else { w + c });
        }
    }
    Ok(f)
}

/// Rounds a feasible allocation to an unsplitting one.
///
/// After [`cancel_cycles`], each tree of the support is rooted: at `root` for
/// its own tree, otherwise at the smallest customer in the tree. Every item in
/// a tree goes whole to its parent customer. A non-root customer only loses
/// the share of its parent item, which is at most `W - 1`; roots lose nothing.
/// Items without support edges stay unassigned.
pub fn round_unsplitting(
    p: &AllocationProblem,
    f: &EdgeWeightFn,
    root: NodeId,
) -> Result<EdgeWeightFn> {
    if !p.graph.has_a(root) {
        return Err(Error::Precondition(format!(
            "root {root} is not a customer"
        )));
    }
    let forest = cancel_cycles(p, f)?;

    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for ((a, b), _) in forest.support() {
        adj.entry((Side::A, a)).or_default().push((Side::B, b));
        adj.entry((Side::B, b)).or_default().push((Side::A, a));
    }

    let roots = std::iter::once(root).chain(p.graph.side_a().filter(|&a| a != root));
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    let mut h = EdgeWeightFn::new();
    for r in roots {
        if !seen.insert((Side::A, r)) {
            continue;
        }
        let mut queue = VecDeque::from([(Side::A, r)]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).into_iter().flatten() {
                if !seen.insert(y) {
                    continue;
                }
                if let ((Side::A, a), (Side::B, b)) = (x, y) {
                    h.set(a, b, p.capacity[&b]);
                }
                queue.push_back(y);
            }
        }
    }
    Ok(h)
}
