//! Simple undirected graphs with stable vertex ids.
//!
//! Vertex ids are never renamed: deleting vertices or taking induced subgraphs
//! keeps the ids of the survivors, so reductions can be reported against the
//! ids of the input instance.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Ordered set of vertex ids.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds the edge `uv`. Re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.adj.contains_key(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Neighbors of `v`; empty for unknown ids.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|v| !self.contains(**v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// `G[s]`; ids outside the graph are ignored.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| s.contains(v))
            .map(|(&v, ns)| (v, ns.intersection(s).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// `G - s`.
    pub fn remove_vertices(&self, s: &VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| !s.contains(v))
            .map(|(&v, ns)| (v, ns.difference(s).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(v, |_| true);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    fn reachable_from(&self, start: VertexId, allowed: impl Fn(VertexId) -> bool) -> VertexSet {
        let mut comp = VertexSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if allowed(w) && comp.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        comp
    }

    /// `N(s) = (∪_{u ∈ s} N(u)) \ s`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_subset(s)?;
        Ok(self.open_neighborhood(s))
    }

    pub(crate) fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .flat_map(|&u| self.neighbors(u))
            .filter(|w| !s.contains(w))
            .collect()
    }

    /// Whether `s` is nonempty and induces a connected subgraph.
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        let Some(&start) = s.first() else {
            return false;
        };
        if !self.contains(start) {
            return false;
        }
        self.reachable_from(start, |w| s.contains(&w)).len() == s.len()
    }

    /// All connected vertex sets of exactly `size` vertices, sorted
    /// lexicographically.
    ///
    /// Each set is generated once, from its smallest vertex: the extension
    /// frontier only admits larger ids that are not already adjacent to the
    /// partial set (the ESU scheme), so no deduplication pass is needed.
    pub fn enumerate_connected_sets(&self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        for root in self.vertices() {
            let mut current = vec![root];
            let ext: Vec<VertexId> = self.neighbors(root).filter(|&w| w > root).collect();
            self.extend_connected(root, size, &mut current, ext, &mut out);
        }
        out.sort();
        out
    }

    fn extend_connected(
        &self,
        root: VertexId,
        size: usize,
        current: &mut Vec<VertexId>,
        mut ext: Vec<VertexId>,
        out: &mut Vec<VertexSet>,
    ) {
        if current.len() == size {
            out.push(current.iter().copied().collect());
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for u in self.neighbors(w) {
                if u > root
                    && !current.contains(&u)
                    && !ext.contains(&u)
                    && !current.iter().any(|&c| self.has_edge(c, u))
                {
                    next_ext.push(u);
                }
            }
            current.push(w);
            self.extend_connected(root, size, current, next_ext, out);
            current.pop();
        }
    }

    /// Whether every component of `G - s` has at most `ell` vertices.
    pub fn is_coc_solution(&self, s: &VertexSet, ell: usize) -> bool {
        self.remove_vertices(s)
            .connected_components()
            .iter()
            .all(|c| c.len() <= ell)
    }

    /// Components with more than `ell` vertices.
    pub fn oversized_components(&self, ell: usize) -> Vec<VertexSet> {
        self.connected_components()
            .into_iter()
            .filter(|c| c.len() > ell)
            .collect()
    }

    /// Grows a BFS tree from `start` inside its component and stops after
    /// `size` vertices. The result is connected; it is smaller than `size`
    /// only if the component is.
    pub fn bfs_prefix(&self, start: VertexId, size: usize) -> VertexSet {
        let mut set = VertexSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if set.len() == size {
                    return set;
                }
                if set.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        set
    }
}
