//! The kernelization pipeline.
//!
//! A *reducible pair* `(X, Y)` consists of disjoint vertex sets with
//! `N(Y) ⊆ X`, every component of `G[Y]` of size at most `ℓ`, and a weighted
//! `(2ℓ − 1)`-expansion from `X` into the components of `G[Y]` (weighted by
//! size). Some optimal solution then contains all of `X` and nothing of `Y`,
//! so `(G, k)` reduces to `(G − (X ∪ Y), k − |X|)`.
//!
//! Reducible pairs are located through the covering LP: the vertices an
//! optimal solution sets to 1 and 0 contain one, possibly after fixing one
//! more variable to 1 without changing the optimum. If none is found on an
//! instance with at least `2ℓk` vertices, the instance is a no-instance.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::allocation::EdgeWeightFn;
use crate::bipartite::{BipartiteGraph, CapacityFn, NodeId};
use crate::error::{Error, Result};
use crate::expansion::{strictify, weighted_q_expansion_pair};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::lp::{build_coc_lp, ones_and_zeros, solve_lp, solve_with_fixed_one};
use crate::solvers::brute_force_solve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocInstance {
    pub graph: Graph,
    pub ell: usize,
    pub k: usize,
}

impl CocInstance {
    pub fn new(graph: Graph, ell: usize, k: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParameter("ell must be at least 1".into()));
        }
        Ok(Self { graph, ell, k })
    }

    /// A clique on `ℓ + 1` vertices with budget 0: the canonical no-instance.
    pub fn trivial_no(ell: usize) -> Self {
        let mut graph = Graph::new();
        for v in 0..=ell {
            graph.add_vertex(v);
        }
        for u in 0..=ell {
            for v in u + 1..=ell {
                graph.add_edge(u, v).expect("distinct clique vertices");
            }
        }
        Self { graph, ell, k: 0 }
    }

    pub fn is_trivial_no(&self) -> bool {
        *self == Self::trivial_no(self.ell)
    }

    /// `2ℓk`.
    pub fn size_bound(&self) -> usize {
        2 * self.ell * self.k
    }
}

/// Bipartite graph between `X` and the components of `G[Y]`, each component
/// weighted by its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGraph {
    /// Side A holds the vertex ids of `X`; side B holds component indices.
    pub bipartite: BipartiteGraph,
    pub components: Vec<VertexSet>,
    pub weight: CapacityFn,
}

impl ComponentGraph {
    pub fn component(&self, node: NodeId) -> &VertexSet {
        &self.components[node]
    }

    /// Union of the components behind `nodes`.
    pub fn expand(&self, nodes: &BTreeSet<NodeId>) -> VertexSet {
        nodes
            .iter()
            .flat_map(|&c| self.components[c].iter().copied())
            .collect()
    }
}

fn check_disjoint_subsets(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<()> {
    g.check_subset(x)?;
    g.check_subset(y)?;
    if let Some(v) = x.intersection(y).next() {
        return Err(Error::Precondition(format!("vertex {v} lies in both sets")));
    }
    Ok(())
}

pub fn build_component_graph(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<ComponentGraph> {
    check_disjoint_subsets(g, x, y)?;
    let components = g.induced_subgraph(y).connected_components();
    let mut bipartite = BipartiteGraph::new();
    x.iter().for_each(|&v| bipartite.add_a(v));
    let mut weight = CapacityFn::new();
    for (i, comp) in components.iter().enumerate() {
        bipartite.add_b(i);
        weight.insert(i, comp.len() as u64);
        for v in g.open_neighborhood(comp).intersection(x) {
            bipartite.add_edge(*v, i)?;
        }
    }
    Ok(ComponentGraph {
        bipartite,
        components,
        weight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduciblePair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub component_graph: ComponentGraph,
    /// Weighted `(2ℓ − 1)`-expansion in `component_graph`.
    pub expansion: EdgeWeightFn,
    /// A vertex of `X` receiving at least `2ℓ`, if any.
    pub strict_at: Option<VertexId>,
}

impl ReduciblePair {
    /// Checks every defining condition against `g`.
    pub fn validate(&self, g: &Graph, ell: usize) -> Result<()> {
        let fail = |msg: &str| Err(Error::Precondition(format!("not a reducible pair: {msg}")));
        check_disjoint_subsets(g, &self.x, &self.y)?;
        if self.x.is_empty() {
            return fail("X is empty");
        }
        if !g.open_neighborhood(&self.y).is_subset(&self.x) {
            return fail("N(Y) is not inside X");
        }
        let cg = build_component_graph(g, &self.x, &self.y)?;
        if cg != self.component_graph {
            return fail("stale component graph");
        }
        if cg.components.iter().any(|c| c.len() > ell) {
            return fail("a component of G[Y] has more than ell vertices");
        }
        let q = 2 * ell as u64 - 1;
        if !self
            .expansion
            .satisfies_capacities(&cg.bipartite, &cg.weight)
            || self.x.iter().any(|&v| self.expansion.allocated(v) < q)
        {
            return fail("no weighted (2ell-1)-expansion");
        }
        Ok(())
    }
}

/// Parts `C_x`, one per `x ∈ X`, partitioning `X ∪ Y` into connected sets of
/// at least `ℓ + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPartition {
    pub parts: BTreeMap<VertexId, VertexSet>,
}

impl WitnessPartition {
    pub fn is_valid_for(&self, g: &Graph, pair: &ReduciblePair, ell: usize) -> bool {
        let mut covered = VertexSet::new();
        for (x, part) in &self.parts {
            let owns_only_itself = part.intersection(&pair.x).eq([x]);
            if !owns_only_itself || part.len() <= ell || !g.is_connected_set(part) {
                return false;
            }
            if part.iter().any(|v| !covered.insert(*v)) {
                return false;
            }
        }
        let all: VertexSet = pair.x.union(&pair.y).copied().collect();
        let one_part_per_component = pair
            .component_graph
            .components
            .iter()
            .all(|c| self.parts.values().filter(|p| c.is_subset(p)).count() == 1);
        self.parts.keys().copied().collect::<VertexSet>() == pair.x
            && covered == all
            && one_part_per_component
    }
}

/// Searches `(A, B)` for a reducible pair with `X ⊆ A` and `Y ⊆ B`.
///
/// `Y` is a union of components of `G[B]`, and only components with at most
/// `ℓ` vertices and all neighbors inside `A` can take part. Those are
/// contracted into the component graph and searched for a weighted
/// `(2ℓ − 1)`-expansion.
pub fn find_reducible_pair_in(
    inst: &CocInstance,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<Option<ReduciblePair>> {
    let g = &inst.graph;
    check_disjoint_subsets(g, a, b)?;
    let usable: VertexSet = g
        .induced_subgraph(b)
        .connected_components()
        .into_iter()
        .filter(|c| c.len() <= inst.ell && g.open_neighborhood(c).is_subset(a))
        .flatten()
        .collect();
    let search = build_component_graph(g, a, &usable)?;
    let q = 2 * inst.ell as u64 - 1;
    let Some(found) = weighted_q_expansion_pair(&search.bipartite, q, &search.weight)? else {
        return Ok(None);
    };

    let x = found.x;
    let y = search.expand(&found.y);
    let component_graph = build_component_graph(g, &x, &y)?;
    let node_of: BTreeMap<VertexId, NodeId> = component_graph
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| (*c.first().expect("nonempty"), i))
        .collect();
    let mut expansion = EdgeWeightFn::new();
    for ((u, node), w) in found.assignment.support() {
        let first = *search.component(node).first().expect("nonempty");
        expansion.add(u, node_of[&first], w);
    }
    let strict_at = x.iter().copied().find(|&v| expansion.allocated(v) > q);
    let pair = ReduciblePair {
        x,
        y,
        component_graph,
        expansion,
        strict_at,
    };
    debug_assert!(pair.validate(g, inst.ell).is_ok());
    Ok(Some(pair))
}

/// Packs `X ∪ Y` into connected parts of size at least `ℓ + 1`, one per
/// vertex of `X`.
///
/// The `(2ℓ − 1)`-expansion is rounded to an unsplitting `ℓ`-expansion rooted
/// at the strict vertex when there is one. Components left without an owner
/// go to their smallest neighbor in `X`.
pub fn witness_partition(inst: &CocInstance, pair: &ReduciblePair) -> Result<WitnessPartition> {
    pair.validate(&inst.graph, inst.ell)?;
    let cg = &pair.component_graph;
    let q = 2 * inst.ell as u64 - 1;
    let h = strictify(
        &cg.bipartite,
        &pair.expansion,
        &cg.weight,
        q,
        pair.strict_at,
    )?;

    let mut owner: BTreeMap<NodeId, VertexId> = h.support().map(|((u, c), _)| (c, u)).collect();
    for c in cg.bipartite.side_b() {
        if owner.contains_key(&c) {
            continue;
        }
        let u = cg.bipartite.neighbors_b(c).next().ok_or_else(|| {
            Error::Precondition(format!(
                "component {:?} has no neighbor in X",
                cg.components[c]
            ))
        })?;
        owner.insert(c, u);
    }

    let mut parts: BTreeMap<VertexId, VertexSet> =
        pair.x.iter().map(|&v| (v, VertexSet::from([v]))).collect();
    for (c, u) in owner {
        parts
            .get_mut(&u)
            .unwrap()
            .extend(cg.components[c].iter().copied());
    }
    Ok(WitnessPartition { parts })
}

/// `(G − (X ∪ Y), ℓ, k − |X|)`, or the trivial no-instance if `|X| > k`.
pub fn apply_reduction(inst: &CocInstance, pair: &ReduciblePair) -> CocInstance {
    if pair.x.len() > inst.k {
        return CocInstance::trivial_no(inst.ell);
    }
    let removed: VertexSet = pair.x.union(&pair.y).copied().collect();
    CocInstance {
        graph: inst.graph.remove_vertices(&removed),
        ell: inst.ell,
        k: inst.k - pair.x.len(),
    }
}

#[derive(Clone, Debug)]
pub struct LpSearch {
    pub pair: Option<ReduciblePair>,
    /// Optimum of the unconstrained LP.
    pub lp_objective: BigRational,
    /// Number of fix-one-variable re-solves performed.
    pub probes: usize,
    /// Set when the search stopped because the LP optimum exceeded the budget.
    pub exceeded_budget: bool,
}

/// LP-guided search for a reducible pair.
///
/// 1. Solve the LP; `A` and `B` are the variables at 1 and at 0.
/// 2. If both are nonempty, look for a pair inside `(A, B)`.
/// 3. Otherwise, or on failure, fix each `x_v = 1` in turn (ascending `v`).
///    When the optimum does not change, retry step 2 with the sets of the new
///    solution.
/// 4. Give up.
pub fn find_reducible_pair_lp(inst: &CocInstance) -> Result<LpSearch> {
    search_reducible_pair(inst, None)
}

fn search_reducible_pair(inst: &CocInstance, budget: Option<usize>) -> Result<LpSearch> {
    let lp = build_coc_lp(&inst.graph, inst.ell)?;
    let base = solve_lp(&lp)?;
    let mut out = LpSearch {
        pair: None,
        lp_objective: base.objective.clone(),
        probes: 0,
        exceeded_budget: false,
    };
    if let Some(k) = budget {
        if base.objective > BigRational::from_integer(k.into()) {
            out.exceeded_budget = true;
            return Ok(out);
        }
    }

    let mut tried: BTreeSet<(VertexSet, VertexSet)> = BTreeSet::new();
    let mut try_sets = |(a, b): (VertexSet, VertexSet)| -> Result<Option<ReduciblePair>> {
        if a.is_empty() || b.is_empty() || !tried.insert((a.clone(), b.clone())) {
            return Ok(None);
        }
        find_reducible_pair_in(inst, &a, &b)
    };

    if let Some(pair) = try_sets(ones_and_zeros(&base))? {
        out.pair = Some(pair);
        return Ok(out);
    }
    for v in inst.graph.vertices() {
        out.probes += 1;
        let fixed = solve_with_fixed_one(&lp, v)?;
        if fixed.objective != base.objective {
            continue;
        }
        if let Some(pair) = try_sets(ones_and_zeros(&fixed))? {
            out.pair = Some(pair);
            return Ok(out);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Reduced,
    TrivialNo,
}

/// Why the kernel collapsed to the trivial no-instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoReason {
    /// Budget 0 with a component larger than `ℓ` left.
    ZeroBudget,
    /// The LP-guided search found no reducible pair on `≥ 2ℓk` vertices.
    NoReduciblePair,
    /// The LP optimum exceeded the budget.
    LpBound,
    /// A reducible pair needed more than the remaining budget.
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub x: VertexSet,
    pub y: VertexSet,
    pub k_before: usize,
    pub k_after: usize,
    pub lp_objective: BigRational,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub instance: CocInstance,
    pub verdict: Verdict,
    pub no_reason: Option<NoReason>,
    pub trace: Vec<ReductionStep>,
    /// LP optimum of every search round, including a final unsuccessful one.
    pub lp_objectives: Vec<BigRational>,
    /// Vertices dropped as parts of components with at most `ℓ` vertices.
    pub discarded: VertexSet,
}

impl KernelResult {
    /// Turns a solution of the kernel into one of the original instance by
    /// adding every reduced `X`.
    pub fn lift_solution(&self, kernel_solution: &VertexSet) -> VertexSet {
        let mut s = kernel_solution.clone();
        for step in &self.trace {
            s.extend(step.x.iter().copied());
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelConfig {
    /// Stop with a no-instance as soon as the LP optimum exceeds `k`. The LP
    /// is a lower bound on the optimum, so this never changes the answer; it
    /// only skips the fix-one probes on hopeless instances.
    pub lp_bound_cutoff: bool,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            lp_bound_cutoff: true,
        }
    }
}

impl KernelConfig {
    /// Only the reducible-pair search, without the LP bound shortcut.
    pub fn pairs_only() -> Self {
        Self {
            lp_bound_cutoff: false,
        }
    }
}

/// Removes components with at most `ℓ` vertices; they never need deletions.
fn drop_small_components(g: &Graph, ell: usize, discarded: &mut VertexSet) -> Graph {
    let small: VertexSet = g
        .connected_components()
        .into_iter()
        .filter(|c| c.len() <= ell)
        .flatten()
        .collect();
    discarded.extend(small.iter().copied());
    g.remove_vertices(&small)
}

pub fn kernelize(inst: &CocInstance) -> Result<KernelResult> {
    kernelize_with(inst, &KernelConfig::default())
}

/// Reduces `inst` to an equivalent instance with at most `2ℓk` vertices, or
/// to the trivial no-instance.
pub fn kernelize_with(inst: &CocInstance, config: &KernelConfig) -> Result<KernelResult> {
    if inst.ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let ell = inst.ell;
    let mut result = KernelResult {
        instance: inst.clone(),
        verdict: Verdict::Reduced,
        no_reason: None,
        trace: Vec::new(),
        lp_objectives: Vec::new(),
        discarded: VertexSet::new(),
    };
    let mut cur = inst.clone();
    let finish_no = |mut result: KernelResult, reason| {
        result.instance = CocInstance::trivial_no(ell);
        result.verdict = Verdict::TrivialNo;
        result.no_reason = Some(reason);
        Ok(result)
    };

    loop {
        cur.graph = drop_small_components(&cur.graph, ell, &mut result.discarded);
        if cur.graph.is_empty() {
            break;
        }
        if cur.k == 0 {
            return finish_no(result, NoReason::ZeroBudget);
        }
        if cur.graph.num_vertices() < cur.size_bound() {
            break;
        }
        let budget = config.lp_bound_cutoff.then_some(cur.k);
        let search = search_reducible_pair(&cur, budget)?;
        result.lp_objectives.push(search.lp_objective.clone());
        if search.exceeded_budget {
            return finish_no(result, NoReason::LpBound);
        }
        let Some(pair) = search.pair else {
            return finish_no(result, NoReason::NoReduciblePair);
        };
        if pair.x.len() > cur.k {
            return finish_no(result, NoReason::BudgetExhausted);
        }
        let next = apply_reduction(&cur, &pair);
        result.trace.push(ReductionStep {
            x: pair.x,
            y: pair.y,
            k_before: cur.k,
            k_after: next.k,
            lp_objective: search.lp_objective,
        });
        cur = next;
    }
    result.instance = cur;
    Ok(result)
}

/// Outcome of [`verify_kernel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub original_answer: bool,
    pub kernel_answer: bool,
    /// A reduced kernel has at most `2ℓk'` vertices with `k' ≤ k`; a no
    /// verdict is the canonical trivial no-instance.
    pub size_ok: bool,
}

impl KernelCheck {
    pub fn agree(&self) -> bool {
        self.original_answer == self.kernel_answer
    }

    pub fn passed(&self) -> bool {
        self.agree() && self.size_ok
    }
}

/// Solves the original and the kernel by brute force and checks the size
/// bound. Refuses instances above `cap`.
pub fn verify_kernel(
    original: &CocInstance,
    result: &KernelResult,
    cap: usize,
) -> Result<KernelCheck> {
    let original_answer = brute_force_solve(original, cap)?.answer;
    let kernel_answer = brute_force_solve(&result.instance, cap)?.answer;
    let size_ok = match result.verdict {
        Verdict::Reduced => {
            result.instance.graph.num_vertices() <= result.instance.size_bound()
                && result.instance.k <= original.k
        }
        Verdict::TrivialNo => result.instance.is_trivial_no(),
    };
    Ok(KernelCheck {
        original_answer,
        kernel_answer,
        size_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::DEFAULT_BRUTE_FORCE_CAP;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn component_graph_of_star() {
        let cg = build_component_graph(&star(4), &set(&[0]), &set(&[1, 2, 3, 4])).unwrap();
        assert_eq!(cg.components.len(), 4);
        assert!(cg.weight.values().all(|&w| w == 1));
        assert_eq!(cg.bipartite.num_edges(), 4);
    }

    #[test]
    fn component_graph_weights() {
        // v=0 adjacent to a P2 {1,2} and a K1 {3}.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let cg = build_component_graph(&g, &set(&[0]), &set(&[1, 2, 3])).unwrap();
        assert_eq!(cg.weight.values().copied().collect::<Vec<_>>(), vec![2, 1]);
        let empty = build_component_graph(&g, &set(&[0]), &set(&[])).unwrap();
        assert_eq!(empty.bipartite.len_b(), 0);
        assert!(build_component_graph(&g, &set(&[0]), &set(&[0, 1])).is_err());
    }

    #[test]
    fn pair_in_star() {
        let inst = CocInstance::new(star(4), 1, 1).unwrap();
        let pair = find_reducible_pair_in(&inst, &set(&[0]), &set(&[1, 2, 3, 4]))
            .unwrap()
            .unwrap();
        assert_eq!(pair.x, set(&[0]));
        assert!(!pair.y.is_empty());
        pair.validate(&inst.graph, 1).unwrap();
        assert!(find_reducible_pair_in(&inst, &set(&[0]), &set(&[]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn pair_needs_enough_weight() {
        // Two centers sharing three leaves, ell = 2: needs 3 per center.
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let inst = CocInstance::new(g, 2, 2).unwrap();
        assert!(
            find_reducible_pair_in(&inst, &set(&[0, 1]), &set(&[2, 3, 4]))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn components_leaking_outside_a_are_ignored() {
        // Leaf 2 also touches vertex 3, which is outside A.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        let inst = CocInstance::new(g, 1, 1).unwrap();
        let pair = find_reducible_pair_in(&inst, &set(&[0]), &set(&[1, 2]))
            .unwrap()
            .unwrap();
        assert_eq!(pair.y, set(&[1]));
    }

    #[test]
    fn partition_of_star() {
        let inst = CocInstance::new(star(4), 1, 1).unwrap();
        let pair = find_reducible_pair_in(&inst, &set(&[0]), &set(&[1, 2, 3, 4]))
            .unwrap()
            .unwrap();
        let wp = witness_partition(&inst, &pair).unwrap();
        assert!(wp.is_valid_for(&inst.graph, &pair, 1));
        assert_eq!(wp.parts[&0].len(), pair.y.len() + 1);
    }

    #[test]
    fn reduction_and_budget() {
        let inst = CocInstance::new(star(4), 1, 1).unwrap();
        let pair = find_reducible_pair_in(&inst, &set(&[0]), &set(&[1, 2, 3, 4]))
            .unwrap()
            .unwrap();
        let reduced = apply_reduction(&inst, &pair);
        assert_eq!(reduced.k, 0);
        let broke = CocInstance::new(star(4), 1, 0).unwrap();
        assert!(apply_reduction(&broke, &pair).is_trivial_no());
    }

    #[test]
    fn lp_search_star_and_triangle() {
        let inst = CocInstance::new(star(4), 1, 1).unwrap();
        let s = find_reducible_pair_lp(&inst).unwrap();
        assert_eq!(s.lp_objective, BigRational::from_integer(1.into()));
        assert_eq!(s.pair.unwrap().x, set(&[0]));

        let inst = CocInstance::new(triangle(), 1, 1).unwrap();
        let s = find_reducible_pair_lp(&inst).unwrap();
        assert!(s.pair.is_none());
        assert_eq!(s.probes, 3);

        let inst = CocInstance::new(Graph::from_edges(3, &[]).unwrap(), 1, 1).unwrap();
        assert!(find_reducible_pair_lp(&inst).unwrap().pair.is_none());
    }

    #[test]
    fn kernelize_star() {
        let inst = CocInstance::new(star(4), 1, 1).unwrap();
        let res = kernelize(&inst).unwrap();
        assert_eq!(res.verdict, Verdict::Reduced);
        assert!(res.instance.graph.is_empty());
        assert_eq!(res.instance.k, 0);
        assert_eq!(res.lift_solution(&VertexSet::new()), set(&[0]));
        assert!(verify_kernel(&inst, &res, DEFAULT_BRUTE_FORCE_CAP)
            .unwrap()
            .passed());
    }

    #[test]
    fn kernelize_two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for config in [KernelConfig::default(), KernelConfig::pairs_only()] {
            let inst = CocInstance::new(g.clone(), 1, 1).unwrap();
            let res = kernelize_with(&inst, &config).unwrap();
            assert!(res.instance.graph.num_vertices() <= 2);
            assert!(verify_kernel(&inst, &res, DEFAULT_BRUTE_FORCE_CAP)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn small_instance_only_preprocessed() {
        // P3 plus a separate edge, ell = 2: the edge is dropped, 3 < 2ℓk.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let inst = CocInstance::new(g, 2, 3).unwrap();
        let res = kernelize(&inst).unwrap();
        assert_eq!(res.instance.graph.vertex_set(), set(&[0, 1, 2]));
        assert_eq!(res.discarded, set(&[3, 4]));
        assert!(res.trace.is_empty());
    }

    #[test]
    fn corrupted_trace_fails_verification() {
        // Two disjoint K_{1,3}, ell = 1, k = 1: needs two deletions.
        let edges = [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)];
        let g = Graph::from_edges(8, &edges).unwrap();
        let inst = CocInstance::new(g.clone(), 1, 1).unwrap();
        let honest = kernelize(&inst).unwrap();
        assert!(verify_kernel(&inst, &honest, DEFAULT_BRUTE_FORCE_CAP)
            .unwrap()
            .passed());

        let mut corrupted = honest.clone();
        corrupted.verdict = Verdict::Reduced;
        corrupted.instance = CocInstance {
            graph: g.remove_vertices(&set(&[0, 1, 2, 3])),
            ell: 1,
            k: 1,
        };
        assert!(!verify_kernel(&inst, &corrupted, DEFAULT_BRUTE_FORCE_CAP)
            .unwrap()
            .passed());
    }

    #[test]
    fn zero_budget() {
        let inst = CocInstance::new(triangle(), 1, 0).unwrap();
        let res = kernelize(&inst).unwrap();
        assert_eq!(res.verdict, Verdict::TrivialNo);
        assert_eq!(res.no_reason, Some(NoReason::ZeroBudget));
        let inst = CocInstance::new(triangle(), 3, 0).unwrap();
        assert!(kernelize(&inst).unwrap().instance.graph.is_empty());
    }
}
