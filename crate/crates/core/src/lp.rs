//! The covering LP of ℓ-COC and an exact rational simplex solver.
//!
//! ```text
//! minimize    Σ_v x_v
//! subject to  Σ_{v ∈ C} x_v ≥ 1   for every connected set C with |C| = ℓ + 1
//!             0 ≤ x_v ≤ 1
//! ```
//!
//! The solver runs the primal simplex method (Dantzig pricing, Bland's rule
//! after a run of degenerate pivots) on the dual
//! packing LP `max Σ y_C  s.t.  Σ_{C ∋ v} y_C ≤ 1, y ≥ 0`, whose slack basis
//! is feasible from the start and whose row count is the number of vertices.
//! The simplex multipliers of an optimal dual basis are an optimal basic
//! solution of the covering LP. Upper bounds `x_v ≤ 1` never bind at an
//! optimum (lowering a value above 1 keeps every constraint satisfied), so
//! they need no rows of their own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    variables: VertexSet,
    constraints: Vec<VertexSet>,
    fixed: BTreeMap<VertexId, bool>,
}

impl LpInstance {
    /// Covering LP over `variables`; duplicate constraints are dropped.
    pub fn new(variables: VertexSet, constraints: Vec<VertexSet>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(constraints.len());
        for c in constraints {
            if c.is_empty() {
                return Err(Error::Infeasible("empty covering constraint".into()));
            }
            if let Some(&v) = c.iter().find(|v| !variables.contains(v)) {
                return Err(Error::UnknownVertex(v));
            }
            if seen.insert(c.clone()) {
                kept.push(c);
            }
        }
        Ok(Self {
            variables,
            constraints: kept,
            fixed: BTreeMap::new(),
        })
    }

    pub fn variables(&self) -> &VertexSet {
        &self.variables
    }

    pub fn constraints(&self) -> &[VertexSet] {
        &self.constraints
    }

    pub fn fixed(&self) -> &BTreeMap<VertexId, bool> {
        &self.fixed
    }

    /// Adds the equality `x_v = value`.
    pub fn with_fixed(&self, v: VertexId, value: bool) -> Result<Self> {
        if !self.variables.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut out = self.clone();
        out.fixed.insert(v, value);
        Ok(out)
    }

    /// One constraint per line, as space-separated sorted ids shifted by
    /// `offset` (1 for file-style ids).
    pub fn dump(&self, offset: usize) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            let line: Vec<String> = c.iter().map(|v| (v + offset).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub values: BTreeMap<VertexId, BigRational>,
    pub objective: BigRational,
}

impl LpSolution {
    pub fn value(&self, v: VertexId) -> BigRational {
        self.values
            .get(&v)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact check of bounds, covering constraints and fixings.
    pub fn is_feasible_for(&self, inst: &LpInstance) -> bool {
        let one = BigRational::one();
        let bounds = inst
            .variables
            .iter()
            .all(|&v| (BigRational::zero()..=one.clone()).contains(&self.value(v)));
        let covers = inst
            .constraints
            .iter()
            .all(|c| c.iter().map(|&v| self.value(v)).sum::<BigRational>() >= one);
        let fixings = inst
            .fixed
            .iter()
            .all(|(&v, &b)| self.value(v) == if b { one.clone() } else { BigRational::zero() });
        let total: BigRational = self.values.values().cloned().sum();
        bounds && covers && fixings && total == self.objective
    }
}

/// The LP with one constraint per connected set of `ell + 1` vertices.
///
/// Writing it down costs `n^O(ℓ)`, which dominates the kernelization.
pub fn build_coc_lp(g: &Graph, ell: usize) -> Result<LpInstance> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    LpInstance::new(g.vertex_set(), g.enumerate_connected_sets(ell + 1))
}

/// `(A, B)`: the variables at exactly 1 and at exactly 0.
pub fn ones_and_zeros(sol: &LpSolution) -> (VertexSet, VertexSet) {
    let mut ones = VertexSet::new();
    let mut zeros = VertexSet::new();
    for (&v, x) in &sol.values {
        if x.is_one() {
            ones.insert(v);
        } else if x.is_zero() {
            zeros.insert(v);
        }
    }
    (ones, zeros)
}

/// Optimum subject to `x_v = 1`, by fixing the variable directly.
pub fn solve_with_fixed_one(inst: &LpInstance, v: VertexId) -> Result<LpSolution> {
    solve_lp(&inst.with_fixed(v, true)?)
}

/// Exact optimal basic solution of a covering LP.
pub fn solve_lp(inst: &LpInstance) -> Result<LpSolution> {
    // Fixed variables leave the LP: a 1 satisfies every constraint containing
    // it, a 0 drops out of its constraints.
    let mut residual: Vec<Vec<VertexId>> = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &inst.constraints {
        if c.iter().any(|v| inst.fixed.get(v) == Some(&true)) {
            continue;
        }
        let rest: Vec<VertexId> = c
            .iter()
            .copied()
            .filter(|v| !inst.fixed.contains_key(v))
            .collect();
        if rest.is_empty() {
            return Err(Error::Infeasible(format!(
                "constraint {c:?} has every variable fixed to 0"
            )));
        }
        if seen.insert(rest.clone()) {
            residual.push(rest);
        }
    }

    let rows: Vec<VertexId> = residual
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let row_of: BTreeMap<VertexId, usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let columns: Vec<Vec<usize>> = residual
        .iter()
        .map(|c| c.iter().map(|v| row_of[v]).collect())
        .collect();

    let prices = PackingSimplex::new(rows.len(), columns).solve();

    let mut values: BTreeMap<VertexId, BigRational> = inst
        .variables
        .iter()
        .map(|&v| (v, BigRational::zero()))
        .collect();
    for (&v, &b) in &inst.fixed {
        if b {
            values.insert(v, BigRational::one());
        }
    }
    for (i, &v) in rows.iter().enumerate() {
        values.insert(v, prices[i].clone());
    }
    let objective = values.values().cloned().sum();
    Ok(LpSolution { values, objective })
}

/// Revised simplex on `max 1·y  s.t.  A y ≤ 1, y ≥ 0` with a dense explicit
/// basis inverse. Columns `0..m` are the constraint columns, `m..m + rows`
/// the slacks.
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_LIMIT: usize = 50;

struct PackingSimplex {
    rows: usize,
    columns: Vec<Vec<usize>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<BigRational>>,
    beta: Vec<BigRational>,
}

impl PackingSimplex {
    fn new(rows: usize, columns: Vec<Vec<usize>>) -> Self {
        let m = columns.len();
        let mut is_basic = vec![false; m + rows];
        is_basic[m..].iter_mut().for_each(|b| *b = true);
        let binv = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            rows,
            basis: (m..m + rows).collect(),
            is_basic,
            binv,
            beta: vec![BigRational::one(); rows],
            columns,
        }
    }

    /// Simplex multipliers `π = c_B B⁻¹`.
    fn prices(&self) -> Vec<BigRational> {
        let mut pi = vec![BigRational::zero(); self.rows];
        for (i, &col) in self.basis.iter().enumerate() {
            if col >= self.columns.len() {
                continue;
            }
            for (r, p) in pi.iter_mut().enumerate() {
                if !self.binv[i][r].is_zero() {
                    *p += &self.binv[i][r];
                }
            }
        }
        pi
    }

    /// `B⁻¹ a_col`.
    fn column(&self, col: usize) -> Vec<BigRational> {
        let m = self.columns.len();
        (0..self.rows)
            .map(|i| {
                if col < m {
                    self.columns[col].iter().map(|&r| &self.binv[i][r]).sum()
                } else {
                    self.binv[i][col - m].clone()
                }
            })
            .collect()
    }

    /// Largest reduced cost (Dantzig), or with `bland` the first improving
    /// column. Ties go to the lowest index.
    fn entering(&self, pi: &[BigRational], bland: bool) -> Option<usize> {
        let m = self.columns.len();
        let scaled = ScaledPrices::new(pi);
        let one = BigRational::one();
        let mut best: Option<(usize, BigRational)> = None;
        let mut best_scaled: Option<(usize, i128)> = None;
        for (j, col) in self.columns.iter().enumerate() {
            if self.is_basic[j] {
                continue;
            }
            if let Some(s) = &scaled {
                let gain = s.denom - s.cover(col);
                if gain > 0 && best_scaled.is_none_or(|(_, g)| gain > g) {
                    if bland {
                        return Some(j);
                    }
                    best_scaled = Some((j, gain));
                }
            } else {
                let gain = &one - col.iter().map(|&r| &pi[r]).sum::<BigRational>();
                if gain.is_positive() && best.as_ref().is_none_or(|(_, g)| gain > *g) {
                    if bland {
                        return Some(j);
                    }
                    best = Some((j, gain));
                }
            }
        }
        if let (Some(s), Some((j, g))) = (&scaled, best_scaled) {
            best = Some((j, BigRational::new(g.into(), s.denom.into())));
        }
        for (r, p) in pi.iter().enumerate() {
            if self.is_basic[m + r] || !p.is_negative() {
                continue;
            }
            let gain = -p.clone();
            if bland {
                return Some(m + r);
            }
            if best.as_ref().is_none_or(|(_, g)| gain > *g) {
                best = Some((m + r, gain));
            }
        }
        best.map(|(j, _)| j)
    }

    fn solve(mut self) -> Vec<BigRational> {
        let mut degenerate_run = 0;
        loop {
            let pi = self.prices();
            let Some(enter) = self.entering(&pi, degenerate_run >= DEGENERATE_LIMIT) else {
                return pi;
            };
            let alpha = self.column(enter);
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, a) in alpha.iter().enumerate() {
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.beta[i] / a;
                let better = match &leave {
                    None => true,
                    Some((p, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*p])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Every y_C is bounded by its rows, so the ratio test never fails.
            let (p, step) = leave.expect("packing LP is bounded");
            if step.is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(p, enter, &alpha);
        }
    }

    fn pivot(&mut self, p: usize, enter: usize, alpha: &[BigRational]) {
        let piv = alpha[p].clone();
        for x in self.binv[p].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        self.beta[p] = &self.beta[p] / &piv;
        let pivot_row = self.binv[p].clone();
        let pivot_beta = self.beta[p].clone();
        for (i, factor) in alpha.iter().enumerate() {
            if i == p || factor.is_zero() {
                continue;
            }
            for (x, y) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= factor * y;
                }
            }
            self.beta[i] = &self.beta[i] - factor * &pivot_beta;
        }
        self.is_basic[self.basis[p]] = false;
        self.is_basic[enter] = true;
        self.basis[p] = enter;
    }
}

/// Prices over a common denominator as machine integers, for fast pricing of
/// the (many) constraint columns. Absent when the numbers do not fit.
struct ScaledPrices {
    denom: i128,
    numer: Vec<i128>,
}

impl ScaledPrices {
    fn new(pi: &[BigRational]) -> Option<Self> {
        let mut denom = BigInt::one();
        for p in pi {
            denom = denom.lcm(p.denom());
        }
        let numer = pi
            .iter()
            .map(|p| (p.numer() * (&denom / p.denom())).to_i128())
            .collect::<Option<Vec<_>>>()?;
        let denom = denom.to_i128()?;
        // Keep sums of a few terms well inside i128.
        let limit = i128::MAX >> 16;
        if denom > limit || numer.iter().any(|n| n.abs() > limit) {
            return None;
        }
        Some(Self { denom, numer })
    }

    fn cover(&self, col: &[usize]) -> i128 {
        col.iter().map(|&r| self.numer[r]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn constraint_counts() {
        assert_eq!(build_coc_lp(&triangle(), 1).unwrap().constraints().len(), 3);
        let p4 = build_coc_lp(&path(4), 2).unwrap();
        assert_eq!(p4.constraints(), &[set(&[0, 1, 2]), set(&[1, 2, 3])]);
        assert!(build_coc_lp(&path(2), 2).unwrap().constraints().is_empty());
        assert!(build_coc_lp(&path(2), 0).is_err());
    }

    #[test]
    fn single_edge() {
        let inst = build_coc_lp(&path(2), 1).unwrap();
        let sol = solve_lp(&inst).unwrap();
        assert_eq!(sol.objective, q(1, 1));
        assert!(sol.is_feasible_for(&inst));
        let fixed = solve_with_fixed_one(&inst, 0).unwrap();
        assert_eq!(fixed.objective, q(1, 1));
    }

    #[test]
    fn triangle_is_three_halves() {
        let inst = build_coc_lp(&triangle(), 1).unwrap();
        let sol = solve_lp(&inst).unwrap();
        assert_eq!(sol.objective, q(3, 2));
        assert!(sol.is_feasible_for(&inst));
        assert_eq!(ones_and_zeros(&sol), (set(&[]), set(&[])));
        let fixed = solve_with_fixed_one(&inst, 0).unwrap();
        assert_eq!(fixed.objective, q(2, 1));
        assert!(fixed.is_feasible_for(&inst.with_fixed(0, true).unwrap()));
    }

    #[test]
    fn fixing_a_free_vertex_adds_one() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let inst = build_coc_lp(&g, 1).unwrap();
        let base = solve_lp(&inst).unwrap().objective;
        assert_eq!(
            solve_with_fixed_one(&inst, 2).unwrap().objective,
            base + q(1, 1)
        );
        assert!(matches!(
            solve_with_fixed_one(&inst, 7),
            Err(Error::UnknownVertex(7))
        ));
    }

    #[test]
    fn fixing_to_zero_can_be_infeasible() {
        let inst = build_coc_lp(&path(2), 1).unwrap();
        let inst = inst
            .with_fixed(0, false)
            .unwrap()
            .with_fixed(1, false)
            .unwrap();
        assert!(matches!(solve_lp(&inst), Err(Error::Infeasible(_))));
    }

    #[test]
    fn ones_and_zeros_split() {
        let sol = LpSolution {
            values: [(0, q(1, 1)), (1, q(1, 2)), (2, q(0, 1))].into(),
            objective: q(3, 2),
        };
        assert_eq!(ones_and_zeros(&sol), (set(&[0]), set(&[2])));
        let integral = LpSolution {
            values: [(0, q(1, 1)), (1, q(0, 1)), (2, q(0, 1))].into(),
            objective: q(1, 1),
        };
        assert_eq!(ones_and_zeros(&integral), (set(&[0]), set(&[1, 2])));
    }

    #[test]
    fn dump_format() {
        let inst = build_coc_lp(&path(4), 2).unwrap();
        assert_eq!(inst.dump(1), "1 2 3\n2 3 4\n");
    }

    #[test]
    fn deterministic() {
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 0),
                (1, 4),
            ],
        )
        .unwrap();
        let inst = build_coc_lp(&g, 2).unwrap();
        assert_eq!(solve_lp(&inst).unwrap(), solve_lp(&inst).unwrap());
    }
}
