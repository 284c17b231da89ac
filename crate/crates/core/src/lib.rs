//! Kernelization for ℓ-Component Order Connectivity (ℓ-COC): given a graph `G`
//! and a budget `k`, decide whether deleting at most `k` vertices leaves only
//! connected components with at most `ℓ` vertices.
//!
//! The kernel shrinks any instance to at most `2ℓk` vertices. It is driven by an
//! exact rational LP relaxation over all connected sets of size `ℓ + 1`, which
//! exposes *reducible pairs* `(X, Y)`: `X` can always be taken into a solution
//! and `Y` discarded. Reducible pairs are certified by weighted expansions in the
//! bipartite graph between `X` and the components of `G[Y]`.
//!
//! Module map:
//!
//! * [`graph`]: undirected graphs, components, connected-set enumeration.
//! * [`bipartite`]: bipartite graphs, maximum matching, Hall violators, twin graphs.
//! * [`allocation`]: splitting/unsplitting item allocations and their rounding.
//! * [`expansion`]: classic and weighted q-expansions.
//! * [`lp`]: the covering LP and an exact simplex solver.
//! * [`kernel`]: component graphs, reducible pairs and the kernelization loop.
//! * [`solvers`]: exact exhaustive and branching solvers used as oracles.
//! * [`generate`]: seeded random graph families.
//! * [`cli`]: instance files, reports and the `coc` command implementations.

pub mod allocation;
pub mod bipartite;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod lp;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use kernel::{kernelize, CocInstance, KernelConfig, KernelResult, Verdict};
