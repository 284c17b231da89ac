//! Instance files, JSON reports and the `coc` subcommands.
//!
//! Instance format (1-based vertex ids):
//!
//! ```text
//! c optional comment lines
//! p coc <n> <m>
//! l <ell>        (optional)
//! k <k>          (optional)
//! e <u> <v>      (m lines)
//! ```
//!
//! [`InstanceFile::emit`] writes the canonical form: header, `l`, `k`, then the
//! edges sorted with `u < v`. Parsing canonical output and emitting again
//! reproduces it byte for byte.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{erdos_renyi, gadgets};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::kernel::{kernelize, verify_kernel, CocInstance, KernelResult, NoReason, Verdict};
use crate::lp::{build_coc_lp, solve_lp};
use crate::solvers::{
    branching_solve_with_stats, brute_force_solve, SolveOutcome, DEFAULT_BRUTE_FORCE_CAP,
};

pub const REPORT_SCHEMA: &str = "coc-kernel-report/1";
pub const SOLVE_SCHEMA: &str = "coc-solve/1";
pub const VERIFY_SCHEMA: &str = "coc-verify/1";
pub const LP_SCHEMA: &str = "coc-lp/1";

/// Exit status: yes / success.
pub const EXIT_OK: i32 = 0;
/// Exit status: no / failed check.
pub const EXIT_NO: i32 = 1;
/// Exit status: parse, parameter or cap error.
pub const EXIT_ERROR: i32 = 2;

/// A parsed instance file. The graph has vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub ell: Option<usize>,
    pub k: Option<usize>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} is not a non-negative integer: {tok:?}"),
        )
    })
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut graph = Graph::new();
        let mut ell = None;
        let mut k = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let toks: Vec<&str> = raw.split_ascii_whitespace().collect();
            let Some(&kind) = toks.first() else {
                continue;
            };
            if kind == "c" {
                continue;
            }
            if kind == "p" {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if toks.len() != 4 || toks[1] != "coc" {
                    return Err(parse_err(line, "expected `p coc <n> <m>`"));
                }
                let n = parse_number(toks[2], line, "vertex count")?;
                let m = parse_number(toks[3], line, "edge count")?;
                (0..n).for_each(|v| graph.add_vertex(v));
                header = Some((n, m));
                continue;
            }
            let Some((n, _)) = header else {
                return Err(parse_err(line, "missing `p coc` header before data lines"));
            };
            match kind {
                "e" => {
                    if toks.len() != 3 {
                        return Err(parse_err(line, "expected `e <u> <v>`"));
                    }
                    let u = parse_number(toks[1], line, "vertex id")?;
                    let v = parse_number(toks[2], line, "vertex id")?;
                    for id in [u, v] {
                        if id == 0 || id > n {
                            return Err(parse_err(line, format!("vertex id {id} outside 1..={n}")));
                        }
                    }
                    if u == v {
                        return Err(parse_err(line, format!("self-loop on vertex {u}")));
                    }
                    if graph.has_edge(u - 1, v - 1) {
                        return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                    }
                    graph.add_edge(u - 1, v - 1)?;
                }
                "l" | "k" => {
                    if toks.len() != 2 {
                        return Err(parse_err(line, format!("expected `{kind} <value>`")));
                    }
                    let value = parse_number(toks[1], line, "parameter")?;
                    let slot = if kind == "l" { &mut ell } else { &mut k };
                    if slot.replace(value).is_some() {
                        return Err(parse_err(line, format!("duplicate `{kind}` line")));
                    }
                    if kind == "l" && value == 0 {
                        return Err(parse_err(line, "ell must be at least 1"));
                    }
                }
                other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
            }
        }
        let last = text.lines().count();
        let Some((_, m)) = header else {
            return Err(parse_err(last, "missing `p coc` header"));
        };
        if graph.num_edges() != m {
            return Err(parse_err(
                last,
                format!("header declares {m} edges, found {}", graph.num_edges()),
            ));
        }
        Ok(Self { graph, ell, k })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Canonical text. Vertices are numbered by rank, so a graph with
    /// arbitrary ids is written as if compacted.
    pub fn emit(&self) -> String {
        let rank: std::collections::BTreeMap<VertexId, usize> = self
            .graph
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, i + 1))
            .collect();
        let mut edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .map(|(u, v)| (rank[&u], rank[&v]))
            .collect();
        edges.sort_unstable();
        let mut s = format!("p coc {} {}\n", self.graph.num_vertices(), edges.len());
        if let Some(ell) = self.ell {
            s += &format!("l {ell}\n");
        }
        if let Some(k) = self.k {
            s += &format!("k {k}\n");
        }
        for (u, v) in edges {
            s += &format!("e {u} {v}\n");
        }
        s
    }

    /// The instance with its vertices renumbered `0..n` in ascending order,
    /// and the map from new ids to old ones.
    pub fn compact(inst: &CocInstance) -> (Self, Vec<VertexId>) {
        let map: Vec<VertexId> = inst.graph.vertices().collect();
        let index: std::collections::BTreeMap<VertexId, usize> =
            map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<_> = inst
            .graph
            .edges()
            .map(|(u, v)| (index[&u], index[&v]))
            .collect();
        let graph = Graph::from_edges(map.len(), &edges).expect("edges of a valid graph");
        let file = Self {
            graph,
            ell: Some(inst.ell),
            k: Some(inst.k),
        };
        (file, map)
    }

    /// Flags take precedence over `l` / `k` lines.
    pub fn instance(&self, ell: Option<usize>, k: Option<usize>) -> Result<CocInstance> {
        let ell = ell
            .or(self.ell)
            .ok_or_else(|| Error::InvalidParameter("ell not given by flag or `l` line".into()))?;
        let k = k
            .or(self.k)
            .ok_or_else(|| Error::InvalidParameter("k not given by flag or `k` line".into()))?;
        CocInstance::new(self.graph.clone(), ell, k)
    }
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSize {
    pub vertices: usize,
    pub edges: usize,
}

impl GraphSize {
    fn of(g: &Graph) -> Self {
        Self {
            vertices: g.num_vertices(),
            edges: g.num_edges(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportVerdict {
    Reduced,
    TrivialNo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportNoReason {
    ZeroBudget,
    NoReduciblePair,
    LpBound,
    BudgetExhausted,
}

impl From<NoReason> for ReportNoReason {
    fn from(r: NoReason) -> Self {
        match r {
            NoReason::ZeroBudget => Self::ZeroBudget,
            NoReason::NoReduciblePair => Self::NoReduciblePair,
            NoReason::LpBound => Self::LpBound,
            NoReason::BudgetExhausted => Self::BudgetExhausted,
        }
    }
}

/// One applied reduction. Vertex ids are 1-based ids of the input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x_size: usize,
    pub y_size: usize,
    pub k_before: usize,
    pub k_after: usize,
    pub lp_objective: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub schema: String,
    pub ell: usize,
    pub k: usize,
    pub original: GraphSize,
    pub kernel: GraphSize,
    pub kernel_k: usize,
    pub verdict: ReportVerdict,
    pub no_reason: Option<ReportNoReason>,
    pub steps: Vec<StepReport>,
    /// LP optimum of every search round, as exact fractions.
    pub lp_objectives: Vec<String>,
    /// Vertices removed as parts of components with at most `ℓ` vertices.
    pub discarded: Vec<usize>,
    /// Kernel file vertex `i` is input vertex `vertex_map[i - 1]`. Empty for
    /// the trivial no-instance, which shares no vertices with the input.
    pub vertex_map: Vec<usize>,
}

impl KernelReport {
    pub fn new(original: &CocInstance, result: &KernelResult) -> Self {
        let ratio = |r: &BigRational| r.to_string();
        let vertex_map = match result.verdict {
            Verdict::Reduced => result.instance.graph.vertices().map(|v| v + 1).collect(),
            Verdict::TrivialNo => Vec::new(),
        };
        Self {
            schema: REPORT_SCHEMA.into(),
            ell: original.ell,
            k: original.k,
            original: GraphSize::of(&original.graph),
            kernel: GraphSize::of(&result.instance.graph),
            kernel_k: result.instance.k,
            verdict: match result.verdict {
                Verdict::Reduced => ReportVerdict::Reduced,
                Verdict::TrivialNo => ReportVerdict::TrivialNo,
            },
            no_reason: result.no_reason.map(Into::into),
            steps: result
                .trace
                .iter()
                .map(|s| StepReport {
                    x: one_based(&s.x),
                    y: one_based(&s.y),
                    x_size: s.x.len(),
                    y_size: s.y.len(),
                    k_before: s.k_before,
                    k_after: s.k_after,
                    lp_objective: ratio(&s.lp_objective),
                })
                .collect(),
            lp_objectives: result.lp_objectives.iter().map(ratio).collect(),
            discarded: one_based(&result.discarded),
            vertex_map,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: String,
    pub engine: Engine,
    pub answer: bool,
    pub witness: Option<Vec<usize>>,
    /// Search tree leaves (branching engine only).
    pub leaves: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub seed: Option<u64>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpReport {
    pub schema: String,
    pub ell: usize,
    pub constraints: Vec<Vec<usize>>,
    pub objective: String,
    /// `x_v` for `v = 1..=n`.
    pub values: Vec<String>,
}

#[derive(Parser, Debug)]
#[command(
    name = "coc",
    version,
    about = "Kernelize and solve l-Component Order Connectivity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce an instance to at most 2*ell*k vertices.
    Kernelize(KernelizeArgs),
    /// Decide an instance exactly. Exit 0 = yes, 1 = no, 2 = error.
    Solve(SolveArgs),
    /// Kernelize, solve original and kernel by brute force, compare.
    Verify(VerifyArgs),
    /// Print the covering LP, one constraint per line.
    DumpLp(DumpLpArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    /// Maximum component size (overrides an `l` line).
    #[arg(long)]
    pub ell: Option<usize>,
    /// Deletion budget (overrides a `k` line).
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct KernelizeArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Kernel instance file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON report file (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Brute,
    Branch,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Engine::Branch)]
    pub engine: Engine,
    /// Vertex limit of the brute-force engine.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(required_unless_present = "count", conflicts_with = "count")]
    pub path: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    pub cap: usize,
    /// Batch mode: verify this many random instances.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DumpLpArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Also solve the LP and write constraints, optimum and values.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn write_json<T: Serialize>(path: &Path, value: &T, out: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    if path.as_os_str() == "-" {
        out.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}

/// Runs a command and returns its exit status. Errors are printed to stderr.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let status = match cli.command {
        Command::Kernelize(a) => cmd_kernelize(&a, out),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::DumpLp(a) => cmd_dump_lp(&a, out),
    };
    status.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_ERROR
    })
}

pub fn cmd_kernelize(a: &KernelizeArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = InstanceFile::read(&a.path)?.instance(a.params.ell, a.params.k)?;
    let result = kernelize(&inst)?;
    let (file, _) = InstanceFile::compact(&result.instance);
    let report = KernelReport::new(&inst, &result);
    match &a.output {
        Some(path) => {
            fs::write(path, file.emit())?;
            writeln!(
                out,
                "{}: {} -> {} vertices, k {} -> {}, {} reductions",
                serde_json::to_value(report.verdict)?
                    .as_str()
                    .unwrap_or_default(),
                report.original.vertices,
                report.kernel.vertices,
                report.k,
                report.kernel_k,
                report.steps.len()
            )?;
        }
        None => out.write_all(file.emit().as_bytes())?,
    }
    if let Some(path) = &a.json {
        write_json(path, &report, out)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = InstanceFile::read(&a.path)?.instance(a.params.ell, a.params.k)?;
    let (outcome, leaves): (SolveOutcome, Option<u64>) = match a.engine {
        Engine::Brute => (brute_force_solve(&inst, a.cap)?, None),
        Engine::Branch => {
            let (o, stats) = branching_solve_with_stats(&inst);
            (o, Some(stats.leaves))
        }
    };
    let witness = outcome.witness.as_ref().map(one_based);
    if outcome.answer {
        writeln!(out, "yes")?;
        let ids: Vec<String> = witness.iter().flatten().map(|v| v.to_string()).collect();
        writeln!(out, "witness: {}", ids.join(" "))?;
    } else {
        writeln!(out, "no")?;
    }
    if let Some(path) = &a.json {
        let report = SolveReport {
            schema: SOLVE_SCHEMA.into(),
            engine: a.engine,
            answer: outcome.answer,
            witness,
            leaves,
        };
        write_json(path, &report, out)?;
    }
    Ok(if outcome.answer { EXIT_OK } else { EXIT_NO })
}

/// Instance `index` of the batch with the given seed: `n ≤ min(cap, 14)`,
/// `ℓ ∈ 1..=3`, `k ≤ 4`, alternating Erdős–Rényi and gadget graphs.
pub fn batch_instance(seed: u64, index: usize, cap: usize) -> CocInstance {
    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(index as u64));
    let n = rng.gen_range(1..=cap.clamp(1, 14));
    let graph = if index.is_multiple_of(2) {
        let p = rng.gen_range(0.1..0.5);
        erdos_renyi(&mut rng, n, p)
    } else {
        gadgets(&mut rng, n)
    };
    let ell = rng.gen_range(1..=3);
    let k = rng.gen_range(0..=4);
    CocInstance::new(graph, ell, k).expect("ell is positive")
}

fn check_one(inst: &CocInstance, cap: usize) -> Result<crate::kernel::KernelCheck> {
    let result = kernelize(inst)?;
    verify_kernel(inst, &result, cap)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let (report, status) = match (&a.path, a.count) {
        (_, Some(count)) => {
            let checks: Vec<Result<bool>> = (0..count)
                .into_par_iter()
                .map(|i| check_one(&batch_instance(a.seed, i, a.cap), a.cap).map(|c| c.passed()))
                .collect();
            let mut failures = Vec::new();
            for (i, c) in checks.into_iter().enumerate() {
                if !c? {
                    failures.push(format!("instance {i}"));
                }
            }
            let failed = failures.len();
            writeln!(
                out,
                "batch seed {}: {} instances, {} passed, {} failed",
                a.seed,
                count,
                count - failed,
                failed
            )?;
            let report = VerifyReport {
                schema: VERIFY_SCHEMA.into(),
                instances: count,
                passed: count - failed,
                failed,
                seed: Some(a.seed),
                failures,
            };
            (report, if failed == 0 { EXIT_OK } else { EXIT_NO })
        }
        (Some(path), None) => {
            let inst = InstanceFile::read(path)?.instance(a.params.ell, a.params.k)?;
            let result = kernelize(&inst)?;
            let check = verify_kernel(&inst, &result, a.cap)?;
            let word = |b: bool| if b { "yes" } else { "no" };
            let pass = |b: bool| if b { "pass" } else { "FAIL" };
            writeln!(out, "original: {}", word(check.original_answer))?;
            writeln!(
                out,
                "kernel: {} ({} vertices, k = {}, bound {})",
                word(check.kernel_answer),
                result.instance.graph.num_vertices(),
                result.instance.k,
                result.instance.size_bound()
            )?;
            writeln!(out, "agreement: {}", pass(check.agree()))?;
            writeln!(out, "size bound: {}", pass(check.size_ok))?;
            let passed = check.passed();
            let report = VerifyReport {
                schema: VERIFY_SCHEMA.into(),
                instances: 1,
                passed: usize::from(passed),
                failed: usize::from(!passed),
                seed: None,
                failures: if passed {
                    vec![]
                } else {
                    vec![path.display().to_string()]
                },
            };
            (report, if passed { EXIT_OK } else { EXIT_NO })
        }
        (None, None) => {
            return Err(Error::InvalidParameter(
                "give an instance path or --count".into(),
            ))
        }
    };
    if let Some(path) = &a.json {
        write_json(path, &report, out)?;
    }
    Ok(status)
}

pub fn cmd_dump_lp(a: &DumpLpArgs, out: &mut dyn Write) -> Result<i32> {
    let file = InstanceFile::read(&a.path)?;
    let ell = a
        .ell
        .or(file.ell)
        .ok_or_else(|| Error::InvalidParameter("ell not given by flag or `l` line".into()))?;
    let lp = build_coc_lp(&file.graph, ell)?;
    out.write_all(lp.dump(1).as_bytes())?;
    if let Some(path) = &a.json {
        let sol = solve_lp(&lp)?;
        let report = LpReport {
            schema: LP_SCHEMA.into(),
            ell,
            constraints: lp.constraints().iter().map(one_based).collect(),
            objective: sol.objective.to_string(),
            values: file
                .graph
                .vertices()
                .map(|v| sol.value(v).to_string())
                .collect(),
        };
        write_json(path, &report, out)?;
    }
    Ok(EXIT_OK)
}
