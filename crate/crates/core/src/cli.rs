//! Command-line front end. Every subcommand prints JSON (or CSV for `gen`)
//! and maps failures to exit codes: 1 I/O, 2 parse error, 3 invalid input,
//! 4 a search stopped on its budget.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classify::{classify, ClassificationParams};
use crate::convex::{self, SetFamily};
use crate::csv_io::{read_matrix_file, to_csv_string};
use crate::definable::{approximate, ApproxOutcome, SelectOptions};
use crate::error::Error;
use crate::generate::{self, Dist};
use crate::matrix::EvalMatrix;
use crate::order::{candidate_pairs, defect_profile_with_budget, DEFAULT_NODE_BUDGET};
use crate::ramsey::{self, DichotomyResult, PairColoring, RamseyOutcome};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::report::ReportFile;
use crate::witness::{CoefVector, ShatterWitness, StaircaseWitness, ThresholdPair};

pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dichotomy-lab", version, about = "Order, independence and convexity diagnostics for rational evaluation matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated matrix as CSV
    Gen(GenArgs),
    /// Classify a matrix and write the JSON report
    Analyze(AnalyzeArgs),
    /// Widest threshold gap admitting a staircase of each length
    Profile(ProfileArgs),
    /// Value of the convex-mean covering game on a set family
    Ptak(PtakArgs),
    /// Best convex combination of tail rows approximating a target
    Mazur(MazurArgs),
    /// Gauge norm of a vector with respect to conv(±generators)
    Gauge(GaugeArgs),
    /// Look for longer staircases among random convex combinations of rows
    Probe(ProbeArgs),
    /// Approximate a target through feature rows and a monotone table
    Approx(ApproxArgs),
    /// Homogeneous subset of a 2-coloring of pairs
    Ramsey(RamseyArgs),
    /// Largest eps-grid bucket of rows
    Cauchy(CauchyArgs),
    /// Eps-Cauchy rows or a shattered row set, whichever is found
    Dichotomy(DichotomyArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// n x n, entry 1 when row >= column
    LinearOrder { n: usize },
    /// d rows, one column per subset
    Shatter { d: usize },
    /// Seed-pinned entries in [-1, 1]
    Random {
        rows: usize,
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// binary, uniform or grid:<q>
        #[arg(long, default_value = "grid:4")]
        dist: Dist,
    },
    /// Nondecreasing step rows
    MonotoneFamily { rows: usize, cols: usize },
    Constant {
        rows: usize,
        cols: usize,
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        value: Rational,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// Threshold pair `s,r`; repeat to scan several
    #[arg(long = "thresholds", allow_hyphen_values = true, value_parser = threshold_pair)]
    pub thresholds: Vec<ThresholdPair>,
    #[arg(long, default_value_t = 4)]
    pub k_stable: usize,
    #[arg(long, default_value_t = 4)]
    pub d_nip: usize,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub d_max: Option<usize>,
    #[arg(long, value_parser = rational)]
    pub gap_min: Option<Rational>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct PtakArgs {
    /// Ground points, e.g. `1,2,3`
    #[arg(long, value_delimiter = ',', required = true)]
    pub ground: Vec<usize>,
    /// A member set, e.g. `1,2`; repeat for each member
    #[arg(long = "member", value_parser = index_list)]
    pub members: Vec<PointSet>,
    /// Also look for an increasing chain of this length
    #[arg(long)]
    pub chain: Option<usize>,
    /// Report whether a mean with every member below eps exists
    #[arg(long, value_parser = rational)]
    pub eps: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct MazurArgs {
    pub input: PathBuf,
    /// Row labels or indices in sequence order; defaults to all rows
    #[arg(long, value_delimiter = ',')]
    pub seq: Vec<String>,
    /// Target values, one per column
    #[arg(long, allow_hyphen_values = true, value_parser = rational_list, required = true)]
    pub target: RatVec,
    /// Position in the sequence where the tail starts
    #[arg(long, default_value_t = 0)]
    pub tail: usize,
}

#[derive(Debug, Args)]
pub struct GaugeArgs {
    /// A generator vector; repeat for each
    #[arg(long = "generator", allow_hyphen_values = true, value_parser = rational_list)]
    pub generators: Vec<RatVec>,
    /// Use the rows of this matrix as generators
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_list, required = true)]
    pub target: RatVec,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    pub input: PathBuf,
    /// Defaults to the widest pair of entry values
    #[arg(long, allow_hyphen_values = true, value_parser = threshold_pair)]
    pub thresholds: Option<ThresholdPair>,
    /// Staircase length cap
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    pub input: PathBuf,
    #[arg(long, value_parser = rational)]
    pub eps: Rational,
    /// Target values, one per column
    #[arg(long, allow_hyphen_values = true, value_parser = rational_list, group = "goal")]
    pub target: Option<RatVec>,
    /// Use a row as the target
    #[arg(long, group = "goal")]
    pub target_row: Option<String>,
    /// Convex combination of rows as the target, e.g. `a0:1/2,a3:1/2`
    #[arg(long, group = "goal")]
    pub combo: Option<String>,
    /// Candidate feature rows; defaults to all rows
    #[arg(long, value_delimiter = ',')]
    pub rows: Vec<String>,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Fall back to rows separating only the newest pair
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    /// Ground set size
    #[arg(long)]
    pub n: usize,
    /// Target size
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Pair colors as a 0/1 string in lexicographic pair order
    #[arg(long, group = "coloring")]
    pub colors: Option<String>,
    /// Color every pair the same
    #[arg(long, group = "coloring")]
    pub constant: Option<u8>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct CauchyArgs {
    pub input: PathBuf,
    #[arg(long, value_parser = rational)]
    pub eps: Rational,
    #[arg(long)]
    pub want: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DichotomyArgs {
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true, value_parser = threshold_pair)]
    pub thresholds: ThresholdPair,
    #[arg(long, value_parser = rational)]
    pub eps: Rational,
    #[arg(long)]
    pub want_cauchy: usize,
    #[arg(long)]
    pub want_indep: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A comma-separated vector of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVec(pub Vec<Rational>);

/// A comma-separated set of points; empty text is the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet(pub Vec<usize>);

fn rational_list(s: &str) -> Result<RatVec, String> {
    if s.trim().is_empty() {
        return Ok(RatVec(Vec::new()));
    }
    s.split(',').map(|v| rational(v.trim())).collect::<Result<_, _>>().map(RatVec)
}

fn index_list(s: &str) -> Result<PointSet, String> {
    if s.trim().is_empty() {
        return Ok(PointSet(Vec::new()));
    }
    s.split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}")))
        .collect::<Result<_, _>>()
        .map(PointSet)
}

fn threshold_pair(s: &str) -> Result<ThresholdPair, String> {
    let v = rational_list(s)?.0;
    match v.as_slice() {
        [a, b] => ThresholdPair::new(a.clone(), b.clone()).map_err(|e| e.to_string()),
        _ => Err(format!("expected `s,r`, got `{s}`")),
    }
}

/// What a command produced: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn json(v: &Value) -> Self {
        Self::ok(pretty(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::Parse { .. } | Error::BadEntry { .. } => EXIT_PARSE,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<Output, CliError>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn q(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// A row given by label, or by index when no label matches.
fn resolve_row(m: &EvalMatrix, key: &str) -> Result<usize, CliError> {
    if let Some(i) = m.row_labels().iter().position(|l| l == key) {
        return Ok(i);
    }
    key.parse::<usize>()
        .ok()
        .filter(|&i| i < m.rows())
        .ok_or_else(|| invalid(format!("no row `{key}`")))
}

fn resolve_rows(m: &EvalMatrix, keys: &[String]) -> Result<Vec<usize>, CliError> {
    if keys.is_empty() {
        return Ok((0..m.rows()).collect());
    }
    keys.iter().map(|k| resolve_row(m, k)).collect()
}

fn staircase_json(m: &EvalMatrix, w: &StaircaseWitness) -> Value {
    json!({
        "s": q(w.thresholds().s()),
        "r": q(w.thresholds().r()),
        "orientation": w.orientation(),
        "rows": w.rows(),
        "cols": w.cols(),
        "row_labels": w.rows().iter().map(|&i| &m.row_labels()[i]).collect::<Vec<_>>(),
        "col_labels": w.cols().iter().map(|&j| &m.col_labels()[j]).collect::<Vec<_>>(),
    })
}

fn shatter_json(m: &EvalMatrix, w: &ShatterWitness) -> Value {
    json!({
        "s": q(w.thresholds().s()),
        "r": q(w.thresholds().r()),
        "rows": w.rows(),
        "row_labels": w.rows().iter().map(|&i| &m.row_labels()[i]).collect::<Vec<_>>(),
        "columns": w.columns().values().collect::<Vec<_>>(),
    })
}

fn weights_json(m: &EvalMatrix, c: &CoefVector) -> Value {
    Value::Array(
        c.iter()
            .map(|(i, w)| json!({ "row": m.row_labels()[i], "index": i, "weight": q(w) }))
            .collect(),
    )
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Ptak(a) => cmd_ptak(a),
        Command::Mazur(a) => cmd_mazur(a),
        Command::Gauge(a) => cmd_gauge(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Approx(a) => cmd_approx(a),
        Command::Ramsey(a) => cmd_ramsey(a),
        Command::Cauchy(a) => cmd_cauchy(a),
        Command::Dichotomy(a) => cmd_dichotomy(a),
    }
}

pub fn cmd_gen(a: GenArgs) -> CliResult {
    let m = match a.kind {
        GenKind::LinearOrder { n } => generate::linear_order(n)?,
        GenKind::Shatter { d } => generate::shatter(d)?,
        GenKind::Random { rows, cols, seed, dist } => generate::random(rows, cols, seed, dist)?,
        GenKind::MonotoneFamily { rows, cols } => generate::monotone_family(rows, cols)?,
        GenKind::Constant { rows, cols, value } => generate::constant(rows, cols, value)?,
    };
    let text = to_csv_string(&m);
    match a.out {
        Some(path) => {
            write_out(&path, &text)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}

pub fn cmd_analyze(a: AnalyzeArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let params = ClassificationParams {
        thresholds: (!a.thresholds.is_empty()).then_some(a.thresholds),
        k_stable: a.k_stable,
        d_nip: a.d_nip,
        gap_min: a.gap_min,
        k_max: a.k_max,
        d_max: a.d_max,
        budget: a.budget,
    };
    let report = classify(&m, &params)?;
    let file = ReportFile::new(&m, &params, &report);
    file.verify(&m)?;
    let Format::Json = a.format;
    let text = file.to_json();
    let code = if report.budget_tripped { EXIT_INCONCLUSIVE } else { 0 };
    match a.out {
        Some(path) => {
            write_out(&path, &text)?;
            Ok(Output { text: String::new(), code })
        }
        None => Ok(Output { text, code }),
    }
}

pub fn cmd_profile(a: ProfileArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let k_max = a.k_max.unwrap_or(m.rows().min(m.cols()));
    let p = defect_profile_with_budget(&m, k_max, a.budget)?;
    let entries: Vec<Value> = p
        .entries
        .iter()
        .map(|e| {
            json!({
                "k": e.k,
                "gap": e.gap.as_ref().map(q),
                "witness": e.witness.as_ref().map(|w| staircase_json(&m, w)),
            })
        })
        .collect();
    let v = json!({ "profile": entries, "exhausted": p.exhausted });
    Ok(Output {
        text: pretty(&v),
        code: if p.exhausted { 0 } else { EXIT_INCONCLUSIVE },
    })
}

pub fn cmd_ptak(a: PtakArgs) -> CliResult {
    let fam = SetFamily::new(a.ground, a.members.into_iter().map(|p| p.0).collect())?;
    let g = convex::ptak_value(&fam)?;
    let chain = match a.chain {
        Some(len) => Some(convex::ptak_chain_search(&fam, len)?),
        None => None,
    };
    let v = json!({
        "value": q(&g.value),
        "primal": g.primal.support().iter().zip(g.primal.weights())
            .map(|(p, w)| json!({ "point": p, "weight": q(w) }))
            .collect::<Vec<_>>(),
        "dual": fam.members().iter().zip(&g.dual)
            .map(|(f, w)| json!({ "member": f, "weight": q(w) }))
            .collect::<Vec<_>>(),
        "primal_max": q(&g.primal_max),
        "dual_min": q(&g.dual_min),
        "small_mean_exists": a.eps.as_ref().map(|e| g.admits_small_mean(e)),
        "chain": chain.map(|c| c.map(|c| json!({ "sets": c.sets, "members": c.members }))),
    });
    Ok(Output::json(&v))
}

pub fn cmd_mazur(a: MazurArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let seq = resolve_rows(&m, &a.seq)?;
    let r = convex::mazur_approx(&m, &seq, &a.target.0, a.tail)?;
    let v = json!({
        "distance": q(&r.distance),
        "coefficients": weights_json(&m, &r.coefficients),
        "combination": qs(&r.coefficients.combine(&m)?),
    });
    Ok(Output::json(&v))
}

pub fn cmd_gauge(a: GaugeArgs) -> CliResult {
    let mut generators: Vec<Vec<Rational>> = a.generators.into_iter().map(|g| g.0).collect();
    if let Some(path) = a.matrix {
        let m = read_matrix_file(&path)?;
        generators.extend(m.entries().iter().cloned());
    }
    let g = convex::gauge_norm(&generators, &a.target.0)?;
    let v = json!({ "value": q(&g.value), "coefficients": qs(&g.coefficients) });
    Ok(Output::json(&v))
}

pub fn cmd_probe(a: ProbeArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let t = match a.thresholds {
        Some(t) => t,
        None => candidate_pairs(&m)
            .into_iter()
            .next()
            .ok_or_else(|| invalid("matrix has a single entry value; give --thresholds"))?,
    };
    let k = a.k.unwrap_or(m.rows().min(m.cols()));
    let r = convex::conv_stability_probe_with_budget(&m, &t, k, a.samples, a.seed, a.budget)?;
    let samples: Vec<Value> = r
        .samples
        .iter()
        .enumerate()
        .map(|(s, c)| json!({ "label": r.matrix.row_labels()[r.base_rows + s], "weights": weights_json(&m, c) }))
        .collect();
    let v = json!({
        "s": q(t.s()),
        "r": q(t.r()),
        "base_rank": r.base.rank,
        "extended_rank": r.extended.rank,
        "extension_found": r.extension_found,
        "witness": r.extended.witness.as_ref().filter(|_| r.extension_found).map(|w| staircase_json(&r.matrix, w)),
        "exhausted": r.base.exhausted && r.extended.exhausted,
        "samples": samples,
    });
    let exhausted = r.base.exhausted && r.extended.exhausted;
    Ok(Output {
        text: pretty(&v),
        code: if exhausted { 0 } else { EXIT_INCONCLUSIVE },
    })
}

fn combo_target(m: &EvalMatrix, combo: &str) -> Result<Vec<Rational>, CliError> {
    let mut support = Vec::new();
    let mut weights = Vec::new();
    for part in combo.split(',') {
        let (row, w) = part
            .split_once(':')
            .ok_or_else(|| CliError { code: EXIT_PARSE, message: format!("expected row:weight, got `{part}`") })?;
        support.push(resolve_row(m, row.trim())?);
        weights.push(rational(w.trim()).map_err(|message| CliError { code: EXIT_PARSE, message })?);
    }
    Ok(CoefVector::convex(support, weights)?.combine(m)?)
}

pub fn cmd_approx(a: ApproxArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let target = match (a.target, a.target_row, a.combo) {
        (Some(t), _, _) => t.0,
        (_, Some(row), _) => m.row(resolve_row(&m, &row)?).to_vec(),
        (_, _, Some(combo)) => combo_target(&m, &combo)?,
        _ => return Err(invalid("give one of --target, --target-row, --combo")),
    };
    let rows = resolve_rows(&m, &a.rows)?;
    let opts = SelectOptions {
        cap: a.cap,
        fallback: a.relaxed,
    };
    let label = |i: usize| m.row_labels()[i].clone();
    let v = match approximate(&m, &rows, &target, &a.eps, opts)? {
        ApproxOutcome::Approximated(r) => json!({
            "status": "approximated",
            "features": r.features.iter().map(|&i| label(i)).collect::<Vec<_>>(),
            "err": q(&r.err),
            "within_3eps": r.err <= &a.eps * int(3),
            "approximant": qs(&r.approximant),
            "iterations": r.iterations,
            "pairs": r.transcript.pairs,
            "table": r.table.keys.iter().zip(&r.table.g).zip(&r.table.h)
                .map(|((k, g), h)| json!({ "key": qs(k), "g": q(g), "h": q(h) }))
                .collect::<Vec<_>>(),
        }),
        ApproxOutcome::Failed(f) => json!({
            "status": "feature-failure",
            "reason": format!("{:?}", f.reason),
            "features": f.transcript.features.iter().map(|&i| label(i)).collect::<Vec<_>>(),
            "pairs": f.transcript.pairs,
            "target_gaps": qs(&f.target_gaps),
            "separation": f.separation.iter().map(|row| qs(row)).collect::<Vec<_>>(),
        }),
    };
    Ok(Output::json(&v))
}

pub fn cmd_ramsey(a: RamseyArgs) -> CliResult {
    let c = match (a.colors, a.constant) {
        (Some(bits), _) => {
            let colors = bits
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(CliError { code: EXIT_PARSE, message: format!("bad color `{ch}`") }),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            PairColoring::new(a.n, colors)?
        }
        (None, Some(color)) => PairColoring::from_fn(a.n, |_, _| color)?,
        (None, None) => return Err(invalid("give --colors or --constant")),
    };
    let v = match ramsey::ramsey_pairs_with_budget(&c, a.m, a.budget)? {
        RamseyOutcome::Homogeneous { color, subset } => {
            json!({ "homogeneous": true, "color": color, "subset": subset })
        }
        RamseyOutcome::Failure { color, largest, exhausted } => {
            json!({ "homogeneous": false, "color": color, "largest": largest, "exhausted": exhausted })
        }
    };
    Ok(Output::json(&v))
}

/// `ceil(rows / cells^cols)`.
fn pigeonhole_floor(rows: usize, cells: &BigInt, cols: usize) -> BigInt {
    let boxes = num_traits::pow(cells.clone(), cols);
    Rational::new(BigInt::from(rows), boxes).ceil().to_integer()
}

pub fn cmd_cauchy(a: CauchyArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let s = ramsey::cauchy_subsequence(&m, &a.eps)?;
    let v = json!({
        "eps": q(&a.eps),
        "indices": s.indices,
        "labels": s.indices.iter().map(|&i| &m.row_labels()[i]).collect::<Vec<_>>(),
        "length": s.len(),
        "cells_per_axis": s.cells_per_axis.to_string(),
        "guaranteed": pigeonhole_floor(m.rows(), &s.cells_per_axis, m.cols()).to_string(),
        "meets_want": a.want.map(|w| s.len() >= w),
    });
    Ok(Output::json(&v))
}

pub fn cmd_dichotomy(a: DichotomyArgs) -> CliResult {
    let m = read_matrix_file(&a.input)?;
    let r = ramsey::rosenthal_dichotomy(&m, &a.thresholds, &a.eps, a.want_cauchy, a.want_indep, a.budget)?;
    let (v, code) = match r {
        DichotomyResult::CauchyBranch(s) => (json!({ "branch": "cauchy", "indices": s.indices, "eps": q(&s.eps) }), 0),
        DichotomyResult::IndependentBranch(w) => (json!({ "branch": "independent", "witness": shatter_json(&m, &w) }), 0),
        DichotomyResult::Inconclusive { cauchy_len, independence_rank, exhausted } => (
            json!({
                "branch": "inconclusive",
                "cauchy_len": cauchy_len,
                "independence_rank": independence_rank,
                "exhausted": exhausted,
            }),
            if exhausted { 0 } else { EXIT_INCONCLUSIVE },
        ),
    };
    Ok(Output { text: pretty(&v), code })
}
