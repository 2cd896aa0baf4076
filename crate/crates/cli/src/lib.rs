//! Command-line front end. Every subcommand prints JSON on stdout.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when an internal
//! check fails (bound, certificate, ledger or minor identities).

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use planarize_bench::{run_ladder, LadderFamily};
use planarize_core::certify::verdicts;
use planarize_core::generators::{self, Fixture};
use planarize_core::io::{parse_graph, parse_vertex_set, write_graph};
use planarize_core::lp::{check_feasible, solve, RationalLp};
use planarize_core::minors::{level_contract, verify_minor_density, MinorError};
use planarize_core::oracle::{max_induced, OracleError};
use planarize_core::planar::{ChargeParams, LedgerState, PlanarError, PlanarOptions};
use planarize_core::{
    Algorithm, Bound, FamilySpec, MultiGraph, PropertyId, Rational, ReductionSolution, Verdicts,
    VertexId,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "planarize",
    version,
    about = "Large induced sparse subgraphs with certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a reducer and report |S|, the bound and certificates.
    Reduce(ReduceArgs),
    /// Check a vertex set against every certifier.
    Certify(CertifyArgs),
    /// Exact maximum induced subgraphs by enumeration.
    Oracle(OracleArgs),
    /// Solve or check the planar charge LP.
    Lp {
        #[command(subcommand)]
        action: LpAction,
    },
    /// Level contraction of a high-girth graph.
    Minor(MinorArgs),
    /// Generate a graph family.
    Gen(GenArgs),
    /// Time a reducer on a size ladder.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub alg: Algorithm,
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Write S to this file, one id per line.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Planar charge parameters `epsilon,c3,c4,tau` as `p/q` values.
    #[arg(long)]
    pub params: Option<String>,
    /// Include the full trace in the report.
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// File with the vertex set S.
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Property name; all properties when omitted.
    #[arg(long)]
    pub property: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum LpAction {
    /// Maximize epsilon, optionally without some constraints.
    Solve {
        #[arg(long)]
        drop: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Slack of every constraint at the given (or reference) values.
    Check {
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct MinorArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(long)]
    pub root: Option<u32>,
    /// Write the minor's edge list here.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Print a JSON summary with the edge list instead of the graph text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    /// Disjoint copies of K3,3.
    K33xt {
        #[arg(long)]
        t: usize,
    },
    /// Disjoint copies of K5.
    K5xt {
        #[arg(long)]
        t: usize,
    },
    Complete {
        #[arg(long)]
        k: usize,
    },
    CompleteBipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    RandomRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    HighGirth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Fixture {
        name: String,
    },
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub alg: Algorithm,
    /// `k33xt`, `k5xt` or `random-regular:<d>[:<seed>]`.
    #[arg(long)]
    pub family: String,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 3.0)]
    pub max_ratio: f64,
    #[arg(long)]
    pub json: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_err(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: msg.to_string(),
    }
}

fn check_err(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_CHECK,
        message: msg.to_string(),
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct BoundReport {
    /// `num/den` in `|S| >= n - (num/den) m`.
    pub coefficient: Rational,
    pub value: Rational,
}

#[derive(Serialize, Debug, Clone)]
pub struct CertificateReport {
    pub required: Vec<&'static str>,
    pub passed: bool,
    pub verdicts: Verdicts,
}

#[derive(Serialize, Debug, Clone)]
pub struct LedgerSummary {
    pub params: ChargeParams,
    pub steps: usize,
    pub min_charge: Option<Rational>,
    pub negative_steps: usize,
    pub total_charge: Rational,
    pub outstanding_debt: Rational,
}

#[derive(Serialize, Debug, Clone)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub s_size: usize,
    pub s: Vec<VertexId>,
    pub bound: BoundReport,
    pub bound_satisfied: bool,
    pub certificates: CertificateReport,
    pub ledger: Option<LedgerSummary>,
    pub trace_steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.bound_satisfied
            && self.certificates.passed
            && self.ledger.as_ref().is_none_or(|l| l.negative_steps == 0)
    }
}

fn bound_of(alg: Algorithm) -> Bound {
    match alg {
        Algorithm::Pseudoforest => Bound::PSEUDOFOREST,
        Algorithm::Treewidth2 => Bound::TREEWIDTH2,
        Algorithm::Planar => Bound::PLANAR,
    }
}

fn summarize(ledger: &LedgerState) -> LedgerSummary {
    let total = ledger
        .step_charges
        .iter()
        .fold(Rational::zero(), |acc, e| acc + e.charge.clone());
    let debt = ledger
        .debt
        .values()
        .fold(Rational::zero(), |acc, d| acc + d.clone());
    LedgerSummary {
        params: ledger.params.clone(),
        steps: ledger.step_charges.len(),
        min_charge: ledger.min_charge().cloned(),
        negative_steps: ledger
            .step_charges
            .iter()
            .filter(|e| e.charge.is_negative())
            .count(),
        total_charge: total,
        outstanding_debt: debt,
    }
}

/// Builds the report for a finished run. `bound_satisfied` and the
/// certificate verdicts are recomputed here from `g` and `S`.
pub fn build_report(
    alg: Algorithm,
    g: &MultiGraph,
    sol: &ReductionSolution,
    ledger: Option<&LedgerState>,
    wall_time_ms: f64,
) -> Result<RunReport, String> {
    let bound = bound_of(alg);
    let v = verdicts(g, &sol.s).map_err(|e| e.to_string())?;
    let (required, passed) = match alg {
        Algorithm::Pseudoforest => (vec!["pseudoforest"], v.pseudoforest),
        Algorithm::Treewidth2 => (vec!["partial_2_tree"], v.partial_2_tree),
        Algorithm::Planar => (vec!["planar", "structure"], v.planar && v.structure_ok()),
    };
    Ok(RunReport {
        algorithm: alg,
        n: g.n(),
        m: g.m(),
        s_size: sol.s.len(),
        s: sol.s.iter().copied().collect(),
        bound: BoundReport {
            coefficient: Rational::new(bound.num as i64, bound.den as i64),
            value: bound.value(g.n(), g.m()),
        },
        bound_satisfied: bound.holds(g.n(), g.m(), sol.s.len()),
        certificates: CertificateReport {
            required,
            passed,
            verdicts: v,
        },
        ledger: ledger.map(summarize),
        trace_steps: sol.trace.len(),
        trace: None,
        wall_time_ms,
    })
}

fn read_graph(path: &Path) -> Result<MultiGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn parse_params(text: &str) -> Result<ChargeParams, Failure> {
    let vals: Vec<Rational> = text
        .split(',')
        .map(|t| t.trim().parse::<Rational>())
        .collect::<Result<_, _>>()
        .map_err(|e| input_err(format!("--params: {e}")))?;
    match <[Rational; 4]>::try_from(vals) {
        Ok([e, c3, c4, tau]) => Ok(ChargeParams::new(e, c3, c4, tau)),
        Err(v) => Err(input_err(format!(
            "--params needs 4 values (epsilon,c3,c4,tau), got {}",
            v.len()
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn reduce(a: &ReduceArgs) -> Result<String, Failure> {
    let g = read_graph(&a.input)?;
    let mut opts = PlanarOptions::default();
    if let Some(p) = &a.params {
        opts.params = parse_params(p)?;
    }
    let start = Instant::now();
    let (sol, ledger) = a.alg.run(&g, &opts).map_err(|e| match e {
        PlanarError::InfeasibleParams(_) => input_err(e),
        _ => check_err(e),
    })?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = build_report(a.alg, &g, &sol, ledger.as_ref(), ms).map_err(check_err)?;
    if a.trace {
        report.trace = Some(serde_json::to_value(&sol.trace).expect("trace serializes"));
    }
    if let Some(out) = &a.output {
        let body: String = sol.s.iter().map(|v| format!("{v}\n")).collect();
        write_file(out, &body)?;
    }
    let text = to_json(&report);
    if report.ok() {
        Ok(text)
    } else {
        Err(check_err(format!("run failed its checks\n{text}")))
    }
}

fn certify(a: &CertifyArgs) -> Result<String, Failure> {
    let g = read_graph(&a.input)?;
    let text =
        fs::read_to_string(&a.set).map_err(|e| input_err(format!("{}: {e}", a.set.display())))?;
    let ids =
        parse_vertex_set(&text).map_err(|e| input_err(format!("{}: {e}", a.set.display())))?;
    let s: BTreeSet<VertexId> = ids.into_iter().map(VertexId::from).collect();
    let v = verdicts(&g, &s).map_err(input_err)?;
    Ok(to_json(&json!({
        "n": g.n(),
        "m": g.m(),
        "structure_ok": v.structure_ok(),
        "verdicts": v,
    })))
}

fn oracle(a: &OracleArgs) -> Result<String, Failure> {
    let g = read_graph(&a.input)?;
    let props: Vec<PropertyId> = match &a.property {
        Some(p) => vec![p.parse().map_err(|e: OracleError| input_err(e))?],
        None => PropertyId::ALL.to_vec(),
    };
    let results = props
        .into_iter()
        .map(|p| max_induced(&g, p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input_err)?;
    Ok(to_json(
        &json!({ "n": g.n(), "m": g.m(), "results": results }),
    ))
}

fn lp(action: &LpAction) -> Result<String, Failure> {
    match action {
        LpAction::Solve { drop, .. } => {
            let mut lp = RationalLp::planar_analysis();
            for name in drop {
                lp = lp.without(name).map_err(input_err)?;
            }
            let sol = solve(&lp).map_err(input_err)?;
            Ok(to_json(&json!({
                "optimum": sol.value,
                "assignment": sol.assignment,
                "tight": sol.tight,
                "vertices_examined": sol.vertices,
                "dropped": drop,
            })))
        }
        LpAction::Check { params, .. } => {
            let lp = RationalLp::planar_analysis();
            let assignment = match params {
                Some(p) => parse_params(p)?.assignment(),
                None => RationalLp::planar_reference_assignment(),
            };
            let rep = check_feasible(&lp, &assignment).map_err(input_err)?;
            Ok(to_json(&json!({
                "assignment": assignment,
                "feasible": rep.feasible,
                "tight": rep.tight().map(|e| e.name.clone()).collect::<Vec<_>>(),
                "constraints": rep.entries,
            })))
        }
    }
}

fn minor(a: &MinorArgs) -> Result<String, Failure> {
    let g = read_graph(&a.input)?;
    let r = level_contract(&g, a.root.map(VertexId)).map_err(|e| match e {
        MinorError::Invariant(_) => check_err(e),
        _ => input_err(e),
    })?;
    if let Some(out) = &a.output {
        write_file(out, &write_graph(&r.minor))?;
    }
    let edges: Vec<(VertexId, VertexId)> = r
        .minor
        .edges()
        .into_iter()
        .flat_map(|(u, v, k)| std::iter::repeat_n((u, v), k))
        .collect();
    Ok(to_json(&json!({
        "root": r.root,
        "offset_a": r.offset_a,
        "kept": r.kept,
        "identity_holds": r.m_prime + r.n == r.m + r.n_prime,
        "simple": r.minor.is_simple(),
        "density": verify_minor_density(&r),
        "edges": edges,
    })))
}

fn gen_spec(f: &GenFamily) -> Result<(String, FamilySpec), Failure> {
    let copies = |inner: FamilySpec, t: usize| FamilySpec::DisjointCopies(Box::new(inner), t);
    Ok(match f {
        GenFamily::K33xt { t } => (
            format!("k33xt(t={t})"),
            copies(FamilySpec::CompleteBipartite(3, 3), *t),
        ),
        GenFamily::K5xt { t } => (format!("k5xt(t={t})"), copies(FamilySpec::Complete(5), *t)),
        GenFamily::Complete { k } => (format!("complete({k})"), FamilySpec::Complete(*k)),
        GenFamily::CompleteBipartite { a, b } => (
            format!("complete-bipartite({a},{b})"),
            FamilySpec::CompleteBipartite(*a, *b),
        ),
        GenFamily::Cycle { n } => (format!("cycle({n})"), FamilySpec::Cycle(*n)),
        GenFamily::Path { n } => (format!("path({n})"), FamilySpec::Path(*n)),
        GenFamily::RandomRegular { n, d, seed } => (
            format!("random-regular({n},{d},seed={seed})"),
            FamilySpec::RandomRegular {
                n: *n,
                d: *d,
                seed: *seed,
            },
        ),
        GenFamily::Gnm { n, m, seed } => (
            format!("gnm({n},{m},seed={seed})"),
            FamilySpec::RandomGnm {
                n: *n,
                m: *m,
                seed: *seed,
            },
        ),
        GenFamily::HighGirth { n, girth, seed } => (
            format!("high-girth({n},{girth},seed={seed})"),
            FamilySpec::HighGirthSubcubic {
                n: *n,
                girth: *girth,
                seed: *seed,
            },
        ),
        GenFamily::Fixture { name } => {
            let fx: Fixture = name.parse().map_err(input_err)?;
            (format!("fixture({fx})"), FamilySpec::Fixture(fx))
        }
    })
}

fn gen(a: &GenArgs) -> Result<String, Failure> {
    let (label, spec) = gen_spec(&a.family)?;
    let g = generators::generate(&spec).map_err(input_err)?;
    let text = write_graph(&g);
    if let Some(out) = &a.output {
        write_file(out, &text)?;
    }
    if a.json || a.output.is_some() {
        let mut summary = json!({
            "family": label,
            "n": g.n(),
            "m": g.m(),
            "output": a.output,
        });
        if a.json {
            summary["edges"] = json!(g.edges());
        }
        Ok(to_json(&summary))
    } else {
        Ok(text)
    }
}

fn bench(a: &BenchArgs) -> Result<String, Failure> {
    let family: LadderFamily = a.family.parse().map_err(input_err)?;
    let rows = run_ladder(a.alg, family, &a.sizes, a.reps).map_err(input_err)?;
    let worst = rows
        .iter()
        .filter_map(|r| r.ratio)
        .fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.max(r)))
        });
    Ok(to_json(&json!({
        "algorithm": a.alg,
        "family": family,
        "rows": rows,
        "worst_ratio": worst,
        "max_ratio": a.max_ratio,
        "within_threshold": worst.is_none_or(|w| w <= a.max_ratio),
    })))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Reduce(a) => reduce(a),
        Command::Certify(a) => certify(a),
        Command::Oracle(a) => oracle(a),
        Command::Lp { action } => lp(action),
        Command::Minor(a) => minor(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(mut stdout) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
