//! Command-line front end.
//!
//! Exit codes: 0 success, 1 suite failures, 2 malformed input or a violated
//! precondition, 3 search budget exhausted under `--require-exact`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::distances::{
    gh_bijection_with_budget, gh_exact, hausdorff, hl_close_with_budget, hl_min_epsilon,
    hl_upper_from_witness, lipschitz_with_budget, DistanceError, DEFAULT_BUDGET,
};
use crate::games::{duality_check, GameSolver};
use crate::io::{metric_from_json, metric_to_json, read_json, write_json};
use crate::normlab::NormOracle;
use crate::reductions::{
    self, BmGadgetParams, KadetsGadgetParams, LevelGadgetParams, SeparationGadgetParams,
};
use crate::scalar::{NumericMode, Rational, Scalar};
use crate::space::FiniteMetricSpace;
use crate::suites::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "metriclab",
    version,
    about = "Distances, reduction gadgets and distance games on finite metric spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of suite trials.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Search node budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Exit with code 3 when a search stops before completing.
    #[arg(long, global = true)]
    pub require_exact: bool,
    /// Numeric mode; METRICLAB_MODE takes precedence.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Rational)]
    pub mode: ModeArg,
    /// Where to write a suite report.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Where to write the output document (standard output by default).
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Rational,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a document is a finite metric space.
    Validate { file: PathBuf },
    /// Compute a distance and print its certificate.
    Dist {
        #[arg(value_enum)]
        kind: DistKind,
        /// One metric document for `hausdorff`, two otherwise.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        /// Closeness parameter for `hl`; without it the smallest one is searched.
        #[arg(long)]
        eps: Option<String>,
        /// First subset for `hausdorff`, comma-separated indices.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Second subset for `hausdorff`.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// Build a reduction gadget.
    Reduce {
        #[arg(value_enum)]
        gadget: GadgetKind,
        /// Metric document, or a parameter document for `bm-gadget` and
        /// `kadets-gadget`.
        input: PathBuf,
        /// Added distance for `separate` [default: 1]
        #[arg(long)]
        p: Option<String>,
        /// Copies per point for `separate` [default: 2]
        #[arg(long)]
        copies: Option<usize>,
        /// Lowest level [default: -1 for lip-gadget, -2 for hl-gadget]
        #[arg(long, allow_hyphen_values = true)]
        kmin: Option<i64>,
        /// Highest level [default: 1 for lip-gadget, 0 for hl-gadget]
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<i64>,
    },
    /// Solve the distance game between two spaces.
    Game {
        a: PathBuf,
        b: PathBuf,
        /// Number of rounds; without it the game is expanded until it stabilizes.
        #[arg(long)]
        depth: Option<u32>,
        /// Threshold deciding the winner.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Run a randomized property suite.
    Suite { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Gh,
    GhBij,
    Lip,
    Hausdorff,
    Hl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    Separate,
    Bound,
    LipGadget,
    HlGadget,
    BmGadget,
    KadetsGadget,
}

/// An error carrying the exit code it maps to.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }

    fn budget() -> Self {
        CliError {
            code: EXIT_BUDGET,
            message: "search budget exhausted before completion".into(),
        }
    }
}

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        match e {
            DistanceError::BudgetExhaustedWithoutBound => CliError::budget(),
            other => CliError::input(other),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code. Errors are
/// printed to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn mode(global: &GlobalArgs) -> Result<NumericMode, CliError> {
    match std::env::var("METRICLAB_MODE") {
        Ok(v) if !v.trim().is_empty() => v.parse().map_err(CliError::input),
        _ => Ok(match global.mode {
            ModeArg::Rational => NumericMode::Rational,
            ModeArg::Float => NumericMode::Float,
        }),
    }
}

/// Runs a parsed command and returns the exit code.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    match mode(g)? {
        NumericMode::Rational => execute_in::<Rational>(cli),
        NumericMode::Float => execute_in::<f64>(cli),
    }
}

fn emit(global: &GlobalArgs, value: &Value) -> Result<(), CliError> {
    match &global.output {
        Some(path) => write_json(path, value).map_err(CliError::input),
        None => {
            let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(CliError::input)
        }
    }
}

fn load<S: Scalar>(path: &Path) -> Result<FiniteMetricSpace<S>, CliError> {
    let doc = read_json(path).map_err(CliError::input)?;
    metric_from_json(&doc).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_scalar<S: Scalar>(text: &str, what: &str) -> Result<S, CliError> {
    S::parse(text).map_err(|e| CliError::input(format!("--{what}: {e}")))
}

fn execute_in<S: Scalar>(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { file } => {
            let m: FiniteMetricSpace<S> = load(file)?;
            let min = m.min_distance().map(Scalar::to_json);
            emit(
                g,
                &json!({
                    "valid": true,
                    "n": m.len(),
                    "mode": S::MODE.name(),
                    "minDistance": min,
                    "diameter": m.diameter().to_json(),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Dist {
            kind,
            files,
            eps,
            a,
            b,
        } => dist::<S>(g, *kind, files, eps.as_deref(), a, b),
        Command::Reduce {
            gadget,
            input,
            p,
            copies,
            kmin,
            kmax,
        } => reduce::<S>(g, *gadget, input, p.as_deref(), *copies, *kmin, *kmax),
        Command::Game { a, b, depth, eps } => game::<S>(g, a, b, *depth, eps.as_deref()),
        Command::Suite { name } => {
            let report = run_suite(name, g.trials, g.seed).map_err(CliError::input)?;
            let doc = report.to_json();
            if let Some(path) = &g.report {
                write_json(path, &doc).map_err(CliError::input)?;
            }
            emit(g, &doc)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURES
            })
        }
    }
}

fn two(files: &[PathBuf]) -> Result<(&Path, &Path), CliError> {
    match files {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::input("expected two metric documents")),
    }
}

fn check_exact(g: &GlobalArgs, exact: bool) -> Result<(), CliError> {
    if g.require_exact && !exact {
        Err(CliError::budget())
    } else {
        Ok(())
    }
}

fn dist<S: Scalar>(
    g: &GlobalArgs,
    kind: DistKind,
    files: &[PathBuf],
    eps: Option<&str>,
    a: &[usize],
    b: &[usize],
) -> Result<i32, CliError> {
    let doc = match kind {
        DistKind::Hausdorff => {
            let [file] = files else {
                return Err(CliError::input(
                    "hausdorff takes one metric document and --a/--b subsets",
                ));
            };
            let m: FiniteMetricSpace<S> = load(file)?;
            let value = hausdorff(&m, a, b)?;
            json!({"value": value.to_json(), "exact": true, "a": a, "b": b})
        }
        DistKind::Gh => {
            let (fa, fb) = two(files)?;
            let (m, n) = (load::<S>(fa)?, load::<S>(fb)?);
            let cert = gh_exact(&m, &n, Some(g.budget))?;
            check_exact(g, cert.exact)?;
            cert.to_json()
        }
        DistKind::GhBij => {
            let (fa, fb) = two(files)?;
            let (m, n) = (load::<S>(fa)?, load::<S>(fb)?);
            let cert = gh_bijection_with_budget(&m, &n, g.budget)?;
            check_exact(g, cert.exact)?;
            cert.to_json()
        }
        DistKind::Lip => {
            let (fa, fb) = two(files)?;
            let (m, n) = (load::<S>(fa)?, load::<S>(fb)?);
            let cert = lipschitz_with_budget(&m, &n, g.budget)?;
            check_exact(g, cert.exact)?;
            cert.to_json()
        }
        DistKind::Hl => {
            let (fa, fb) = two(files)?;
            let (m, n) = (load::<S>(fa)?, load::<S>(fb)?);
            match eps {
                Some(text) => {
                    let eps: S = parse_scalar(text, "eps")?;
                    let close = hl_close_with_budget(&m, &n, eps, g.budget)?;
                    check_exact(g, close.complete)?;
                    let mut doc = close.to_json();
                    if let Some(w) = &close.witness {
                        doc["upper"] = hl_upper_from_witness(&m, &n, eps, w, g.seed)?.to_json();
                    }
                    doc
                }
                None => {
                    let (value, witness, complete) = hl_min_epsilon(&m, &n, g.budget)?;
                    check_exact(g, complete)?;
                    json!({"value": value.to_json(), "exact": complete, "witness": witness.to_json()})
                }
            }
        }
    };
    emit(g, &doc)?;
    Ok(EXIT_OK)
}

fn reduce<S: Scalar>(
    g: &GlobalArgs,
    gadget: GadgetKind,
    input: &Path,
    p: Option<&str>,
    copies: Option<usize>,
    kmin: Option<i64>,
    kmax: Option<i64>,
) -> Result<i32, CliError> {
    let doc = match gadget {
        GadgetKind::Separate => {
            let m: FiniteMetricSpace<S> = load(input)?;
            let p: S = parse_scalar(p.unwrap_or("1"), "p")?;
            let params = SeparationGadgetParams {
                p,
                copies: copies.unwrap_or(2),
            };
            let out = reductions::separate(&m, params).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
        GadgetKind::Bound => {
            let m: FiniteMetricSpace<S> = load(input)?;
            let out = reductions::bound(&m).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
        GadgetKind::LipGadget => {
            let m: FiniteMetricSpace<S> = load(input)?;
            let params = LevelGadgetParams {
                k_min: kmin.unwrap_or(-1),
                k_max: kmax.unwrap_or(1),
            };
            let out = reductions::lipschitz_gadget(&m, params).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
        GadgetKind::HlGadget => {
            let m: FiniteMetricSpace<S> = load(input)?;
            let params = LevelGadgetParams {
                k_min: kmin.unwrap_or(-2),
                k_max: kmax.unwrap_or(0),
            };
            let out = reductions::hl_gadget(&m, params).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
        GadgetKind::BmGadget => {
            let doc = read_json(input).map_err(CliError::input)?;
            let norm = read_norm(&doc)?;
            let params = BmGadgetParams::from_json(&doc, &norm).map_err(CliError::input)?;
            let out = reductions::bm_gadget(&norm, &params).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
        GadgetKind::KadetsGadget => {
            let doc = read_json(input).map_err(CliError::input)?;
            let norm = read_norm(&doc)?;
            let params = KadetsGadgetParams::from_json(&doc).map_err(CliError::input)?;
            let out = reductions::kadets_gadget(&norm, &params).map_err(CliError::input)?;
            metric_to_json(&out.space, Some(&out.provenance))
        }
    };
    emit(g, &doc)?;
    Ok(EXIT_OK)
}

fn read_norm(doc: &Value) -> Result<NormOracle, CliError> {
    let norm = doc
        .get("norm")
        .ok_or_else(|| CliError::input("missing \"norm\" object"))?;
    NormOracle::from_json(norm).map_err(CliError::input)
}

fn game<S: Scalar>(
    g: &GlobalArgs,
    a: &Path,
    b: &Path,
    depth: Option<u32>,
    eps: Option<&str>,
) -> Result<i32, CliError> {
    let (m, n) = (load::<S>(a)?, load::<S>(b)?);
    let eps: Option<S> = eps.map(|t| parse_scalar(t, "eps")).transpose()?;
    if eps.is_some_and(|e| !(e > S::zero())) {
        return Err(CliError::input("--eps must be positive"));
    }
    let mut doc = match depth {
        Some(k) => {
            let mut solver = GameSolver::new(&m, &n).map_err(CliError::input)?;
            let value = solver.value(&[], &[], k).map_err(CliError::input)?;
            let next = solver.value(&[], &[], k + 1).map_err(CliError::input)?;
            json!({"value": value.to_json(), "depth": k, "stable": value.approx_eq(next)})
        }
        None => duality_check(&m, &n).map_err(CliError::input)?.to_json(),
    };
    if let Some(e) = eps {
        let value = S::from_json(&doc["value"]).map_err(CliError::input)?;
        doc["eps"] = e.to_json();
        doc["playerTwoWins"] = json!(value < e);
    }
    emit(g, &doc)?;
    Ok(EXIT_OK)
}
