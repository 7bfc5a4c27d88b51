//! Command-line front end: `compute`, `extend`, `suite`, `aep`, `schmidt` and
//! `list-suites`. JSON is the wire format; CSV is offered for suite reports
//! and rate traces only.
//!
//! Exit codes: 0 success (all trials pass), 1 suite failure, 2 usage or
//! validation error, 3 computation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::divergence::{
    d_h_epsilon, d_min_epsilon_lower, d_s_epsilon, round_sig12, supports_contained, umegaki, ClassicalDivergence,
    Divergence, DivergenceValue, MeasurementStrategy,
};
use crate::entangle::{min_partial_transpose_eigenvalue, schmidt_decompose, schmidt_number_ppt, BipartiteCut};
use crate::error::Error;
use crate::extension::{
    extend_subnormalized, extended_d_max, extended_umegaki, generalized_fidelity, generalized_trace_distance,
    maximal_classical_extension_ansatz, maximal_classical_extension_pure, maximal_classical_extension_search,
    minimal_classical_extension_lower, purified_distance, regularized_rate, ExtensionBound, RateQuantity,
};
use crate::property::{run_suite, suites, SuiteConfig};
use crate::qstate::io::parse_state;
use crate::qstate::{DensityState, PureState, DEFAULT_CUTOFF};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

/// Eigenvalue tolerance for recognizing a rank-one input as a pure state.
const PURE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "resmex", version, about = "Quantum divergences, their optimal extensions, and property suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a divergence or one-shot quantity on a pair of states.
    Compute(ComputeArgs),
    /// Evaluate an extension: subnormalized, maximal or minimal classical.
    Extend(ExtendArgs),
    /// Run a randomized property suite.
    Suite(SuiteArgs),
    /// Trace the rate `(1/n) Q(ρ^⊗n‖σ^⊗n)` for `n = 1..n_max`.
    Aep(AepArgs),
    /// Schmidt data of a pure state, or the Schmidt number of a mixed state.
    Schmidt(SchmidtArgs),
    /// List the registered suites with their defaults.
    ListSuites,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Also write the result to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        self.format.unwrap_or_else(|| match &self.out {
            Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Format::Csv,
            _ => Format::Json,
        })
    }

    fn require_json(&self) -> Result<(), Failure> {
        match self.format() {
            Format::Json => Ok(()),
            Format::Csv => Err(Failure::usage("csv output is only available for suite reports and aep traces")),
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// umegaki, dmin, dmax, trace-distance, fidelity, petz, sandwiched,
    /// geometric, or the one-shot ds, dh, dmin-epsilon.
    #[arg(long)]
    pub divergence: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    /// Smoothing parameter of the one-shot quantities.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtensionKind {
    Subnorm,
    MaximalClassical,
    MinimalClassical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Maximal: eigenbasis of `σ^{-1/2} ρ σ^{-1/2}`.
    Ansatz,
    /// Maximal: randomized search over decompositions.
    Search,
    /// Maximal: closed form for a rank-one `ρ`.
    Pure,
    /// Minimal: measurement in the pinched eigenbasis of the pencil.
    Pencil,
    /// Minimal: best of `--trials` random projective measurements.
    Random,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long, value_enum)]
    pub kind: ExtensionKind,
    /// subnorm: generalized-trace-distance, generalized-fidelity,
    /// purified-distance, extended-umegaki, extended-dmax, or any `compute`
    /// divergence; classical kinds: kl, renyi, tv.
    #[arg(long)]
    pub divergence: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long, value_enum)]
    pub strategy: Option<Strategy>,
    /// Points of a search or random measurements.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, env = "RESMEX_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated dimensions, cycled over trials.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long, env = "RESMEX_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub slack: Option<f64>,
    /// Suite-specific parameter `KEY=VALUE`; the value is read as JSON when
    /// it parses, as a string otherwise. Repeatable.
    #[arg(long = "extra", value_name = "KEY=VALUE")]
    pub extra: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AepArgs {
    /// First state; defaults to diag(0.9, 0.1).
    #[arg(long)]
    pub rho: Option<PathBuf>,
    /// Second state; defaults to diag(0.5, 0.5).
    #[arg(long)]
    pub sigma: Option<PathBuf>,
    /// ds, dh, or any `compute` divergence.
    #[arg(long, default_value = "ds")]
    pub quantity: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Cut as `AxB`.
    #[arg(long)]
    pub cut: BipartiteCut,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A message with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn context(self, what: impl std::fmt::Display) -> Self {
        Self {
            code: self.code,
            message: format!("{what}: {}", self.message),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_validation() { EXIT_VALIDATION } else { EXIT_COMPUTATION },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Compute(a) => compute(a, out),
        Command::Extend(a) => extend(a, out),
        Command::Suite(a) => suite(a, out, err),
        Command::Aep(a) => aep(a, out),
        Command::Schmidt(a) => schmidt(a, out),
        Command::ListSuites => {
            let listing = serde_json::to_value(suites()).map_err(Error::from)?;
            print_json(out, &listing)?;
            Ok(EXIT_OK)
        }
    }
}

fn load_state(flag: &str, path: &Path) -> Result<DensityState, Failure> {
    let what = format!("--{flag} {}", path.display());
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(e.to_string()).context(&what))?;
    parse_state(&text).map_err(|e| Failure::from(e).context(&what))
}

/// Rank-one normalized state as a vector, if it is one.
fn as_pure(rho: &DensityState) -> Option<PureState> {
    if !rho.is_normalized() {
        return None;
    }
    let e = rho.eigen();
    let rest: f64 = e.eigenvalues.iter().skip(1).map(|x| x.abs()).sum();
    if (e.max_eigenvalue() - 1.0).abs() <= PURE_TOL && rest <= PURE_TOL {
        PureState::normalize(e.vector(0)).ok()
    } else {
        None
    }
}

/// Rounds every floating-point number to 12 significant digits.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map_or(Value::Null, |x| json!(round_sig12(x))),
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(&round_numbers(v.clone())).map_err(Error::from)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Prints the record and, with `--out`, writes it to the file as well.
fn emit(out: &mut dyn Write, output: &OutputArgs, record: Value) -> Result<i32, Failure> {
    let record = round_numbers(record);
    if let Some(path) = &output.out {
        let text = serde_json::to_string_pretty(&record).map_err(Error::from)?;
        std::fs::write(path, text + "\n").map_err(|e| Failure::from(e).context(path.display()))?;
    }
    print_json(out, &record)?;
    Ok(EXIT_OK)
}

fn alpha_json(alpha: Option<f64>) -> Value {
    alpha.map_or(Value::Null, crate::divergence::ext_to_json)
}

/// A `compute` target.
enum Quantity {
    Divergence(Divergence),
    InformationSpectrum(f64),
    HypothesisTesting(f64),
    MinEpsilonLower(f64),
}

impl Quantity {
    fn parse(name: &str, alpha: Option<f64>, epsilon: Option<f64>) -> Result<Self, Failure> {
        let one_shot = matches!(name, "ds" | "dh" | "dmin-epsilon");
        if one_shot {
            if alpha.is_some() {
                return Err(Failure::usage(format!("--alpha does not apply to {name}")));
            }
            let eps = epsilon.ok_or_else(|| Failure::usage(format!("--epsilon is required for {name}")))?;
            return Ok(match name {
                "ds" => Quantity::InformationSpectrum(eps),
                "dh" => Quantity::HypothesisTesting(eps),
                _ => Quantity::MinEpsilonLower(eps),
            });
        }
        if epsilon.is_some() {
            return Err(Failure::usage(format!("--epsilon does not apply to {name}")));
        }
        let d = Divergence::parse(name, alpha)?;
        if alpha.is_some() && d.alpha().is_none() {
            return Err(Failure::usage(format!("--alpha does not apply to {name}")));
        }
        Ok(Quantity::Divergence(d))
    }

    fn evaluate(&self, rho: &DensityState, sigma: &DensityState) -> crate::Result<DivergenceValue> {
        match *self {
            Quantity::Divergence(d) => d.evaluate(rho, sigma),
            Quantity::InformationSpectrum(e) => d_s_epsilon(rho, sigma, e),
            Quantity::HypothesisTesting(e) => d_h_epsilon(rho, sigma, e),
            Quantity::MinEpsilonLower(e) => d_min_epsilon_lower(rho, sigma, e),
        }
    }
}

fn same_dim(rho: &DensityState, sigma: &DensityState) -> Result<(), Failure> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        }
        .into());
    }
    Ok(())
}

fn pair_diagnostics(rho: &DensityState, sigma: &DensityState) -> Result<Value, Failure> {
    Ok(json!({
        "dim": rho.dim(),
        "rho_trace": rho.trace(),
        "sigma_trace": sigma.trace(),
        "support_contained": supports_contained(rho, sigma)?,
    }))
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    a.output.require_json()?;
    let quantity = Quantity::parse(&a.divergence, a.alpha, a.epsilon)?;
    let rho = load_state("rho", &a.rho)?;
    let sigma = load_state("sigma", &a.sigma)?;
    same_dim(&rho, &sigma)?;
    let value = quantity.evaluate(&rho, &sigma)?;
    let mut record = json!({
        "divergence": a.divergence,
        "alpha": alpha_json(a.alpha),
        "value": value,
        "diagnostics": pair_diagnostics(&rho, &sigma)?,
    });
    if let Some(eps) = a.epsilon {
        record["epsilon"] = json!(eps);
    }
    emit(out, &a.output, record)
}

fn extend(a: ExtendArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    a.output.require_json()?;
    let strategy = match (a.kind, a.strategy) {
        (ExtensionKind::Subnorm, None) => None,
        (ExtensionKind::Subnorm, Some(_)) => return Err(Failure::usage("--strategy does not apply to subnorm")),
        (ExtensionKind::MaximalClassical, s @ (None | Some(Strategy::Ansatz | Strategy::Search | Strategy::Pure))) => {
            Some(s.unwrap_or(Strategy::Ansatz))
        }
        (ExtensionKind::MinimalClassical, s @ (None | Some(Strategy::Pencil | Strategy::Random))) => {
            Some(s.unwrap_or(Strategy::Pencil))
        }
        (kind, Some(s)) => {
            let kind = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let s = s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            return Err(Failure::usage(format!("--strategy {s} does not apply to {kind}")));
        }
    };
    if a.trials.is_some() && !matches!(strategy, Some(Strategy::Search | Strategy::Random)) {
        return Err(Failure::usage("--trials applies only to the search and random strategies"));
    }
    let classical = match a.kind {
        ExtensionKind::Subnorm => None,
        _ => Some(ClassicalDivergence::parse(&a.divergence, a.alpha)?),
    };
    let subnorm = match a.kind {
        ExtensionKind::Subnorm => Some(SubnormTarget::parse(&a.divergence, a.alpha)?),
        _ => None,
    };

    let rho = load_state("rho", &a.rho)?;
    let sigma = load_state("sigma", &a.sigma)?;
    same_dim(&rho, &sigma)?;
    let trials = a.trials.unwrap_or(1000);
    let bound = match (subnorm, classical, strategy) {
        (Some(target), _, _) => target.evaluate(&rho, &sigma)?,
        (_, Some(kind), Some(Strategy::Ansatz)) => maximal_classical_extension_ansatz(kind, &rho, &sigma)?,
        (_, Some(kind), Some(Strategy::Search)) => {
            maximal_classical_extension_search(kind, &rho, &sigma, trials, a.seed)?
        }
        (_, Some(kind), Some(Strategy::Pure)) => {
            let psi = as_pure(&rho).ok_or_else(|| Failure::usage("--strategy pure needs a rank-one --rho"))?;
            maximal_classical_extension_pure(kind, &psi, &sigma)?
        }
        (_, Some(kind), Some(Strategy::Pencil)) => {
            minimal_classical_extension_lower(kind, &rho, &sigma, &MeasurementStrategy::PencilEigenbasis)?
        }
        (_, Some(kind), Some(Strategy::Random)) => {
            let strategy = MeasurementStrategy::RandomProjective {
                count: trials,
                seed: a.seed,
            };
            minimal_classical_extension_lower(kind, &rho, &sigma, &strategy)?
        }
        _ => unreachable!("flag combinations are validated above"),
    };
    let kind = a.kind.to_possible_value().map(|v| v.get_name().to_string());
    let strategy = strategy.and_then(|s| s.to_possible_value()).map(|v| v.get_name().to_string());
    let record = json!({
        "kind": kind,
        "divergence": a.divergence,
        "alpha": alpha_json(a.alpha),
        "strategy": strategy,
        "value": bound.value,
        "direction": bound.direction,
        "witness": bound.witness,
        "diagnostics": pair_diagnostics(&rho, &sigma)?,
    });
    emit(out, &a.output, record)
}

/// A subnormalized extension target.
enum SubnormTarget {
    TraceDistance,
    Fidelity,
    PurifiedDistance,
    Umegaki,
    DMax,
    Embedded(Divergence),
}

impl SubnormTarget {
    fn parse(name: &str, alpha: Option<f64>) -> Result<Self, Failure> {
        let closed = match name {
            "generalized-trace-distance" => Some(SubnormTarget::TraceDistance),
            "generalized-fidelity" => Some(SubnormTarget::Fidelity),
            "purified-distance" => Some(SubnormTarget::PurifiedDistance),
            "extended-umegaki" => Some(SubnormTarget::Umegaki),
            "extended-dmax" => Some(SubnormTarget::DMax),
            _ => None,
        };
        match closed {
            Some(_) if alpha.is_some() => Err(Failure::usage(format!("--alpha does not apply to {name}"))),
            Some(t) => Ok(t),
            None => Ok(SubnormTarget::Embedded(Divergence::parse(name, alpha)?)),
        }
    }

    fn evaluate(&self, rho: &DensityState, sigma: &DensityState) -> crate::Result<ExtensionBound> {
        let (rho, sigma) = (rho.as_subnormalized(), sigma.as_subnormalized());
        let value = match self {
            SubnormTarget::TraceDistance => generalized_trace_distance(&rho, &sigma)?,
            SubnormTarget::Fidelity => generalized_fidelity(&rho, &sigma)?,
            SubnormTarget::PurifiedDistance => purified_distance(&rho, &sigma)?,
            SubnormTarget::Umegaki => extended_umegaki(&rho, &sigma)?,
            SubnormTarget::DMax => extended_d_max(&rho, &sigma)?,
            SubnormTarget::Embedded(d) => extend_subnormalized(d, &rho, &sigma)?,
        };
        Ok(ExtensionBound::new(
            value,
            crate::extension::Direction::Exact,
            crate::extension::Witness::None,
        ))
    }
}

/// `KEY=VALUE` with the value read as JSON when possible.
fn parse_extra(raw: &str) -> Result<(String, Value), Failure> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Failure::usage(format!("--extra expects KEY=VALUE, found {raw:?}")))?;
    let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
    Ok((key.trim().to_string(), value))
}

fn suite(a: SuiteArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if a.output.format.is_some() && a.output.out.is_none() {
        return Err(Failure::usage("--format needs --out"));
    }
    let mut config = SuiteConfig::defaults(&a.name, a.seed)?;
    if let Some(t) = a.trials {
        config.trials = t;
    }
    if let Some(d) = a.dims {
        config.dims = d;
    }
    if let Some(s) = a.slack {
        config.slack = s;
    }
    for raw in &a.extra {
        let (k, v) = parse_extra(raw)?;
        config = config.with_extra(&k, v);
    }
    config.validate()?;
    let report = run_suite(&config)?;
    if let Some(path) = &a.output.out {
        let written = match a.output.format() {
            Format::Json => serde_json::to_value(&report)
                .map_err(Error::from)
                .and_then(|v| Ok(serde_json::to_string_pretty(&round_numbers(v))?))
                .and_then(|text| Ok(std::fs::write(path, text + "\n")?)),
            Format::Csv => report.write_csv_file(path),
        };
        written.map_err(|e| Failure::from(e).context(path.display()))?;
    }
    writeln!(
        out,
        "{}: {} (max violation {})",
        report.suite,
        report.summary(),
        crate::property::report::format_value(report.aggregate.max_violation)
    )?;
    for r in report.records.iter().filter(|r| !r.pass).take(10) {
        let cause = r.error.clone().unwrap_or_else(|| r.worst_check.clone());
        writeln!(
            err,
            "trial {} (seed {}, dim {}): {} = {}",
            r.trial,
            r.seed,
            r.dim,
            cause,
            crate::property::report::format_value(r.slack)
        )?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_SUITE_FAILURE })
}

fn aep(a: AepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let quantity = match a.quantity.as_str() {
        "ds" | "dh" if a.alpha.is_some() => {
            return Err(Failure::usage(format!("--alpha does not apply to {}", a.quantity)))
        }
        "ds" => RateQuantity::InformationSpectrum { epsilon: a.epsilon },
        "dh" => RateQuantity::HypothesisTesting { epsilon: a.epsilon },
        name => RateQuantity::Divergence(Divergence::parse(name, a.alpha)?),
    };
    let rho = match &a.rho {
        Some(p) => load_state("rho", p)?,
        None => DensityState::from_diagonal(&[0.9, 0.1])?,
    };
    let sigma = match &a.sigma {
        Some(p) => load_state("sigma", p)?,
        None => DensityState::from_diagonal(&[0.5, 0.5])?,
    };
    same_dim(&rho, &sigma)?;
    let reference = umegaki(&rho, &sigma, DEFAULT_CUTOFF)?.value();
    let trace = regularized_rate(&quantity, &rho, &sigma, a.n_max)?;
    let rows: Vec<(usize, f64, f64)> = trace.points.iter().map(|p| (p.n, p.rate, (p.rate - reference).abs())).collect();
    let format = a.output.format();
    let csv_text = || -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "rate", "gap"]).map_err(Error::from)?;
        for &(n, rate, gap) in &rows {
            let cells = [n.to_string(), fmt_ext(rate), fmt_ext(gap)];
            w.write_record(&cells).map_err(Error::from)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    };
    let points: Vec<Value> = rows
        .iter()
        .map(|&(n, rate, gap)| json!({"n": n, "rate": crate::divergence::ext_to_json(rate), "gap": crate::divergence::ext_to_json(gap)}))
        .collect();
    let record = round_numbers(json!({
        "quantity": a.quantity,
        "alpha": alpha_json(a.alpha),
        "epsilon": a.epsilon,
        "relative_entropy": reference,
        "points": points,
    }));
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&record).map_err(Error::from)? + "\n",
        Format::Csv => csv_text()?,
    };
    match &a.output.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::from(e).context(path.display()))?;
            let (first, last) = (rows.first(), rows.last());
            if let (Some(f), Some(l)) = (first, last) {
                writeln!(out, "gap {} at n = {}, {} at n = {}", fmt_ext(f.2), f.0, fmt_ext(l.2), l.0)?;
            }
        }
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn fmt_ext(v: f64) -> String {
    crate::property::report::format_value(DivergenceValue::new(v))
}

fn schmidt(a: SchmidtArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    a.output.require_json()?;
    let rho = load_state("state", &a.state)?;
    a.cut.check(rho.dim())?;
    let mut record = Map::new();
    record.insert("cut".into(), json!(a.cut.to_string()));
    record.insert(
        "min_partial_transpose_eigenvalue".into(),
        json!(min_partial_transpose_eigenvalue(&rho, a.cut)),
    );
    match as_pure(&rho) {
        Some(psi) => {
            let data = schmidt_decompose(&psi, a.cut)?;
            let entropy = crate::entangle::PureMonotone::EntanglementEntropy.on_schmidt(&data);
            record.insert("pure".into(), json!(true));
            record.insert("schmidt_rank".into(), json!(data.rank));
            record.insert("coefficients".into(), json!(data.coefficients));
            record.insert("entanglement_entropy".into(), json!(entropy));
            record.insert("schmidt_number".into(), json!(data.rank));
            record.insert("method".into(), json!("schmidt-rank"));
        }
        None => {
            let number = schmidt_number_ppt(&rho, a.cut)?;
            record.insert("pure".into(), json!(false));
            record.insert("schmidt_number".into(), json!(number));
            record.insert("method".into(), json!("ppt"));
        }
    }
    emit(out, &a.output, Value::Object(record))
}
