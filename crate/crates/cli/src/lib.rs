//! Batch driver for `rectify-core`.
//!
//! Every invocation runs one command and writes a single JSON report
//! `{command, status, payload, diagnostics}` to standard output (or
//! `--output`), plus a one-line summary on standard error. Exit status is 0
//! on pass, 1 on fail and 2 on input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rectify_core::json::{self, Json};
use rectify_core::sampling::Sampler;
use rectify_core::{
    barycentric_combine, canonicalize, check_conditions, common_point,
    decompose_quaternionic, determine_family, fit_bundle, lines_subspace, synthesize_rectifier,
    verify_rounds_lines, BundleDescriptor, Circle, CommonPoint, Error, FitOutcome,
    FractionalTransform, Orientation, Rational, Scalar, Side, VectorQuadraticMap,
};

#[derive(Parser, Debug, Clone)]
#[command(name = "rectify", version, about = "Rectifiable bundles of circles through the origin")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check the cone conditions on Γ and report λ and μ.
    Check,
    /// Gauge representative of Γ with (Γ(x), x) ≡ 0.
    Canonicalize,
    /// Quaternionic family of Γ in ℝ⁴.
    Family,
    /// Write Γ as A(x)x or xA(x); includes the line kernel and a center table.
    Decompose,
    /// Second common point of the bundle of Γ, if any.
    CommonPoint,
    /// Circles of a bundle descriptor at sampled directions.
    Centers,
    /// Subspace swept by the straight lines of a bundle descriptor.
    Lines,
    /// Parameters of a line-rounding map for Γ.
    Synthesize,
    /// Check numerically that a transform, or the map synthesized for Γ, rounds lines.
    Verify,
    /// Recover a bundle descriptor from sampled circles.
    Fit,
    /// Barycentric combination of two bundle descriptors.
    Combine,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Canonicalize => "canonicalize",
            Command::Family => "family",
            Command::Decompose => "decompose",
            Command::CommonPoint => "common-point",
            Command::Centers => "centers",
            Command::Lines => "lines",
            Command::Synthesize => "synthesize",
            Command::Verify => "verify",
            Command::Fit => "fit",
            Command::Combine => "combine",
        }
    }

    fn default_backend(self) -> Backend {
        match self {
            Command::Verify | Command::Fit => Backend::Float,
            _ => Backend::Exact,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideChoice {
    Left,
    Right,
    Auto,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Input file; repeat for commands taking several. Reads stdin when absent or `-`.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    /// Report destination; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0.2)]
    pub radius: f64,
    /// Number of sampled directions.
    #[arg(long, global = true, default_value_t = 30)]
    pub directions: usize,
    #[arg(long, global = true, default_value_t = 24)]
    pub samples_per_line: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = SideChoice::Auto)]
    pub side: SideChoice,
    /// Weight `t` of the first descriptor in `combine`, e.g. `1/3`.
    #[arg(long, global = true, default_value = "1/2")]
    pub weight: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Value,
    pub summary: String,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status.name(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    diagnostics: Value,
    summary: String,
}

impl Outcome {
    fn pass(payload: Value, summary: impl Into<String>) -> Self {
        Self {
            status: Status::Pass,
            payload,
            diagnostics: json!({}),
            summary: summary.into(),
        }
    }

    fn fail(payload: Value, diagnostics: Value, summary: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            payload,
            diagnostics,
            summary: summary.into(),
        }
    }
}

/// Errors that mean "the mathematical check did not hold" rather than "the
/// input was unusable".
fn failure_from(err: &Error) -> Option<Outcome> {
    let diagnostics = match err {
        Error::ConditionViolation { gamma_x, gamma_gamma } => json!({
            "remainders": {
                "gamma_x": json::remainder(gamma_x),
                "gamma_gamma": json::remainder(gamma_gamma),
            }
        }),
        Error::NotParallel { remainder } => json!({ "remainders": json::remainder(remainder) }),
        Error::DecompositionFailure { side, remainder } => json!({
            "side": side,
            "remainders": json::remainder(remainder),
        }),
        Error::OrientationMismatch(a, b) => json!({ "orientations": [a, b] }),
        _ => return None,
    };
    let payload = match err {
        Error::ConditionViolation { .. } => json!({ "satisfied": false, "remainders": diagnostics["remainders"] }),
        _ => Value::Null,
    };
    let mut diagnostics = diagnostics;
    diagnostics["error"] = json!(err.to_string());
    Some(Outcome::fail(payload, diagnostics, err.to_string()))
}

fn error_report(command: &str, err: &Error) -> Report {
    let mut diagnostics = json!({ "error": err.to_string() });
    if let Error::Parse { field, .. } = err {
        diagnostics["field"] = json!(field);
    }
    Report {
        command: command.to_string(),
        status: Status::Error,
        payload: Value::Null,
        diagnostics,
        summary: err.to_string(),
    }
}

fn io_error(path: &str, err: impl std::fmt::Display) -> Error {
    Error::Parse {
        field: path.to_string(),
        message: err.to_string(),
    }
}

fn read_inputs(paths: &[PathBuf]) -> Result<Vec<Value>, Error> {
    let read_one = |label: &str, text: String| {
        serde_json::from_str::<Value>(&text).map_err(|e| io_error(label, format!("invalid JSON: {e}")))
    };
    if paths.is_empty() {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| io_error("<stdin>", e))?;
        return Ok(vec![read_one("<stdin>", text)?]);
    }
    paths
        .iter()
        .map(|p| {
            let label = p.display().to_string();
            let text = if label == "-" {
                let mut text = String::new();
                io::stdin().read_to_string(&mut text).map_err(|e| io_error("<stdin>", e))?;
                text
            } else {
                fs::read_to_string(p).map_err(|e| io_error(&label, e))?
            };
            read_one(&label, text)
        })
        .collect()
}

/// Accepts either a bare record or a report produced by this tool.
fn unwrap_report(value: &Value) -> &Value {
    match value.get("payload") {
        Some(payload) if value.get("command").is_some() => payload,
        _ => value,
    }
}

/// Looks for `key` inside a report payload, falling back to the value itself.
fn record<'a>(value: &'a Value, key: &str) -> &'a Value {
    let inner = unwrap_report(value);
    inner.get(key).unwrap_or(inner)
}

fn single(inputs: &[Value]) -> Result<&Value, Error> {
    match inputs {
        [one] => Ok(one),
        _ => Err(Error::Parse {
            field: "--input".into(),
            message: format!("expected one input, got {}", inputs.len()),
        }),
    }
}

fn parse_gamma<S: Scalar>(value: &Value) -> Result<VectorQuadraticMap<S>, Error> {
    VectorQuadraticMap::from_json(record(value, "gamma"))
}

fn parse_descriptor<S: Scalar>(value: &Value) -> Result<BundleDescriptor<S>, Error> {
    BundleDescriptor::from_json(record(value, "descriptor"))
}

fn parse_circles<S: Scalar>(value: &Value) -> Result<Vec<Circle<S>>, Error> {
    let items = record(value, "circles").as_array().ok_or_else(|| Error::Parse {
        field: "circles".into(),
        message: "expected an array of circles".into(),
    })?;
    items
        .iter()
        .enumerate()
        .map(|(k, c)| Circle::from_json(c).map_err(|e| e.at(&format!("[{k}]"))))
        .collect()
}

/// The four axes, the diagonal, then seeded random directions.
fn sample_directions<S: Scalar>(seed: u64, count: usize) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = (0..4).map(|k| rectify_core::scalar::basis(4, k)).collect();
    out.push(vec![S::one(); 4]);
    let mut sampler = Sampler::new(seed);
    while out.len() < count {
        out.push(sampler.nonzero_vector(4));
    }
    out.truncate(count.max(1));
    out
}

fn orientation_value(o: Option<Orientation>) -> Value {
    o.map_or(Value::Null, |o| json!(o.name()))
}

fn check<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<S>(single(inputs)?)?;
    let c = check_conditions(&gamma)?;
    Ok(Outcome::pass(
        json!({
            "satisfied": true,
            "lambda": json::vector(&c.lambda),
            "mu": json::poly(&c.mu),
            "mu_matrix": json::matrix(&c.mu_matrix()),
        }),
        format!("conditions hold in dimension {}", gamma.dim()),
    ))
}

fn canonical<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<S>(single(inputs)?)?;
    let g = canonicalize(&gamma)?;
    Ok(Outcome::pass(json!({ "gamma": g.to_json() }), "canonical representative computed"))
}

fn family<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<S>(single(inputs)?)?;
    let f = determine_family(&gamma)?;
    let summary = match f {
        Some(o) => format!("family: {o}"),
        None => "no quaternionic family".to_string(),
    };
    let payload = json!({ "family": orientation_value(f) });
    Ok(match f {
        Some(_) => Outcome::pass(payload, summary),
        None => Outcome::fail(payload.clone(), json!({}), summary),
    })
}

fn circle_table<S: Scalar>(d: &BundleDescriptor<S>, seed: u64, count: usize) -> Result<Vec<Value>, Error> {
    sample_directions::<S>(seed, count)
        .iter()
        .map(|x| d.circle(x).map(|c| c.to_json()))
        .collect()
}

fn decompose<S: Scalar>(inputs: &[Value], opts: &Options) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<S>(single(inputs)?)?;
    let fam = determine_family(&gamma)?;
    let side = match (opts.side, fam) {
        (SideChoice::Left, _) => Side::Left,
        (SideChoice::Right, _) => Side::Right,
        (SideChoice::Auto, Some(Orientation::Right)) => Side::Right,
        (SideChoice::Auto, _) => Side::Left,
    };
    let a = decompose_quaternionic(&gamma, side)?;
    let descriptor = match fam {
        Some(Orientation::Both) => {
            BundleDescriptor::new(Orientation::Both, decompose_quaternionic(&gamma, Side::Left)?.im())?
        }
        _ => {
            let o = match side {
                Side::Left => Orientation::Left,
                Side::Right => Orientation::Right,
            };
            BundleDescriptor::new(o, a.im())?
        }
    };
    let lines = lines_subspace(&a, side);
    Ok(Outcome::pass(
        json!({
            "side": side.name(),
            "family": orientation_value(fam),
            "A": a.to_json(),
            "descriptor": descriptor.to_json(),
            "lines": lines.iter().map(|v| json::vector(v)).collect::<Vec<_>>(),
            "circles": circle_table(&descriptor, opts.seed, opts.directions)?,
        }),
        format!("Γ(x) = {} with a {}-dimensional line kernel", match side {
            Side::Left => "A(x)·x",
            Side::Right => "x·A(x)",
        }, lines.len()),
    ))
}

fn common<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<S>(single(inputs)?)?;
    let (payload, summary) = match common_point(&gamma)? {
        CommonPoint::Point(p) => (json!({ "kind": "point", "point": json::vector(&p) }), "circles share a second point"),
        CommonPoint::AtInfinity => (json!({ "kind": "infinity" }), "every circle is a straight line"),
        CommonPoint::None => (json!({ "kind": "none" }), "no common point"),
    };
    Ok(Outcome::pass(payload, summary))
}

fn centers<S: Scalar>(inputs: &[Value], opts: &Options) -> Result<Outcome, Error> {
    let d = parse_descriptor::<S>(single(inputs)?)?;
    let circles = circle_table(&d, opts.seed, opts.directions)?;
    let n = circles.len();
    Ok(Outcome::pass(
        json!({ "descriptor": d.to_json(), "circles": circles }),
        format!("{n} circles"),
    ))
}

fn lines<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let d = parse_descriptor::<S>(single(inputs)?)?;
    let basis = lines_subspace(d.im_a(), d.primary_side());
    Ok(Outcome::pass(
        json!({ "lines": basis.iter().map(|v| json::vector(v)).collect::<Vec<_>>() }),
        format!("straight lines fill a {}-dimensional subspace", basis.len()),
    ))
}

fn synthesize(inputs: &[Value]) -> Result<Outcome, Error> {
    let gamma = parse_gamma::<Rational>(single(inputs)?)?;
    let map = synthesize_rectifier(&gamma)?;
    Ok(Outcome::pass(
        json!({
            "a": map.translation().map(json::vector),
            "reduced": map.reduced().to_json(),
            "mu": json::poly(map.mu()),
            "radius": if map.radius().is_finite() { json!(map.radius()) } else { json!("infinity") },
        }),
        format!("rounding map certified on radius {}", map.radius()),
    ))
}

fn verify(inputs: &[Value], opts: &Options) -> Result<Outcome, Error> {
    let input = record(single(inputs)?, "transform");
    let mut sampler = Sampler::new(opts.seed);
    let (report, extra) = if input.get("num").is_some() {
        let t = match opts.backend {
            Some(Backend::Exact) => FractionalTransform::<Rational>::from_json(input)?.to_f64(),
            _ => FractionalTransform::<f64>::from_json(input)?,
        };
        let dirs = sampler.directions(4, opts.directions);
        let r = verify_rounds_lines(&t, &dirs, opts.radius, opts.tol, opts.samples_per_line)?;
        (r, json!({ "source": "transform" }))
    } else {
        // the rounding map is built exactly and evaluated in floating point
        let gamma = parse_gamma::<Rational>(input)?;
        let map = synthesize_rectifier(&gamma)?;
        let dirs = sampler.directions(gamma.dim(), opts.directions);
        let r = verify_rounds_lines(&map, &dirs, opts.radius, opts.tol, opts.samples_per_line)?;
        let certified = if map.radius().is_finite() { json!(map.radius()) } else { json!("infinity") };
        (r, json!({ "source": "synthesized", "certified_radius": certified }))
    };
    let poles = report.lines.iter().filter(|l| l.pole).count();
    let summary = format!(
        "{} of {} lines rounded, max relative residual {:.3e}",
        report.lines.iter().filter(|l| l.passed).count(),
        report.lines.len(),
        report.max_residual
    );
    let mut payload = json::fit_report(&report);
    payload["source"] = extra["source"].clone();
    if let Some(r) = extra.get("certified_radius") {
        payload["certified_radius"] = r.clone();
    }
    Ok(if report.passed {
        Outcome::pass(payload, summary)
    } else {
        let diagnostics = json!({ "max_residual": report.max_residual, "poles": poles });
        Outcome::fail(payload, diagnostics, summary)
    })
}

fn fit<S: Scalar>(inputs: &[Value]) -> Result<Outcome, Error> {
    let circles = parse_circles::<S>(single(inputs)?)?;
    Ok(match fit_bundle(&circles)? {
        FitOutcome::Consistent(d) => {
            let summary = format!("{} circles fit a {} bundle", circles.len(), d.orientation());
            Outcome::pass(json!({ "descriptor": d.to_json() }), summary)
        }
        FitOutcome::Inconsistent {
            left_residual,
            right_residual,
        } => Outcome::fail(
            Value::Null,
            json!({ "left_residual": left_residual, "right_residual": right_residual }),
            "circles fit neither side",
        ),
    })
}

fn combine<S: Scalar>(inputs: &[Value], opts: &Options) -> Result<Outcome, Error> {
    let [first, second] = inputs else {
        return Err(Error::Parse {
            field: "--input".into(),
            message: format!("combine needs two inputs, got {}", inputs.len()),
        });
    };
    let first = parse_descriptor::<S>(first).map_err(|e| e.at("input[0]"))?;
    let second = parse_descriptor::<S>(second).map_err(|e| e.at("input[1]"))?;
    let t = S::parse(&opts.weight).map_err(|e| e.at("--weight"))?;
    let d = barycentric_combine(&first, &second, &t)?;
    check_conditions(&d.gamma())?;
    Ok(Outcome::pass(
        json!({ "descriptor": d.to_json(), "weight": json::scalar(&t) }),
        format!("combined {} bundle", d.orientation()),
    ))
}

macro_rules! by_backend {
    ($backend:expr, $f:ident ( $($arg:expr),* )) => {
        match $backend {
            Backend::Exact => $f::<Rational>($($arg),*),
            Backend::Float => $f::<f64>($($arg),*),
        }
    };
}

/// Runs one parsed command and builds its report.
pub fn execute(cli: &Cli) -> Report {
    let name = cli.command.name();
    let inputs = match read_inputs(&cli.options.input) {
        Ok(v) => v,
        Err(e) => return error_report(name, &e),
    };
    let backend = cli.options.backend.unwrap_or(cli.command.default_backend());
    let opts = &cli.options;
    let result = match cli.command {
        Command::Check => by_backend!(backend, check(&inputs)),
        Command::Canonicalize => by_backend!(backend, canonical(&inputs)),
        Command::Family => by_backend!(backend, family(&inputs)),
        Command::Decompose => by_backend!(backend, decompose(&inputs, opts)),
        Command::CommonPoint => by_backend!(backend, common(&inputs)),
        Command::Centers => by_backend!(backend, centers(&inputs, opts)),
        Command::Lines => by_backend!(backend, lines(&inputs)),
        Command::Synthesize => synthesize(&inputs),
        Command::Verify => verify(&inputs, opts),
        Command::Fit => by_backend!(backend, fit(&inputs)),
        Command::Combine => by_backend!(backend, combine(&inputs, opts)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => match failure_from(&e) {
            Some(o) => o,
            None => return error_report(name, &e),
        },
    };
    Report {
        command: name.to_string(),
        status: outcome.status,
        payload: outcome.payload,
        diagnostics: outcome.diagnostics,
        summary: outcome.summary,
    }
}

/// Parses arguments, runs the command, writes the report and returns the
/// process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = execute(&cli);
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n";
    let written = match &cli.options.output {
        Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "rectify: cannot write report: {e}");
        return 2;
    }
    let _ = writeln!(stderr, "{} {}: {}", report.command, report.status.name(), report.summary);
    report.status.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_unwrapped() {
        let report = json!({ "command": "decompose", "payload": { "descriptor": { "side": "left" } } });
        assert_eq!(record(&report, "descriptor"), &json!({ "side": "left" }));
        let bare = json!({ "side": "right" });
        assert_eq!(record(&bare, "descriptor"), &bare);
    }

    #[test]
    fn directions_start_with_the_axes() {
        let d = sample_directions::<Rational>(3, 7);
        assert_eq!(d.len(), 7);
        assert_eq!(d[2], rectify_core::scalar::basis(4, 2));
        assert_eq!(d, sample_directions::<Rational>(3, 7));
        assert_eq!(sample_directions::<Rational>(3, 2).len(), 2);
    }

    #[test]
    fn defaults_and_exit_codes() {
        let cli = Cli::try_parse_from(["rectify", "verify"]).unwrap();
        assert_eq!(cli.options.tol, 1e-8);
        assert_eq!(cli.options.radius, 0.2);
        assert_eq!(cli.options.directions, 30);
        assert_eq!(cli.options.samples_per_line, 24);
        assert_eq!(cli.command.default_backend(), Backend::Float);
        assert_eq!(Command::Check.default_backend(), Backend::Exact);
        let codes: Vec<i32> = [Status::Pass, Status::Fail, Status::Error].map(Status::exit_code).into();
        assert_eq!(codes, [0, 1, 2]);
    }
}
