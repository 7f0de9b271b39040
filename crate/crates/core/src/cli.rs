//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage or malformed input, `2` numerical
//! failure, `3` (`verify` only) configuration is not an equilibrium.

use std::io::{Read, Write};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Configuration;
use crate::equilibrium::{newton_solve, residual_norm, verify_theorem1};
use crate::error::Error;
use crate::flow::{default_init, estimate_rate, integrate, FlowOptions, InitStrategy, Termination};
use crate::operator::{eigenvalue, make_classical, ClassicalFamily, Domain, EquationSpec};
use crate::spectral::oracle_zeros;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_NOT_EQUILIBRIUM: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zeroflow", version, about = "Zeros of polynomial eigenfunctions by electrostatic particle flow")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the n zeros and print a JSON result.
    Solve(SolveArgs),
    /// Integrate the particle flow and write the trajectory as CSV.
    Flow(FlowArgs),
    /// Check whether a set of points is in equilibrium.
    Verify(VerifyArgs),
    /// Fit the exponential convergence rate of the flow.
    Rate(RateArgs),
    /// Time the solvers over a range of sizes, CSV output.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FamilyArg {
    Hermite,
    Legendre,
    Jacobi,
    Laguerre,
    Chebyshev1,
    Chebyshev2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Flow,
    Newton,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum InitArg {
    Equispaced,
    Seeded,
    Indexed,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SpecArgs {
    /// Named family.
    #[arg(long, value_enum, conflicts_with_all = ["p", "q"])]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Coefficients of p, ascending degree: p0,p1,p2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "q")]
    p: Option<Vec<f64>>,
    /// Coefficients of q, ascending degree: q0,q1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "p")]
    q: Option<Vec<f64>>,
    /// Domain `lo,hi` for raw coefficients (`inf`/`-inf` allowed). Defaults
    /// to the interval between the roots of p, or the half-line to the right
    /// of a single root, or the whole line.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    domain: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct InitArgs {
    #[arg(long, value_enum, default_value = "equispaced")]
    init: InitArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Explicit starting points, overriding `--init`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    start: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "spectral")]
    method: Method,
    #[command(flatten)]
    init: InitArgs,
    /// Residual tolerance (max-norm) for flow and Newton.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1e4)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Omit the wall-clock timestamp from the manifest.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Args)]
struct FlowArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    init: InitArgs,
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
    /// Stop early once the residual max-norm falls below this.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Keep every k-th accepted step (default 1 for n <= 10, else 10).
    #[arg(long)]
    stride: Option<usize>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// One point per line, or a JSON object with a `zeros` array; `-` reads
    /// stdin.
    points: String,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Debug, Args)]
struct RateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "seeded")]
    init: InitArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    start: Option<Vec<f64>>,
    #[arg(long, default_value_t = 200.0)]
    t_max: f64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_delimiter = ',', default_value = "10,20,50,100,200")]
    sizes: Vec<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "flow,newton,spectral")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

/// Failure carrying an exit code and a message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn numeric(err: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_NUMERIC,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a, stdout),
        Command::Flow(a) => cmd_flow(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdin, stdout),
        Command::Rate(a) => cmd_rate(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn spec_error(e: Error) -> Failure {
    Failure::usage(e.to_string())
}

impl SpecArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none() && self.p.is_none()
    }

    fn family(&self) -> Option<ClassicalFamily> {
        self.family.map(|f| match f {
            FamilyArg::Hermite => ClassicalFamily::Hermite,
            FamilyArg::Legendre => ClassicalFamily::Legendre,
            FamilyArg::Jacobi => ClassicalFamily::Jacobi {
                alpha: self.alpha,
                beta: self.beta,
            },
            FamilyArg::Laguerre => ClassicalFamily::Laguerre { alpha: self.alpha },
            FamilyArg::Chebyshev1 => ClassicalFamily::ChebyshevFirst,
            FamilyArg::Chebyshev2 => ClassicalFamily::ChebyshevSecond,
        })
    }

    fn build(&self) -> Result<EquationSpec, Failure> {
        if let Some(fam) = self.family() {
            return make_classical(fam).map_err(spec_error);
        }
        let (p, q) = match (&self.p, &self.q) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(Failure::usage("give --family or both --p and --q")),
        };
        if p.is_empty() || p.len() > 3 || q.is_empty() || q.len() > 2 {
            return Err(Failure::usage("--p takes up to 3 and --q up to 2 coefficients"));
        }
        let coef = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        let p_desc = [coef(p, 2), coef(p, 1), coef(p, 0)];
        let q_desc = [coef(q, 1), coef(q, 0)];
        let domain = match &self.domain {
            Some(d) if d.len() == 2 => Domain::new(d[0], d[1]).map_err(spec_error)?,
            Some(_) => return Err(Failure::usage("--domain takes lo,hi")),
            None => natural_domain(p_desc)?,
        };
        EquationSpec::new(p_desc, q_desc, domain).map_err(spec_error)
    }

    fn describe(&self) -> Value {
        match self.family() {
            Some(f) => serde_json::to_value(f).unwrap_or(Value::Null),
            None => json!({ "p": self.p, "q": self.q, "domain": self.domain }),
        }
    }
}

/// Interval between consecutive real roots of `p` used when `--domain` is
/// omitted.
fn natural_domain(p: [f64; 3]) -> Result<Domain, Failure> {
    let probe = EquationSpec::new(p, [0.0, 0.0], Domain::new(f64::MAX / 2.0, f64::MAX).map_err(spec_error)?)
        .map_err(spec_error)?;
    let roots = probe.p_roots();
    let d = match roots.as_slice() {
        [] => Ok(Domain::real_line()),
        [r] => Domain::new(*r, f64::INFINITY),
        [a, b] if a < b => Domain::new(*a, *b),
        [a, _] => Domain::new(*a, f64::INFINITY),
        _ => unreachable!("a quadratic has at most two roots"),
    };
    d.map_err(spec_error)
}

impl InitArgs {
    fn strategy(&self) -> InitStrategy {
        strategy_of(self.init, self.seed)
    }

    fn start(&self, spec: &EquationSpec, n: usize) -> Result<Configuration, Failure> {
        start_config(spec, n, self.start.as_deref(), self.strategy())
    }
}

fn strategy_of(init: InitArg, seed: u64) -> InitStrategy {
    match init {
        InitArg::Equispaced => InitStrategy::Equispaced,
        InitArg::Seeded => InitStrategy::Seeded(seed),
        InitArg::Indexed => InitStrategy::Indexed,
    }
}

fn start_config(
    spec: &EquationSpec,
    n: usize,
    explicit: Option<&[f64]>,
    strategy: InitStrategy,
) -> Result<Configuration, Failure> {
    match explicit {
        Some(points) => {
            if points.len() != n {
                return Err(Failure::usage(format!("--start has {} points, --n is {n}", points.len())));
            }
            Configuration::in_domain(points.to_vec(), &spec.domain()).map_err(spec_error)
        }
        None => default_init(spec, n, strategy).map_err(spec_error),
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        Err(Failure::usage("--n must be at least 1"))
    } else {
        Ok(())
    }
}

fn manifest(spec_args: &SpecArgs, spec: &EquationSpec, n: usize, method: &str, options: Value, seed: Option<u64>, timestamp: bool) -> Value {
    let ts = timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    json!({
        "spec": spec_args.describe(),
        "equation": spec,
        "n": n,
        "method": method,
        "options": options,
        "seed": seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "timestamp": ts,
    })
}

fn write_json(out: &mut dyn Write, value: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> CmdResult {
    check_n(a.n)?;
    let spec = a.spec.build()?;
    let (zeros, method, options, seed) = match a.method {
        Method::Spectral => (oracle_zeros(&spec, a.n).map_err(Failure::numeric)?, "spectral", json!({}), None),
        Method::Newton => {
            let start = a.init.start(&spec, a.n)?;
            let z = newton_solve(&spec, &start, a.tol, a.max_iter).map_err(Failure::numeric)?;
            let opts = json!({ "tol": a.tol, "max_iter": a.max_iter, "init": a.init });
            (z, "newton", opts, Some(a.init.seed))
        }
        Method::Flow => {
            let start = a.init.start(&spec, a.n)?;
            let mut opts = FlowOptions::for_size(a.n);
            opts.t_max = a.t_max;
            opts.residual_tol = a.tol;
            let traj = integrate(&spec, &start, &opts).map_err(Failure::numeric)?;
            if !traj.converged() {
                return Err(Failure::numeric(format!(
                    "flow ended with {:?} at t = {} (residual {:e})",
                    traj.terminated_by,
                    traj.last().t,
                    traj.last().residual_norm
                )));
            }
            let z = traj.final_config().clone();
            (z, "flow", json!({ "flow": opts, "init": a.init }), Some(a.init.seed))
        }
    };
    let result = json!({
        "zeros": zeros,
        "lambda": eigenvalue(&spec, a.n),
        "residual_norm": residual_norm(&spec, &zeros),
        "method": method,
        "manifest": manifest(&a.spec, &spec, a.n, method, options, seed, !a.no_timestamp),
    });
    write_json(out, &result)?;
    Ok(EXIT_OK)
}

fn cmd_flow(a: FlowArgs, out: &mut dyn Write) -> CmdResult {
    check_n(a.n)?;
    let spec = a.spec.build()?;
    let start = a.init.start(&spec, a.n)?;
    let mut opts = FlowOptions::for_size(a.n);
    opts.t_max = a.t_max;
    opts.residual_tol = a.tol;
    if let Some(s) = a.stride {
        opts.snapshot_stride = s;
    }
    if let Some(r) = a.rel_tol {
        opts.rel_tol = r;
    }
    if let Some(t) = a.abs_tol {
        opts.abs_tol = t;
    }
    let traj = integrate(&spec, &start, &opts).map_err(spec_error)?;

    let mut csv = String::new();
    csv.push('t');
    for i in 1..=a.n {
        csv.push_str(&format!(",x{i}"));
    }
    csv.push('\n');
    for s in &traj.snapshots {
        csv.push_str(&format!("{:.16e}", s.t));
        for x in s.config.points() {
            csv.push_str(&format!(",{x:.16e}"));
        }
        csv.push('\n');
    }
    match &a.output {
        Some(path) => std::fs::write(path, csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    log::info!(
        "flow: {:?} at t = {} after {} steps, residual {:e}",
        traj.terminated_by,
        traj.last().t,
        traj.accepted_steps,
        traj.last().residual_norm
    );
    match traj.terminated_by {
        Termination::Failed(kind) => Err(Failure::numeric(format!("flow failed: {kind:?}"))),
        _ => Ok(EXIT_OK),
    }
}

/// Points from a list of numbers (blank lines and `#` comments skipped) or a
/// JSON object with a `zeros` array. Returns the points and the embedded
/// equation, if any.
fn parse_points(text: &str) -> Result<(Vec<f64>, Option<EquationSpec>), Failure> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| Failure::usage(format!("bad JSON: {e}")))?;
        let zeros = v
            .get("zeros")
            .and_then(Value::as_array)
            .ok_or_else(|| Failure::usage("JSON input lacks a `zeros` array"))?
            .iter()
            .map(|z| z.as_f64().ok_or_else(|| Failure::usage("non-numeric zero")))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = match v.pointer("/manifest/equation") {
            Some(e) => Some(
                serde_json::from_value::<EquationSpec>(e.clone())
                    .map_err(|e| Failure::usage(format!("bad manifest equation: {e}")))?,
            ),
            None => None,
        };
        return Ok((zeros, spec));
    }
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let x: f64 = line
            .parse()
            .map_err(|_| Failure::usage(format!("line {}: not a number: {line:?}", lineno + 1)))?;
        pts.push(x);
    }
    Ok((pts, None))
}

fn cmd_verify(a: VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let mut text = String::new();
    if a.points == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&a.points)?;
    }
    let (points, embedded) = parse_points(&text)?;
    let spec = match (a.spec.is_empty(), embedded) {
        (true, Some(s)) => {
            // re-validate what came from the file
            EquationSpec::new(s.p_coeffs(), s.q_coeffs(), s.domain()).map_err(spec_error)?
        }
        _ => a.spec.build()?,
    };
    let config = Configuration::in_domain(points, &spec.domain()).map_err(spec_error)?;
    let rep = verify_theorem1(&spec, &config, a.tol);
    write_json(
        out,
        &json!({
            "n": config.len(),
            "residual_norm": rep.residual_norm,
            "operator_defect": rep.operator_defect,
            "lambda": rep.lambda_recovered,
            "is_equilibrium": rep.is_equilibrium,
            "tol": a.tol,
        }),
    )?;
    Ok(if rep.is_equilibrium { EXIT_OK } else { EXIT_NOT_EQUILIBRIUM })
}

/// Tight-tolerance flow options for rate fitting: every step stored and the
/// run continued until the error is far below the fit window.
fn rate_options(t_max: f64) -> FlowOptions {
    FlowOptions {
        t_max,
        residual_tol: 1e-12,
        initial_step: 1e-3,
        max_steps: 2_000_000,
        snapshot_stride: 1,
        rel_tol: 1e-12,
        abs_tol: 1e-14,
    }
}

fn cmd_rate(a: RateArgs, out: &mut dyn Write) -> CmdResult {
    check_n(a.n)?;
    let spec = a.spec.build()?;
    let start = start_config(&spec, a.n, a.start.as_deref(), strategy_of(a.init, a.seed))?;
    let reference = oracle_zeros(&spec, a.n).map_err(Failure::numeric)?;
    let traj = integrate(&spec, &start, &rate_options(a.t_max)).map_err(Failure::numeric)?;
    let report = estimate_rate(&traj, &reference).map_err(Failure::numeric)?;
    write_json(
        out,
        &json!({
            "n": a.n,
            "spec": a.spec.describe(),
            "start": start,
            "report": report,
            "ratio": report.sigma_hat / report.theoretical_gap,
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let spec = a.spec.build()?;
    writeln!(out, "n,method,wall_time_s,final_residual,max_dev_vs_spectral,status")?;
    for &n in &a.sizes {
        check_n(n)?;
        let reference = oracle_zeros(&spec, n).ok();
        for &method in &a.methods {
            let t0 = Instant::now();
            let result: Result<Configuration, String> = match method {
                Method::Spectral => oracle_zeros(&spec, n).map_err(|e| e.to_string()),
                Method::Newton => default_init(&spec, n, InitStrategy::Equispaced)
                    .and_then(|s| newton_solve(&spec, &s, a.tol, 200))
                    .map_err(|e| e.to_string()),
                Method::Flow => default_init(&spec, n, InitStrategy::Equispaced)
                    .and_then(|s| {
                        let mut o = FlowOptions::for_size(n);
                        o.t_max = 1e4;
                        o.residual_tol = a.tol;
                        integrate(&spec, &s, &o)
                    })
                    .map_err(|e| e.to_string())
                    .and_then(|tr| {
                        if tr.converged() {
                            Ok(tr.final_config().clone())
                        } else {
                            Err(format!("{:?}", tr.terminated_by))
                        }
                    }),
            };
            let elapsed = t0.elapsed().as_secs_f64();
            let name = match method {
                Method::Flow => "flow",
                Method::Newton => "newton",
                Method::Spectral => "spectral",
            };
            match result {
                Ok(z) => {
                    let dev = reference.as_ref().map_or(f64::NAN, |r| z.max_distance(r));
                    writeln!(
                        out,
                        "{n},{name},{elapsed:.6e},{:.16e},{dev:.16e},ok",
                        residual_norm(&spec, &z)
                    )?;
                }
                Err(e) => {
                    log::warn!("bench {name} n = {n}: {e}");
                    writeln!(out, "{n},{name},{elapsed:.6e},NaN,NaN,failed")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("zeroflow").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn natural_domains() {
        assert_eq!(natural_domain([0.0, 1.0, 0.0]).unwrap(), Domain::new(0.0, f64::INFINITY).unwrap());
        assert_eq!(natural_domain([-1.0, 0.0, 1.0]).unwrap(), Domain::new(-1.0, 1.0).unwrap());
        assert_eq!(natural_domain([0.0, 0.0, 2.0]).unwrap(), Domain::real_line());
    }

    #[test]
    fn parse_point_lists() {
        let (p, s) = parse_points("# zeros\n-1\n\n 1.5 \n").unwrap();
        assert_eq!(p, vec![-1.0, 1.5]);
        assert!(s.is_none());
        assert!(parse_points("1\nabc\n").is_err());
        let (p, _) = parse_points(r#"{"zeros": [0.5, 2.0]}"#).unwrap();
        assert_eq!(p, vec![0.5, 2.0]);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["solve"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["solve", "--n", "3"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["solve", "--family", "legendre", "--n", "0"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["solve", "--family", "jacobi", "--alpha", "-2", "--n", "2"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn hermite_newton_one() {
        let (code, out, _) = run_str(&["solve", "--family", "hermite", "--n", "1", "--method", "newton"], "");
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["zeros"][0].as_f64().unwrap(), 0.0);
        assert_eq!(v["lambda"].as_f64().unwrap(), 1.0);
    }

    #[test]
    fn verify_from_stdin() {
        let s = 1.0 / 3f64.sqrt();
        let input = format!("{}\n{}\n", -s, s);
        let (code, out, _) = run_str(&["verify", "--family", "legendre", "-"], &input);
        assert_eq!(code, EXIT_OK, "{out}");
        let (code, _, _) = run_str(&["verify", "--family", "legendre", "-"], "-0.5\n0.6\n");
        assert_eq!(code, EXIT_NOT_EQUILIBRIUM);
        let (code, _, _) = run_str(&["verify", "--family", "legendre", "-"], "0.6\n-0.5\n");
        assert_eq!(code, EXIT_USAGE);
    }
}
