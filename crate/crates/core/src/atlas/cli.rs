//! The `ere` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use super::curves::{curve_table, trace_curves, CurveOptions};
use super::mass::{mass_table, scan_mass_plane};
use super::output::{fmt_opt, Table};
use super::scan::{linspace, scan_alpha_e, scan_table, ScanOptions};
use super::selftest::{run_selftest, selftest_table};
use super::symmetric::{find_threshold, symmetric_sweep, symmetric_table};
use crate::error::{Error, Result};
use crate::kepler_cc::{CentralConfiguration, MassTriple};
use crate::maslov::{alpha_of_beta, index_via_splitting, morse_index, GalerkinOptions};
use crate::monodromy::{period_map, SymplecticPath};
use crate::reduction::ReducedParams;
use crate::spectral::analyze;

const SUBCOMMANDS: [&str; 9] =
    ["cc", "monodromy", "index", "classify", "scan-ae", "scan-mass", "trace-curves", "symmetric", "selftest"];

#[derive(Debug, Parser)]
#[command(name = "ere", version, about = "Linear stability of elliptic relative equilibria with Euler collinear primaries")]
#[command(args_override_self = true)]
struct Cli {
    /// Flat key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the central configuration for given masses.
    Cc(MassArgs),
    /// Period map of the linearized system.
    Monodromy(MonodromyArgs),
    /// omega-Morse index with the splitting-number cross-check.
    Index(IndexArgs),
    /// Normal form and stability verdict of the period map.
    Classify(PointArgs),
    /// Stability diagram over an (alpha, e) grid.
    ScanAe(ScanAeArgs),
    /// Stability map over the (m1, m3) mass plane.
    ScanMass(ScanMassArgs),
    /// Curves alpha_k, alpha_s, alpha_m at given eccentricities.
    TraceCurves(TraceArgs),
    /// Symmetric chain sweep over m2.
    Symmetric(SymmetricArgs),
    /// Run quick versions of the headline checks.
    Selftest,
}

#[derive(Debug, Args)]
struct MassArgs {
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m3: Option<f64>,
}

impl MassArgs {
    fn given(&self) -> bool {
        self.m1.is_some() || self.m2.is_some() || self.m3.is_some()
    }

    fn triple(&self) -> Result<MassTriple> {
        match (self.m1, self.m2, self.m3) {
            (Some(a), Some(b), Some(c)) => MassTriple::new(a, b, c),
            (None, Some(b), None) => MassTriple::symmetric(b),
            (Some(a), None, Some(c)) => MassTriple::from_outer(a, c),
            _ => Err(Error::InvalidInput("give m1, m2, m3; or m2 alone (symmetric); or m1 and m3".into())),
        }
    }
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Eigen-gap of D; alternatively give masses.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    e: f64,
    #[command(flatten)]
    masses: MassArgs,
}

impl PointArgs {
    fn params(&self) -> Result<ReducedParams> {
        match (self.alpha, self.masses.given()) {
            (Some(a), false) => ReducedParams::from_alpha(a, self.e),
            (None, true) => ReducedParams::from_configuration(&CentralConfiguration::solve(&self.masses.triple()?)?, self.e),
            _ => Err(Error::InvalidInput("give either --alpha or masses".into())),
        }
    }
}

#[derive(Debug, Args)]
struct MonodromyArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Emit the sampled path instead of the period map.
    #[arg(long)]
    path: bool,
}

#[derive(Debug, Args)]
struct GalerkinArgs {
    #[arg(long, default_value_t = 128)]
    n0: usize,
    #[arg(long, default_value_t = 1024)]
    n_max: usize,
}

impl GalerkinArgs {
    fn options(&self) -> GalerkinOptions {
        GalerkinOptions { n0: self.n0, n_max: self.n_max, ..Default::default() }
    }
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// Lagrangian parameter, alpha = sqrt(9 - beta).
    #[arg(long, conflicts_with = "alpha")]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    e: f64,
    /// Argument of omega in radians.
    #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
    omega_arg: f64,
    #[command(flatten)]
    galerkin: GalerkinArgs,
}

#[derive(Debug, Args)]
struct ScanAeArgs {
    #[arg(long, default_value_t = 0.0)]
    alpha_min: f64,
    #[arg(long, default_value_t = 3.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 301)]
    alpha_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    e_min: f64,
    #[arg(long, default_value_t = 0.9)]
    e_max: f64,
    #[arg(long, default_value_t = 101)]
    e_steps: usize,
    /// Skip the Galerkin index columns.
    #[arg(long)]
    no_indices: bool,
    #[command(flatten)]
    galerkin: GalerkinArgs,
}

#[derive(Debug, Args)]
struct ScanMassArgs {
    #[arg(long, default_value_t = 0.0)]
    m1_min: f64,
    #[arg(long, default_value_t = 1.0)]
    m1_max: f64,
    #[arg(long, default_value_t = 201)]
    m1_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    m3_min: f64,
    #[arg(long, default_value_t = 1.0)]
    m3_max: f64,
    #[arg(long, default_value_t = 201)]
    m3_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    e: f64,
}

#[derive(Debug, Args)]
struct TraceArgs {
    /// Comma-separated eccentricities.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    e: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    width: f64,
    #[arg(long)]
    no_polish: bool,
    #[command(flatten)]
    galerkin: GalerkinArgs,
}

#[derive(Debug, Args)]
struct SymmetricArgs {
    #[arg(long, default_value_t = 0.0)]
    e: f64,
    #[arg(long, default_value_t = 0.0)]
    m2_min: f64,
    #[arg(long, default_value_t = 0.999)]
    m2_max: f64,
    #[arg(long, default_value_t = 201)]
    m2_steps: usize,
    /// Bisect the stability flip to this width in m2.
    #[arg(long)]
    find_threshold: bool,
    #[arg(long, default_value_t = 1e-10)]
    width: f64,
}

/// What a command produced, before formatting.
struct Output {
    table: Table,
    json: Value,
    /// Exit code when the command itself ran; a failed self-test reports 2.
    code: i32,
}

impl Output {
    fn ok(table: Table, json: Value) -> Self {
        Self { table, json, code: 0 }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn cc(args: &MassArgs) -> Result<Output> {
    let cc = CentralConfiguration::solve(&args.triple()?)?;
    let params = ReducedParams::from_configuration(&cc, 0.0)?;
    let mut table = Table::new(&["body", "mass", "x", "y"]);
    for (i, (m, a)) in cc.all_masses().iter().zip(cc.positions.iter()).enumerate() {
        table.row(vec![(i + 1).to_string(), m.to_string(), a.x.to_string(), a.y.to_string()]);
    }
    table.comment(format!("x={} mu={} alpha={} residual={:e}", cc.x, cc.mu, params.alpha, cc.residuals().iter().fold(0.0f64, |a, b| a.max(*b))));
    let json = json!({ "configuration": to_json(&cc), "alpha": params.alpha, "d": to_json(&params.d), "residuals": cc.residuals() });
    Ok(Output::ok(table, json))
}

fn monodromy(args: &MonodromyArgs) -> Result<Output> {
    let params = args.point.params()?;
    let path: SymplecticPath = period_map(&params)?;
    if args.path {
        let mut header = vec!["theta".to_string()];
        header.extend((0..16).map(|k| format!("m{}{}", k / 4, k % 4)));
        let mut table = Table { header, ..Default::default() };
        table.comment(format!("alpha={} e={} residual={:e}", params.alpha, params.e, path.sympl_residual));
        for (t, m) in &path.samples {
            let mut row = vec![t.to_string()];
            row.extend((0..16).map(|k| m[(k / 4, k % 4)].to_string()));
            table.row(row);
        }
        let json = json!({ "alpha": params.alpha, "e": params.e, "samples": path.samples.iter().map(|(t, m)| json!({"theta": t, "matrix": to_json(m)})).collect::<Vec<_>>() });
        return Ok(Output::ok(table, json));
    }
    let mut header = vec!["alpha".to_string(), "e".to_string(), "residual".to_string(), "steps".to_string()];
    header.extend((0..16).map(|k| format!("m{}{}", k / 4, k % 4)));
    let mut row = vec![params.alpha.to_string(), params.e.to_string(), format!("{:e}", path.sympl_residual), path.steps.to_string()];
    row.extend((0..16).map(|k| path.period_map[(k / 4, k % 4)].to_string()));
    let mut table = Table { header, ..Default::default() };
    if path.unreliable {
        table.comment("symplectic residual above the reliability threshold");
    }
    table.row(row);
    let json = json!({ "alpha": params.alpha, "e": params.e, "residual": path.sympl_residual, "steps": path.steps, "unreliable": path.unreliable, "period_map": to_json(&path.period_map) });
    Ok(Output::ok(table, json))
}

fn index(args: &IndexArgs) -> Result<Output> {
    let alpha = match (args.alpha, args.beta) {
        (Some(a), None) => a,
        (None, Some(b)) => alpha_of_beta(b)?,
        _ => return Err(Error::InvalidInput("give --alpha or --beta".into())),
    };
    let omega = Complex64::from_polar(1.0, args.omega_arg);
    let opts = args.galerkin.options();
    let record = morse_index(alpha, args.e, omega, &opts)?;
    let i1 = morse_index(alpha, args.e, Complex64::new(1.0, 0.0), &opts)?;
    let m = period_map(&ReducedParams::from_alpha(alpha, args.e)?)?.period_map;
    let splitting = index_via_splitting(i1.i_omega, &m, omega);
    let mut table = Table::new(&["alpha", "e", "omega_re", "omega_im", "i_omega", "nu_omega", "n_used", "converged", "splitting"]);
    if let Err(err) = &splitting {
        table.comment(format!("splitting cross-check unavailable: {err}"));
    }
    let split = splitting.as_ref().ok().copied();
    table.row(vec![
        alpha.to_string(),
        args.e.to_string(),
        omega.re.to_string(),
        omega.im.to_string(),
        record.i_omega.to_string(),
        record.nu_omega.to_string(),
        record.n_used.to_string(),
        record.converged.to_string(),
        fmt_opt(split),
    ]);
    let json = json!({ "alpha": alpha, "e": args.e, "record": to_json(&record), "i1": i1.i_omega, "splitting": split });
    Ok(Output::ok(table, json))
}

fn classify(args: &PointArgs) -> Result<Output> {
    let params = args.params()?;
    let path = period_map(&params)?;
    let v = analyze(&path.period_map)?;
    let angles = v.normal_form.rotation_angles();
    let mut table = Table::new(&["alpha", "e", "form", "verdict", "region", "theta1", "theta2", "residual"]);
    table.row(vec![
        params.alpha.to_string(),
        params.e.to_string(),
        v.normal_form.to_string(),
        v.verdict.to_string(),
        fmt_opt(v.region),
        fmt_opt(angles.first()),
        fmt_opt(angles.get(1)),
        format!("{:e}", path.sympl_residual),
    ]);
    let json = json!({ "alpha": params.alpha, "e": params.e, "verdict": to_json(&v), "residual": path.sympl_residual });
    Ok(Output::ok(table, json))
}

fn scan_ae(args: &ScanAeArgs) -> Result<Output> {
    let opts = ScanOptions { galerkin: args.galerkin.options(), indices: !args.no_indices };
    let records = scan_alpha_e(
        &linspace(args.alpha_min, args.alpha_max, args.alpha_steps),
        &linspace(args.e_min, args.e_max, args.e_steps),
        &opts,
    );
    Ok(Output::ok(scan_table(&records), to_json(&records)))
}

fn scan_mass(args: &ScanMassArgs) -> Result<Output> {
    let records = scan_mass_plane(
        &linspace(args.m1_min, args.m1_max, args.m1_steps),
        &linspace(args.m3_min, args.m3_max, args.m3_steps),
        args.e,
    );
    Ok(Output::ok(mass_table(&records), to_json(&records)))
}

fn trace(args: &TraceArgs) -> Result<Output> {
    let opts = CurveOptions { galerkin: args.galerkin.options(), width: args.width, polish: !args.no_polish };
    let samples = trace_curves(&args.e, &opts);
    if let [Err(err)] = samples.as_slice() {
        return Err(err.clone());
    }
    let json = Value::Array(
        samples
            .iter()
            .map(|s| match s {
                Ok(s) => to_json(s),
                Err(err) => json!({ "error": err.to_string() }),
            })
            .collect(),
    );
    Ok(Output::ok(curve_table(&samples, &args.e), json))
}

fn symmetric(args: &SymmetricArgs) -> Result<Output> {
    let grid = linspace(args.m2_min, args.m2_max, args.m2_steps);
    let sweep = symmetric_sweep(&grid, args.e);
    let mut table = symmetric_table(&sweep, &grid);
    let mut threshold = Value::Null;
    if args.find_threshold {
        let t = find_threshold(&sweep, args.e, args.width)?;
        table.comment(format!("threshold m2*={} alpha={} bracket=[{}, {}]", t.m2, t.alpha, t.bracket.0, t.bracket.1));
        threshold = to_json(&t);
    }
    let rows: Vec<Value> = sweep
        .iter()
        .map(|r| match r {
            Ok(r) => to_json(r),
            Err(err) => json!({ "error": err.to_string() }),
        })
        .collect();
    Ok(Output::ok(table, json!({ "e": args.e, "sweep": rows, "threshold": threshold })))
}

fn selftest() -> Result<Output> {
    let checks = run_selftest();
    let code = if checks.iter().all(|c| c.pass) { 0 } else { 2 };
    Ok(Output { table: selftest_table(&checks), json: to_json(&checks), code })
}

/// Read a flat `key=value` file into `--key value` arguments. `true` becomes a bare flag
/// and `false` drops the key.
fn config_args(path: &PathBuf) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        match value.trim() {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            v => {
                out.push(format!("--{key}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

/// Splice config-file arguments right after the subcommand so explicit flags win.
fn expand_config(argv: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let extra = config_args(&PathBuf::from(path))?;
    let Some(pos) = argv.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else { return Ok(argv) };
    let mut out = argv[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}

fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        1
    } else {
        2
    }
}

/// Run the CLI on `argv` (program name first), writing results to `stdout` or `--out`
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return 1;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let text = err.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Cc(a) => cc(a),
        Command::Monodromy(a) => monodromy(a),
        Command::Index(a) => index(a),
        Command::Classify(a) => classify(a),
        Command::ScanAe(a) => scan_ae(a),
        Command::ScanMass(a) => scan_mass(a),
        Command::TraceCurves(a) => trace(a),
        Command::Symmetric(a) => symmetric(a),
        Command::Selftest => selftest(),
    };
    let output = match result {
        Ok(o) => o,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return exit_code(&err);
        }
    };
    let text = match cli.format {
        Format::Csv => output.table.to_csv_string(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&output.json).unwrap_or_default()),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        let _ = writeln!(stderr, "error: cannot write output: {err}");
        return 1;
    }
    output.code
}

/// [`run`] against the process streams.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
