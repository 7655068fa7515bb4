//! Command-line front end: builds chains, runs the eigensolver and the
//! sweep machinery, and emits deterministic CSV (or a short text report
//! for `pt-check`).
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 when the
//! eigensolver fails to converge, 1 for I/O failures.

use clap::{Args, Parser, Subcommand};
use ptchain_cli::format::fmt_g;
use ptchain_cli::grid::{parse_angle, parse_grid, parse_nonneg};
use ptchain::classify::count_zero_modes;
use ptchain::model::{build_hamiltonian, pt_residual, GainLossLayout, ModelError, ModelParams};
use ptchain::sweep::{
    critical_curve, odd_chain_events, sweep_kappa, sweep_phi, ClassifyTol, OddEventKind,
    SweepError, SweepOptions, SweepTable, Threshold, TransitionKind, TransitionResult,
};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

const DEFAULT_PHI_GRID: &str = "0:2pi:501";
const DEFAULT_CRITICAL_PHI_GRID: &str = "0:2pi:41";
const DEFAULT_KAPPA_GRID: &str = "0:4:401";
const PT_VERDICT_THRESHOLD: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "ptchain",
    version,
    about = "Spectra and PT-breaking thresholds of gain/loss coupled-cavity chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectra over a phi grid at fixed kappa (CSV: phi,index,re,im,class)
    Spectrum(SpectrumCmd),
    /// Spectra over a kappa grid at fixed phi (CSV: kappa,index,re,im,class)
    Sweep(SweepCmd),
    /// Transition thresholds over a phi grid (CSV: phi,which,kappa_c,status)
    Critical(CriticalCmd),
    /// Zero-mode counts over a phi grid (CSV: phi,count)
    ZeroModes(ZeroModesCmd),
    /// PT-symmetry residual of one chain (text report)
    PtCheck(PtCheckCmd),
}

#[derive(Args)]
struct ModelOpts {
    /// Gain/loss placement
    #[arg(long, value_parser = parse_layout_arg)]
    layout: GainLossLayout,
    /// Number of sites
    #[arg(long)]
    n: usize,
    /// Coupling modulation strength delta, |delta| <= 1
    #[arg(long)]
    delta: f64,
    /// Uniform real on-site energy
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
}

impl ModelOpts {
    fn params(&self, phi: f64, kappa: f64) -> Result<ModelParams, ModelError> {
        ModelParams::new(self.n, self.delta, phi, kappa, self.epsilon, self.layout)
    }
}

#[derive(Args)]
struct RunOpts {
    /// Classification tolerance: a positive number, or 'auto' for
    /// 1e-7 * (1 + spectral radius)
    #[arg(long, default_value = "auto", value_parser = parse_tol_class_arg)]
    tol_class: ClassifyTol,
    /// Worker threads for grid evaluation (0 = one per core)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format version tag (only version 1 exists)
    #[arg(long, default_value_t = 1)]
    format_version: u32,
}

#[derive(Args)]
struct SpectrumCmd {
    #[command(flatten)]
    model: ModelOpts,
    /// Fixed loss/gain rate
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    /// Single phi value (radians or a pi expression like 'pi/2')
    #[arg(long, value_parser = parse_angle_arg)]
    phi: Option<f64>,
    /// Phi grid, START:END:COUNT or a comma list [default: 0:2pi:501]
    #[arg(long)]
    phi_grid: Option<String>,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    model: ModelOpts,
    /// Fixed phi (radians or a pi expression)
    #[arg(long, value_parser = parse_angle_arg)]
    phi: f64,
    /// Single kappa value
    #[arg(long)]
    kappa: Option<f64>,
    /// Kappa grid, START:END:COUNT or a comma list [default: 0:4:401]
    #[arg(long)]
    kappa_grid: Option<String>,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct CriticalCmd {
    #[command(flatten)]
    model: ModelOpts,
    /// Which transition to locate
    #[arg(long, value_parser = parse_which_arg)]
    which: Which,
    /// Single phi value
    #[arg(long, value_parser = parse_angle_arg)]
    phi: Option<f64>,
    /// Phi grid [default: 0:2pi:41]
    #[arg(long)]
    phi_grid: Option<String>,
    /// Upper end of the kappa search range
    #[arg(long, default_value_t = 4.0)]
    kappa_max: f64,
    /// Bisection bracket width
    #[arg(long, default_value_t = 1e-3)]
    tol_bracket: f64,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct ZeroModesCmd {
    #[command(flatten)]
    model: ModelOpts,
    /// Fixed loss/gain rate
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    /// Single phi value
    #[arg(long, value_parser = parse_angle_arg)]
    phi: Option<f64>,
    /// Phi grid [default: 0:2pi:501]
    #[arg(long)]
    phi_grid: Option<String>,
    /// Zero-mode magnitude threshold
    #[arg(long, default_value_t = 1e-6)]
    tol_zero: f64,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct PtCheckCmd {
    #[command(flatten)]
    model: ModelOpts,
    /// Phi value
    #[arg(long, default_value = "0", value_parser = parse_angle_arg)]
    phi: f64,
    /// Loss/gain rate
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    First,
    Second,
    OddEvents,
}

fn parse_layout_arg(s: &str) -> Result<GainLossLayout, String> {
    s.parse().map_err(|e: ModelError| e.to_string())
}

fn parse_angle_arg(s: &str) -> Result<f64, String> {
    parse_angle(s)
}

fn parse_tol_class_arg(s: &str) -> Result<ClassifyTol, String> {
    if s == "auto" {
        return Ok(ClassifyTol::Auto);
    }
    let v: f64 = s.parse().map_err(|_| format!("bad tolerance '{s}' (number or 'auto')"))?;
    if !(v > 0.0) {
        return Err("classification tolerance must be positive".to_string());
    }
    Ok(ClassifyTol::Fixed(v))
}

fn parse_which_arg(s: &str) -> Result<Which, String> {
    match s {
        "first" => Ok(Which::First),
        "second" => Ok(Which::Second),
        "odd-events" => Ok(Which::OddEvents),
        other => Err(format!("unknown transition '{other}' (first|second|odd-events)")),
    }
}

enum CliError {
    Config(String),
    Solver(String),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> CliError {
        match e {
            SweepError::NonConvergence { .. } => CliError::Solver(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(cmd) => {
            check_format_version(&cmd.run)?;
            let grid = resolve_grid(&cmd.phi, &cmd.phi_grid, DEFAULT_PHI_GRID, parse_angle)?;
            let base = cmd.model.params(0.0, cmd.kappa)?;
            let opts = sweep_options(&cmd.run);
            let table =
                with_threads(cmd.run.threads, || sweep_phi(&opts, &base, &grid))?;
            require_converged(&table)?;
            write_output(&cmd.run.out, &table_csv(&table, "phi"))
        }
        Command::Sweep(cmd) => {
            check_format_version(&cmd.run)?;
            let grid = resolve_grid(&cmd.kappa, &cmd.kappa_grid, DEFAULT_KAPPA_GRID, parse_nonneg)?;
            let base = cmd.model.params(cmd.phi, 0.0)?;
            let opts = sweep_options(&cmd.run);
            let table =
                with_threads(cmd.run.threads, || sweep_kappa(&opts, &base, &grid))?;
            require_converged(&table)?;
            write_output(&cmd.run.out, &table_csv(&table, "kappa"))
        }
        Command::Critical(cmd) => {
            check_format_version(&cmd.run)?;
            let grid =
                resolve_grid(&cmd.phi, &cmd.phi_grid, DEFAULT_CRITICAL_PHI_GRID, parse_angle)?;
            let base = cmd.model.params(0.0, 0.0)?;
            let opts = sweep_options(&cmd.run);
            let csv = with_threads(cmd.run.threads, || {
                critical_csv(&opts, &base, &grid, cmd.which, cmd.kappa_max, cmd.tol_bracket)
            })?;
            write_output(&cmd.run.out, &csv)
        }
        Command::ZeroModes(cmd) => {
            check_format_version(&cmd.run)?;
            let grid = resolve_grid(&cmd.phi, &cmd.phi_grid, DEFAULT_PHI_GRID, parse_angle)?;
            let base = cmd.model.params(0.0, cmd.kappa)?;
            let opts = sweep_options(&cmd.run);
            let table =
                with_threads(cmd.run.threads, || sweep_phi(&opts, &base, &grid))?;
            require_converged(&table)?;
            let mut out = String::from("phi,count\n");
            for row in &table.rows {
                let count = count_zero_modes(&row.spectrum, cmd.tol_zero)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                out.push_str(&format!("{},{count}\n", fmt_g(row.x)));
            }
            write_output(&cmd.run.out, &out)
        }
        Command::PtCheck(cmd) => {
            check_format_version(&cmd.run)?;
            let params = cmd.model.params(cmd.phi, cmd.kappa)?;
            let h = build_hamiltonian(&params)?;
            let residual = pt_residual(&h);
            let verdict = if residual <= PT_VERDICT_THRESHOLD { "symmetric" } else { "asymmetric" };
            let report = format!(
                "layout={} n={} delta={} phi={} kappa={} epsilon={}\n\
                 pt_residual = {}\n\
                 verdict: {verdict} (threshold {})\n",
                params.layout,
                params.n_sites,
                fmt_g(params.delta),
                fmt_g(params.phi),
                fmt_g(params.kappa),
                fmt_g(params.epsilon),
                fmt_g(residual),
                fmt_g(PT_VERDICT_THRESHOLD),
            );
            write_output(&cmd.run.out, &report)
        }
    }
}

fn check_format_version(run: &RunOpts) -> Result<(), CliError> {
    if run.format_version != 1 {
        return Err(CliError::Config(format!(
            "unsupported format version {} (only 1 exists)",
            run.format_version
        )));
    }
    Ok(())
}

fn sweep_options(run: &RunOpts) -> SweepOptions {
    SweepOptions { classify_tol: run.tol_class, ..SweepOptions::default() }
}

/// A fixed value and a grid are mutually exclusive; neither means the
/// documented default grid.
fn resolve_grid<T, F>(
    single: &Option<T>,
    grid: &Option<String>,
    default_spec: &str,
    parse_elem: F,
) -> Result<Vec<f64>, CliError>
where
    T: Copy + Into<f64>,
    F: Fn(&str) -> Result<f64, String>,
{
    match (single, grid) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "give either a single value or a grid, not both".to_string(),
        )),
        (Some(v), None) => Ok(vec![(*v).into()]),
        (None, Some(spec)) => parse_grid(spec, parse_elem).map_err(CliError::Config),
        (None, None) => parse_grid(default_spec, parse_elem).map_err(CliError::Config),
    }
}

/// Run a closure inside a dedicated rayon pool so `--threads` is honored
/// without touching global state. Results are assembled in grid order
/// upstream, so the pool size never changes the output bytes.
fn with_threads<T, F>(threads: usize, f: F) -> Result<T, CliError>
where
    F: FnOnce() -> Result<T, SweepError> + Send,
    T: Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f)?)
}

fn require_converged(table: &SweepTable) -> Result<(), CliError> {
    for row in &table.rows {
        if !row.converged {
            return Err(CliError::Solver(format!(
                "eigensolver did not converge at grid point {}",
                fmt_g(row.x)
            )));
        }
    }
    Ok(())
}

fn table_csv(table: &SweepTable, axis_name: &str) -> String {
    let mut out = format!("{axis_name},index,re,im,class\n");
    for row in &table.rows {
        let x = fmt_g(row.x);
        for (i, (v, class)) in
            row.spectrum.values.iter().zip(row.spectrum.classes.iter()).enumerate()
        {
            out.push_str(&format!(
                "{x},{},{},{},{}\n",
                i + 1,
                fmt_g(v.re),
                fmt_g(v.im),
                class.name()
            ));
        }
    }
    out
}

fn threshold_fields(t: &Threshold) -> (String, &'static str) {
    match t {
        Threshold::Value(v) => (fmt_g(*v), t.status()),
        Threshold::Zero => ("0".to_string(), t.status()),
        Threshold::NoneFound => (String::new(), t.status()),
    }
}

fn critical_csv(
    opts: &SweepOptions,
    base: &ModelParams,
    grid: &[f64],
    which: Which,
    kappa_max: f64,
    tol: f64,
) -> Result<String, SweepError> {
    let mut out = String::from("phi,which,kappa_c,status\n");
    match which {
        Which::First | Which::Second => {
            let kind = if which == Which::First { TransitionKind::First } else { TransitionKind::Second };
            let label = if which == Which::First { "first" } else { "second" };
            let curve = critical_curve(opts, base, grid, kind, kappa_max, tol)?;
            for (phi, entry) in curve.phi_grid.iter().zip(curve.entries.iter()) {
                let (value, status) = threshold_fields(&entry.threshold);
                out.push_str(&format!("{},{label},{value},{status}\n", fmt_g(*phi)));
            }
        }
        Which::OddEvents => {
            // Rows are independent; evaluate in parallel but emit in order.
            use rayon::prelude::*;
            let results: Vec<Result<Vec<(OddEventKind, TransitionResult)>, SweepError>> = grid
                .par_iter()
                .map(|&phi| {
                    odd_chain_events(opts, base, phi, kappa_max, tol).map(|events| {
                        events.into_iter().map(|e| (e.kind, e.result)).collect()
                    })
                })
                .collect();
            for (phi, result) in grid.iter().zip(results) {
                for (kind, r) in result? {
                    let label = match kind {
                        OddEventKind::BoundaryPair => "odd-pair",
                        OddEventKind::Split => "odd-split",
                    };
                    let (value, status) = threshold_fields(&r.threshold);
                    out.push_str(&format!("{},{label},{value},{status}\n", fmt_g(*phi)));
                }
            }
        }
    }
    Ok(out)
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}
