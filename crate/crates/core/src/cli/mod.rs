//! Command-line front end: `analyze`, `ns`, `simulate`, `sweep`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 classifier disagreement,
//! 4 bifurcation gate failure, 5 I/O failure.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{ConfigError, RunConfig};

use crate::error::Error;
use crate::fixed_points::{all_fixed_points, e2, existence_case};
use crate::ns::ns_report;
use crate::simulation::{attractor_summary, orbit, sweep_theta};
use crate::stability::classify_fixed_point;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_NS_GATE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "plankton-ns", version, about = "Fixed points, stability and Neimark-Sacker analysis of a toxic plankton map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Fixed points, existence case and stability classes.
    Analyze,
    /// Critical θ0, transversality, normal form and the verdict on the closed curve.
    Ns,
    /// Iterate one orbit and write the tail as CSV.
    Simulate,
    /// Sweep θ over a grid and classify the long-run behaviour.
    Sweep,
}

/// Flags override values from `--config`. Numbers may be written as `a/b`.
#[derive(Debug, Default, Args)]
pub struct Flags {
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub c: Option<String>,
    #[arg(long, global = true)]
    pub beta: Option<String>,
    #[arg(long, global = true)]
    pub r: Option<String>,
    #[arg(long, global = true)]
    pub theta: Option<String>,
    #[arg(long, global = true)]
    pub initial_u: Option<String>,
    #[arg(long, global = true)]
    pub initial_v: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<String>,
    #[arg(long, global = true)]
    pub transient: Option<String>,
    #[arg(long, global = true)]
    pub theta_min: Option<String>,
    #[arg(long, global = true)]
    pub theta_max: Option<String>,
    #[arg(long, global = true)]
    pub theta_step: Option<String>,
    #[arg(long, global = true)]
    pub search_min: Option<String>,
    #[arg(long, global = true)]
    pub search_max: Option<String>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<String>,
}

impl Flags {
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let pairs = [
            ("c", &self.c),
            ("beta", &self.beta),
            ("r", &self.r),
            ("theta", &self.theta),
            ("initial_u", &self.initial_u),
            ("initial_v", &self.initial_v),
            ("n", &self.n),
            ("transient", &self.transient),
            ("theta_min", &self.theta_min),
            ("theta_max", &self.theta_max),
            ("theta_step", &self.theta_step),
            ("search_min", &self.search_min),
            ("search_max", &self.search_max),
            ("out", &self.out),
            ("svg", &self.svg),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Disagreement(String),
    NsGate(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Disagreement(_) => EXIT_DISAGREEMENT,
            CliError::NsGate(_) => EXIT_NS_GATE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Disagreement(m) | CliError::NsGate(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Write to `path`, or standard output when no path is configured.
fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

/// Text report at `out` and its JSON twin next to it with a `.json` extension.
fn emit_report<T: serde::Serialize>(out: Option<&Path>, text: &str, value: &T) -> Result<(), CliError> {
    emit(out, text)?;
    if let Some(p) = out {
        let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        let target = p.with_extension("json");
        if target == p {
            return Err(CliError::Config(format!("report path {} must not end in .json", p.display())));
        }
        write_file(&target, &(json + "\n"))?;
    }
    Ok(())
}

pub fn cmd_analyze(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.parameters()?;
    let points = all_fixed_points(&params);
    let reports = points
        .iter()
        .map(|fp| classify_fixed_point(&params, fp))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| match e {
            Error::ClassifierDisagreement { .. } => CliError::Disagreement(e.to_string()),
            other => CliError::Config(other.to_string()),
        })?;
    let case = existence_case(&params);
    let text = output::analyze_text(params.theta(), case, &reports);
    let json = serde_json::json!({
        "parameters": params,
        "existence_case": case,
        "fixed_points": points,
        "stability": reports,
    });
    emit_report(cfg.out.as_deref(), &text, &json)
}

pub fn cmd_ns(cfg: &RunConfig) -> Result<(), CliError> {
    let (c, beta, r) = cfg.base_parameters()?;
    let interval = cfg.search_interval()?;
    let report = ns_report(c, beta, r, interval).map_err(|e| match e {
        Error::NonPositiveParameter { .. } | Error::NonFiniteParameter { .. } => CliError::Config(e.to_string()),
        other => CliError::NsGate(other.to_string()),
    })?;
    emit_report(cfg.out.as_deref(), &output::ns_text(&report), &report)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.parameters()?;
    let initial = cfg.initial()?;
    let (n, transient) = cfg.horizon()?;
    let orb = orbit(&params, initial, n, transient);
    emit(cfg.out.as_deref(), &output::orbit_csv(&orb))?;
    if let Some(svg) = &cfg.svg {
        write_file(svg, &output::tail_svg(&orb.tail))?;
    }
    let mut line = format!("retained {} of {} states", orb.tail.len(), n - transient);
    if let Some(k) = orb.escape_step {
        line.push_str(&format!("; escaped the box at step {k}"));
    }
    if let Some(fp) = e2(&params) {
        let s = attractor_summary(&orb, &fp);
        line.push_str(&format!("; attractor {}", s.kind));
    }
    eprintln!("{line}");
    Ok(())
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let (c, beta, r) = cfg.base_parameters()?;
    let grid = cfg.theta_grid()?;
    let initial = cfg.initial()?;
    let (n, transient) = cfg.horizon()?;
    let sweep = sweep_theta(c, beta, r, &grid, initial, n, transient);
    for row in &sweep.rows {
        if let Some(e) = &row.error {
            eprintln!("theta = {}: {e}", row.theta);
        }
    }
    emit(cfg.out.as_deref(), &output::sweep_csv(&output::sweep_rows(&sweep)))
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<(), CliError> {
    match command {
        Command::Analyze => cmd_analyze(cfg),
        Command::Ns => cmd_ns(cfg),
        Command::Simulate => cmd_simulate(cfg),
        Command::Sweep => cmd_sweep(cfg),
    }
}

/// Parse arguments (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = cli
        .flags
        .resolve()
        .map_err(CliError::from)
        .and_then(|cfg| execute(cli.command, &cfg));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
