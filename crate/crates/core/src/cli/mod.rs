//! Command-line front end: spec and batch-data ingestion, allocation
//! reports, method comparison, abacus emission, and numerical verification.
//!
//! Every command is deterministic given its inputs (and seed where one
//! applies). Reports carry a human-readable section followed by a
//! machine-readable CSV section at full precision. Exit codes: 0 success,
//! 1 verification failure, 2 usage, 3 spec parse, 4 batch data, 5 domain,
//! 6 I/O, 7 unsupported method/spec combination.

pub mod batch;
mod commands;
pub mod format;
pub mod spec_file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use format::DisplayConfig;

/// CLI-level error with a stable category for machine consumption.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::error::Error),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{message}")]
    Data { message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::Parse { .. } => "parse",
            CliError::Data { .. } => "data",
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
            CliError::Unsupported(_) => "unsupported",
            CliError::VerificationFailed(_) => "verification-failed",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Data { .. } => 4,
            CliError::Core(_) => 5,
            CliError::Io(_) => 6,
            CliError::Unsupported(_) => 7,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "inertol",
    version,
    about = "Tolerance allocation and capability analysis for 1D assembly chains"
)]
pub struct Cli {
    /// Display configuration file (TOML, e.g. `sig_digits = 8`)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Allocate component budgets from an assembly spec
    Allocate(AllocateArgs),
    /// Compare every allocation method on one spec
    Compare(CompareArgs),
    /// Score measured batch data against allocated budgets
    Capability(CapabilityArgs),
    /// Emit the correction-coefficient lookup grid
    Abacus(AbacusArgs),
    /// Run the numerical verification oracles
    Verify(VerifyArgs),
}

/// Allocation method selector shared by `allocate` and `capability`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    WorstCase,
    Statistical,
    Inflated,
    InertialH1,
    InertialH2,
    InertialH3,
    InertialH4,
    Corrected,
}

#[derive(Debug, clap::Args)]
struct AllocateArgs {
    /// Assembly spec file (TOML)
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,

    /// Allocation method
    #[arg(long, value_enum)]
    method: MethodArg,

    /// Inflation factor (required by --method inflated)
    #[arg(long)]
    f: Option<f64>,

    /// Off-centering ratio delta = k * sigma (required by inertial-h3/h4)
    #[arg(long)]
    k: Option<f64>,

    /// Number of shifted components (required by inertial-h4)
    #[arg(long)]
    m: Option<usize>,

    /// Correction coefficient (corrected method; exclusive with --cpk)
    #[arg(long)]
    icc: Option<f64>,

    /// Target resultant capability index; the coefficient is derived from it
    #[arg(long)]
    cpk: Option<f64>,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// With --method corrected: write the capability profile as plot data
    #[arg(long, value_name = "PATH")]
    curve: Option<PathBuf>,

    /// Sample count for --curve
    #[arg(long, default_value_t = 101)]
    curve_points: usize,
}

#[derive(Debug, clap::Args)]
struct CompareArgs {
    /// Assembly spec file (TOML); needs an interval resultant
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,

    /// Inflation factor for the inflated statistical row
    #[arg(long, default_value_t = 1.5)]
    f: f64,

    /// Capability target for the corrected row
    #[arg(long, default_value_t = 1.0)]
    cpk: f64,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct CapabilityArgs {
    /// Assembly spec file (TOML)
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,

    /// Batch measurement file (CSV, header row of component names)
    #[arg(long, value_name = "PATH")]
    data: PathBuf,

    /// Inertia-producing allocation method scoring the components
    #[arg(long, value_enum)]
    method: Option<MethodArg>,

    /// Correction coefficient (corrected method; exclusive with --cpk)
    #[arg(long)]
    icc: Option<f64>,

    /// Capability target for the corrected method (default 1)
    #[arg(long)]
    cpk: Option<f64>,

    /// Off-centering ratio for inertial-h3/h4
    #[arg(long)]
    k: Option<f64>,

    /// Number of shifted components for inertial-h4
    #[arg(long)]
    m: Option<usize>,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct AbacusArgs {
    /// Largest chain length in the grid
    #[arg(long, value_name = "N")]
    n_max: usize,

    /// Smallest chain length in the grid
    #[arg(long, default_value_t = 1, value_name = "N")]
    n_min: usize,

    /// Capability targets, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = vec![0.0, 0.5, 1.0, 1.33, 1.5, 2.0]
    )]
    cpk: Vec<f64>,

    /// Output CSV path (columns: n, cpk_target, icc)
    #[arg(long, value_name = "PATH")]
    out: PathBuf,

    /// Also write one plain-text curve file per target into this directory
    #[arg(long, value_name = "DIR")]
    curves: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Grid,
    MonteCarlo,
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistArg {
    Normal,
    Uniform,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// Which oracle to run
    #[arg(long, value_enum)]
    mode: VerifyMode,

    /// Assembly spec file; grid mode searches its per-component budgets,
    /// monte-carlo mode simulates its chain
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,

    /// Chain length for grid/derivative mode without a spec
    #[arg(long)]
    n: Option<usize>,

    /// Correction coefficient under test
    #[arg(long, default_value_t = 1.0)]
    icc: f64,

    /// Resultant interval full width
    #[arg(long = "r-y", default_value_t = 1.0)]
    r_y: f64,

    /// Grid points per component axis (grid mode)
    #[arg(long, default_value_t = 101)]
    resolution: usize,

    /// Sample count (monte-carlo mode)
    #[arg(long, default_value_t = 100_000)]
    samples: usize,

    /// Random seed (monte-carlo mode)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Common per-component dispersion (monte-carlo mode)
    #[arg(long, default_value_t = 0.03)]
    sigma: f64,

    /// Common per-component mean offset (monte-carlo mode)
    #[arg(long, default_value_t = 0.01)]
    delta: f64,

    /// Component sampling distribution (monte-carlo mode)
    #[arg(long, value_enum, default_value_t = DistArg::Normal)]
    dist: DistArg,

    /// Interior evaluation points (derivative mode)
    #[arg(long, default_value_t = 100)]
    points: usize,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn load_config(path: Option<&Path>) -> Result<DisplayConfig, CliError> {
    let Some(path) = path else {
        return Ok(DisplayConfig::default());
    };
    let text = std::fs::read_to_string(path)?;
    let config: DisplayConfig = toml::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if !(1..=17).contains(&config.sig_digits) {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            message: format!("sig_digits must be in 1..=17, got {}", config.sig_digits),
        });
    }
    Ok(config)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let display = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Allocate(args) => commands::allocate(args, display),
        Command::Compare(args) => commands::compare(args, display),
        Command::Capability(args) => commands::capability(args, display),
        Command::Abacus(args) => commands::abacus(args, display),
        Command::Verify(args) => commands::verify(args, display),
    }
}

/// Parse arguments from the process environment and run. Errors are printed
/// to stderr as `error[<category>]: <message>` and mapped to the documented
/// exit codes.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: &format::Report, out: Option<&Path>) -> Result<(), CliError> {
    let text = report.render();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
