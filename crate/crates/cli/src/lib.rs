//! Command-line front end: bound evaluation, eigenvalue counts,
//! verification suites and sweeps, with text, JSON and CSV reports.

pub mod commands;
pub mod config;
pub mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hardy_core::bounds::Theorem;
use hardy_core::Variant;

pub use config::{Overrides, RunConfig};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Success = 0,
    VerificationFailed = 1,
    Config = 2,
    Numerical = 3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Config,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        // Output files that cannot be written are a configuration problem.
        Self::config(message)
    }
}

impl From<hardy_core::Error> for CliError {
    fn from(e: hardy_core::Error) -> Self {
        CliError {
            kind: if e.is_numerical() {
                ExitKind::Numerical
            } else {
                ExitKind::Config
            },
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hardy,
    Transform,
    Bounds,
    Existence,
    Convergence,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the bound of a theorem for one potential.
    Bound,
    /// Count negative eigenvalues of the discretized operator.
    Count,
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Run the bound-versus-count sweep from the config file.
    Sweep,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: hardy_core::Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: hardy_core::Error| e.to_string())
}

/// Comma-separated list of sweep multipliers; may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Scales(pub Vec<f64>);

fn parse_scales(s: &str) -> Result<Scales, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("scale `{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Scales)
}

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Eigenvalue-count bounds for Schrödinger operators with critical Hardy terms")]
pub struct Cli {
    /// JSON config file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write the CSV rows here.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Print the table of defaults and exit.
    #[arg(long)]
    pub show_defaults: bool,
    /// t41, t42 or t43.
    #[arg(long, global = true, value_parser = parse_theorem)]
    pub theorem: Option<Theorem>,
    #[arg(long, global = true)]
    pub d: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// zero or one.
    #[arg(long, global = true, value_parser = parse_variant)]
    pub variant: Option<Variant>,
    /// Potential literal, e.g. `square_well:c=1,a=1,b=2`.
    #[arg(long, global = true, value_name = "LITERAL")]
    pub potential: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Truncation window.
    #[arg(long = "L", global = true, value_name = "L", allow_negative_numbers = true)]
    pub window: Option<f64>,
    /// Interior grid points.
    #[arg(long = "m", global = true, value_name = "M")]
    pub points: Option<usize>,
    #[arg(long, global = true)]
    pub refinements: Option<u32>,
    /// Comma-separated sweep multipliers.
    #[arg(long, global = true, value_parser = parse_scales, allow_negative_numbers = true)]
    pub scales: Option<Scales>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            theorem: self.theorem,
            d: self.d,
            n: self.n,
            variant: self.variant,
            potential: self.potential.clone(),
            tol: self.tol,
            window: self.window,
            points: self.points,
            refinements: self.refinements,
            scales: self.scales.clone().map(|s| s.0),
            json: self.json.clone(),
            csv: self.csv.clone(),
        }
    }

    /// Config file (if any) merged with flags, validated.
    pub fn effective_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match RunConfig::locate(self.config.as_deref()) {
            Some(path) => RunConfig::from_file(&path)?,
            None => RunConfig::default(),
        };
        cfg.apply(&self.overrides());
        cfg.validate()?;
        Ok(cfg)
    }
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub passed: bool,
}

/// Runs the parsed command line, writing requested side files.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.show_defaults {
        return Ok(Outcome {
            text: config::defaults_table(),
            json: serde_json::Value::Null,
            csv: None,
            passed: true,
        });
    }
    let Some(command) = &cli.command else {
        return Err(CliError::config("no command given; see --help"));
    };
    let cfg = cli.effective_config()?;
    let outcome = match command {
        Command::Bound => commands::cmd_bound(&cfg)?,
        Command::Count => commands::cmd_count(&cfg)?,
        Command::Verify { suite } => commands::cmd_verify(&cfg, *suite)?,
        Command::Sweep => commands::cmd_sweep(&cfg)?,
    };
    if let Some(path) = &cfg.json {
        let text = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
        output::write_atomic(path, text.as_bytes())?;
    }
    if let (Some(path), Some(csv)) = (&cfg.csv, &outcome.csv) {
        output::write_atomic(path, csv.as_bytes())?;
    }
    Ok(outcome)
}
