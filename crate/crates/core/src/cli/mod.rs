//! Batch front end.
//!
//! ```text
//! twolevel <sweep|dynamics|audit|regime> --config <path> [--output <path>]
//!          [--r-min R] [--r-max R] [--n-points N] [--seed S] [--n-samples N]
//!          [--dt DT] [--duration T]
//! ```
//!
//! Exit codes: 0 success, 1 input or configuration error, 2 non-finite
//! numerical result, 3 audit failure.

mod audit;
mod commands;
mod config;
mod csv;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use audit::{
    agreement_sample, cmd_audit, cmd_audit_with, random_pole_free_point, relative_diff, AgreementSummary,
    AuditOutcome, AGREEMENT_TOL, MC_Z_LIMIT, POLE_CLEARANCE,
};
pub use commands::{cmd_dynamics, cmd_regime, cmd_sweep, VERSION};
pub use config::{parse_config, Command, Grid, GridBlock, McBlock, Model, Overrides, Params, RunConfig, Spacing, TimeGrid};
pub use csv::{format_number, CsvTable};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("audit failed")]
    AuditFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) | CliError::Model(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::AuditFailed => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "twolevel", version, about = "Two-level atom, 4-spinor and driven dipole-dipole toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Potential curve over a radial grid, written as CSV.
    Sweep(RunArgs),
    /// Population trajectory of the 2- or 4-component model, written as CSV.
    Dynamics(RunArgs),
    /// Parity, orientation-average and evaluator-agreement checks.
    Audit(RunArgs),
    /// Weak-field, attenuation and photon-exchange report.
    Regime(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_samples: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub duration: Option<f64>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            output: self.output.clone(),
            r_min: self.r_min,
            r_max: self.r_max,
            n_points: self.n_points,
            seed: self.seed,
            n_samples: self.n_samples,
            dt: self.dt,
            duration: self.duration,
        }
    }
}

/// Result text of a command plus where it should go.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub output: Option<PathBuf>,
    pub passed: bool,
}

/// Loads the configuration and runs one command, without touching the output path.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (command, args) = match &cli.command {
        CliCommand::Sweep(a) => (Command::Sweep, a),
        CliCommand::Dynamics(a) => (Command::Dynamics, a),
        CliCommand::Audit(a) => (Command::Audit, a),
        CliCommand::Regime(a) => (Command::Regime, a),
    };
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("{}: {e}", args.config.display())))?;
    let cfg = parse_config(&text, command, &args.overrides())?;
    run_config(&cfg)
}

pub fn run_config(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (text, passed) = match cfg.command {
        Command::Sweep => (cmd_sweep(cfg)?.render(), true),
        Command::Dynamics => (cmd_dynamics(cfg)?.render(), true),
        Command::Regime => (cmd_regime(cfg)?, true),
        Command::Audit => {
            let a = cmd_audit(cfg)?;
            (a.report, a.passed)
        }
    };
    Ok(Outcome { text, output: cfg.output.clone(), passed })
}

/// Full CLI behaviour; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli).and_then(|o| emit(&o).map(|_| o)) {
        Ok(o) if o.passed => 0,
        Ok(_) => {
            eprintln!("error: {}", CliError::AuditFailed);
            CliError::AuditFailed.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(o: &Outcome) -> Result<(), CliError> {
    match &o.output {
        Some(path) => std::fs::write(path, &o.text)?,
        None => print!("{}", o.text),
    }
    Ok(())
}
