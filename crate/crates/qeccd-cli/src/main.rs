//! Command-line front end: configuration ingestion, experiment
//! orchestration, and reproducible data emission.
//!
//! Exit codes: 0 on success, 1 on numerical-invariant violations or I/O
//! failures, 2 on configuration errors.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use commands::Method;
use config::{Format, ModeKind, RunConfig};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
}

#[derive(Parser)]
#[command(
    name = "qeccd",
    about = "Two-qubit amplitude-damping channel simulation and stabilizer-code process tomography"
)]
struct Cli {
    /// JSON run configuration; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Measurement statistics: exact probabilities or sampled counts.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeKind>,

    /// Shots per apparatus configuration in sampled mode.
    #[arg(long, global = true)]
    shots: Option<u64>,

    /// Master seed for sampled mode; drawn from entropy (and recorded in
    /// the echoed configuration) when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Reconstruction method for the `chi` subcommand.
    #[arg(long, global = true, value_enum)]
    method: Option<Method>,

    /// Output format: CSV always, with JSON mirrors when set to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the sixteen channel coefficients over the configured time grid.
    Coeffs,
    /// Reconstruct the 16x16 process matrix (direct, qpt, or qeccd).
    Chi,
    /// Emit the figure data files (fig1, fig3a, fig3b, fig4).
    Figures,
    /// Sweep the correlation measures over the configured time grid.
    Sweep,
    /// Audit the published analytic expressions against the direct oracle.
    Audit,
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            serde_json::from_str::<RunConfig>(&text).map_err(|e| {
                CliError::Config(format!("cannot parse {}: {e}", path.display()))
            })?
        }
        None => RunConfig::default(),
    };
    if let Some(mode) = cli.mode {
        cfg.protocol.mode = mode;
    }
    if let Some(shots) = cli.shots {
        cfg.protocol.shots = shots;
    }
    if let Some(seed) = cli.seed {
        cfg.protocol.seed = Some(seed);
    }
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if let Some(format) = cli.format {
        cfg.output.format = format;
    }
    // a sampled run with no seed draws one from entropy; the echoed config
    // records it so the run can be reproduced exactly
    if cfg.protocol.mode == ModeKind::Sampled && cfg.protocol.seed.is_none() {
        cfg.protocol.seed = Some(rand::random());
    }
    if cfg.protocol.mode == ModeKind::Sampled && cfg.protocol.shots == 0 {
        return Err(CliError::Config("sampled mode requires shots > 0".into()));
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    fs::create_dir_all(&cfg.output.dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", cfg.output.dir)))?;
    // echo the fully resolved configuration next to the artifacts
    let echoed = serde_json::to_string_pretty(&cfg).expect("config serializes");
    fs::write(commands::out_path(&cfg, "config.json"), echoed + "\n")
        .map_err(|e| CliError::Io(format!("cannot write config echo: {e}")))?;

    match cli.cmd {
        Cmd::Coeffs => commands::cmd_coeffs(&cfg),
        Cmd::Chi => commands::cmd_chi(&cfg, cli.method.unwrap_or(Method::Qeccd)),
        Cmd::Figures => commands::cmd_figures(&cfg),
        Cmd::Sweep => commands::cmd_sweep(&cfg),
        Cmd::Audit => commands::cmd_audit(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(1)
        }
    }
}
