//! Command-line front end for the two-atom coherence library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 I/O error.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use config::{RawConfig, RunConfig};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "twoatom", version, about = "Collective decay and frozen coherence of two co-moving atoms")]
pub struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Override a configuration key (repeatable, later wins).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for the pseudo-random parameter generator.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads for sweeps and verification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the rate table with the environment applied.
    Rates,
    /// Write a CSV coherence trace on [0, tau_max].
    Trace,
    /// Scan one parameter and write JSON lines.
    Sweep {
        /// Parameter to scan: R, theta, n or alpha (config key `sweep`).
        #[arg(long)]
        key: Option<String>,
        /// Comma-separated values (config key `values`).
        #[arg(long)]
        values: Option<String>,
    },
    /// Classify the frozen-coherence condition and print it as JSON.
    Frozen,
    /// Cross-check closed forms against the RK4 oracle.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn load_config(cli: &Cli) -> Result<RawConfig, CliError> {
    let mut raw = match &cli.config {
        Some(path) => RawConfig::load(path)?,
        None => RawConfig::default(),
    };
    for assignment in &cli.set {
        raw.apply_override(assignment)?;
    }
    Ok(raw)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let raw = load_config(cli)?;
    let output = cli.output.clone().or_else(|| raw.get("output").map(PathBuf::from));
    match &cli.command {
        Command::Rates => emit(&commands::rates(&RunConfig::resolve(&raw)?), output.as_deref()),
        Command::Trace => emit(&commands::trace_csv(&RunConfig::resolve(&raw)?)?, output.as_deref()),
        Command::Frozen => emit(&commands::frozen_json(&RunConfig::resolve(&raw)?)?, output.as_deref()),
        Command::Sweep { key, values } => {
            let key = key
                .as_deref()
                .or(raw.get("sweep"))
                .ok_or_else(|| CliError::config("sweep", "no sweep key given"))?;
            let values = values
                .as_deref()
                .or(raw.get("values"))
                .ok_or_else(|| CliError::config("values", "no values given"))?;
            emit(&commands::sweep_jsonl(&raw, key, values)?, output.as_deref())
        }
        Command::Verify { samples } => {
            if *samples == 0 {
                return Err(CliError::config("samples", "need at least one sample"));
            }
            let report = verify::run(cli.seed, *samples);
            emit(&report.render(), output.as_deref())?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = if cli.threads > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => Err(CliError::config("threads", e.to_string())),
        }
    } else {
        execute(cli)
    };
    match result {
        Ok(()) => error::EXIT_OK,
        Err(CliError::VerificationFailed) => error::EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("twoatom: {e}");
            e.exit_code()
        }
    }
}
