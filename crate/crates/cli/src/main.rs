//! `opstft` command-line tool.

mod commands;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};

use opstft::opstft::DEFAULT_TOLERANCE;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "opstft", version, about = "Operator-valued STFT toolkit on Z_N x Z_N")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Moyal,
    Twisted,
    Projection,
    Correspondence,
    Toeplitz,
    Young,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator STFT of a target with a window.
    Transform {
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Hilbert-Schmidt norm grid as CSV.
        #[arg(long)]
        spectrogram: Option<PathBuf>,
        /// Full operator field as JSON.
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Run one identity on seeded random inputs.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field to project instead of a random one (projection suite only).
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Optimal g-frame bounds over a lattice.
    Framebounds {
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
    },
    /// Weighted mixed-norm coorbit norm.
    Coorbitnorm {
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_parser = parse_exponent)]
        p: f64,
        #[arg(long, value_parser = parse_exponent)]
        q: f64,
        /// Weight m as an N x N CSV grid; defaults to 1.
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Submultiplicative envelope v; defaults to the moderating envelope of m.
        #[arg(long)]
        envelope: Option<PathBuf>,
        /// Second window for the equivalence bounds.
        #[arg(long)]
        window2: Option<PathBuf>,
        /// Seed for the equivalence battery.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Localization operator of a symbol and its lattice characterization.
    Localize {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        out_matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 1)]
        beta: usize,
        #[arg(long)]
        characterize: bool,
        #[arg(long, value_parser = parse_exponent, default_value = "2")]
        p: f64,
        #[arg(long, value_parser = parse_exponent, default_value = "2")]
        q: f64,
        /// Target operator; a seeded random one when absent.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        weight: Option<PathBuf>,
    },
    /// Squared total correlation of a signal collection.
    Correlate {
        #[arg(long, num_args = 1.., required = true)]
        signals: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    let x = match s.trim() {
        "inf" | "Inf" | "INF" | "infinity" => f64::INFINITY,
        other => other.parse::<f64>().map_err(|e| format!("{other:?}: {e}"))?,
    };
    if x.is_nan() || x < 1.0 {
        return Err(format!("exponent must lie in [1, inf], got {s}"));
    }
    Ok(x)
}

fn tolerance() -> Result<f64> {
    match std::env::var("OPSTFT_TOL") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOLERANCE),
        Err(e) => bail!("OPSTFT_TOL: {e}"),
        Ok(s) => {
            let x: f64 = s.trim().parse().map_err(|_| anyhow::anyhow!("OPSTFT_TOL: {s:?} is not a decimal number"))?;
            if !x.is_finite() || x < 0.0 {
                bail!("OPSTFT_TOL must be a finite nonnegative number, got {s}");
            }
            Ok(x)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = tolerance().and_then(|tol| commands::run(&cli, tol));
    match outcome {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            println!("{text}");
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT);
                }
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
