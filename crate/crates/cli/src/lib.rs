//! Command-line front end for `coherence-lab-core`.
//!
//! Every command writes one canonical JSON (or CSV) payload to stdout or
//! `--out`, and logs human-readable lines to stderr. [`run`] returns the
//! number of bound violations so the binary can map it to an exit status.

pub mod commands;
pub mod config;
pub mod error;
pub mod json;
pub mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coherence_lab_core::{BoundId, PairKind, Seed};

pub use error::{CliError, Result};

/// Environment variable consulted when neither `--seed` nor the config
/// file sets one.
pub const SEED_ENV: &str = "COHERENCE_LAB_SEED";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "coherence-lab", version, about = "Check coherence bounds for superpositions of pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the two qubit examples and every applicable bound.
    Demo(DemoArgs),
    /// Run randomized ensembles and report bound violations.
    Verify(VerifyArgs),
    /// Evaluate one bound along a grid of |alpha|^2 for a fixed pair.
    Sweep(SweepArgs),
    /// Search for inputs that bring a bound closest to failing.
    Saturate(SaturateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Write the payload here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DemoArgs {
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials per (pair kind, dimension).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Dimensions to run, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dim: Option<Vec<usize>>,
    #[arg(long = "pair-kind", value_delimiter = ',', value_parser = parse_pair_kind)]
    pub pair_kind: Option<Vec<PairKind>>,
    /// Only summarize these bounds.
    #[arg(long, value_delimiter = ',', value_parser = parse_bound)]
    pub bound: Option<Vec<BoundId>>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// `random` or `d1,d2` for disjoint-support pairs.
    #[arg(long)]
    pub split: Option<String>,
    /// Shuffle basis indices of disjoint-support pairs.
    #[arg(long)]
    pub permute: bool,
    /// Size of the worker pool. Does not affect results.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_bound)]
    pub bound: Option<BoundId>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// `start:stop:step` or a comma separated list of |alpha|^2 values.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "pair-kind", value_parser = parse_pair_kind)]
    pub pair_kind: Option<PairKind>,
    /// `random` draws a seeded pair; `basis` uses |0> and |d-1>.
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub split: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SaturateArgs {
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_bound)]
    pub bound: Option<BoundId>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "pair-kind", value_parser = parse_pair_kind)]
    pub pair_kind: Option<PairKind>,
    #[arg(long)]
    pub split: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_bound(s: &str) -> std::result::Result<BoundId, String> {
    s.parse().map_err(|e: coherence_lab_core::CoherenceError| e.to_string())
}

fn parse_pair_kind(s: &str) -> std::result::Result<PairKind, String> {
    s.parse().map_err(|e: coherence_lab_core::CoherenceError| e.to_string())
}

/// Flag, then config file, then [`SEED_ENV`], then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>, config: Option<u64>) -> Result<Seed> {
    if let Some(seed) = flag.or(config) {
        return Ok(Seed(seed));
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Seed)
            .map_err(|_| CliError::usage(format!("{SEED_ENV}={text:?} is not an unsigned integer"))),
        Err(_) => Ok(Seed(DEFAULT_SEED)),
    }
}

pub(crate) fn check_tolerance(tolerance: f64) -> Result<f64> {
    if tolerance.is_finite() && tolerance >= 0.0 {
        Ok(tolerance)
    } else {
        Err(CliError::usage(format!("tolerance must be finite and non-negative, got {tolerance}")))
    }
}

/// What a command produced, before it is written anywhere.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub payload: String,
    pub violations: u64,
    pub out: Option<PathBuf>,
}

pub fn write_payload(payload: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|source| CliError::Io {
            context: format!("cannot write {}", path.display()),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(payload.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { context: "cannot write to stdout".into(), source })
        }
    }
}

/// Runs a parsed command without writing its payload.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Demo(args) => commands::demo::run(args),
        Command::Verify(args) => commands::verify::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Saturate(args) => commands::saturate::run(args),
    }
}

/// Runs a command, writes its payload and returns the violation count.
pub fn run(cli: &Cli) -> Result<u64> {
    let outcome = execute(cli)?;
    write_payload(&outcome.payload, outcome.out.as_deref())?;
    Ok(outcome.violations)
}
