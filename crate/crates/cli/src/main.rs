//! `hdccrc`: rate regions of the half-duplex causal cognitive radio channel.
//!
//! Exit codes: 0 success, 1 domain failure (validation failed, all points
//! rejected, containment violated), 2 usage or parse failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "hdccrc",
    version,
    about = "Rate regions of the half-duplex causal cognitive radio channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a DMC channel and its input laws.
    Validate(Common),
    /// Region of a DMC instance over its law sweep.
    DmcRegion(Common),
    /// Region of the Gaussian channel over the configured sweep.
    GaussianRegion(Common),
    /// The protocol regions, their hull and the swept region.
    Protocols(Common),
    /// As `protocols`; exits 0 iff the protocol hull lies inside the swept region.
    Compare(Common),
}

#[derive(Args, Clone)]
pub struct Common {
    /// TOML configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Seed of every sampler; overrides the file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Containment tolerance in bits.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Number of sampled Gaussian schemes.
    #[arg(long)]
    pub points: Option<usize>,
    /// Use a fixed listen/transmit schedule.
    #[arg(long)]
    pub fixed_schedule: bool,
    /// Also write all regions as gnuplot data blocks.
    #[arg(long)]
    pub gnuplot_data: bool,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Usage(String),
}

impl From<hdccrc_core::Error> for Failure {
    fn from(e: hdccrc_core::Error) -> Self {
        use hdccrc_core::Error as E;
        match e {
            E::Config(_)
            | E::InvalidParameter(_)
            | E::UnknownVariable(_)
            | E::InvalidAlphabet(_)
            | E::InvalidPmf(_)
            | E::AlphabetMismatch(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CCRC_THREADS") else {
        return Ok(());
    };
    let n: usize =
        v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::Usage(format!("CCRC_THREADS = `{v}` is not a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Validate(c) => commands::validate(c),
        Command::DmcRegion(c) => commands::dmc_region(c),
        Command::GaussianRegion(c) => commands::gaussian_region(c),
        Command::Protocols(c) => commands::protocols(c, false),
        Command::Compare(c) => commands::protocols(c, true),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
