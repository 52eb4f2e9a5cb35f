//! `fucik`: limit Fučík spectra of planar domains and the unit interval.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fucik", version, about = "Limit Fučík spectrum of the p-Laplacian as p → ∞")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Absolute length tolerance of the optimizers (default 1e-4 × diameter).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0x5EED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Cell budget of the inradius search; exceeding it exits with code 3.
    #[arg(long, global = true)]
    pub max_cells: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Main output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Where the domain comes from.
#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    /// Domain JSON file.
    #[arg(long, conflicts_with = "interval")]
    pub domain: Option<PathBuf>,
    /// Use the unit interval (0, 1).
    #[arg(long)]
    pub interval: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest inscribed ball.
    Inradius {
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// First nontrivial curve of a domain, or the curve families of the interval.
    Curve(commands::CurveArgs),
    /// Type I / II.A / II.B classification with the trivial-line intersections.
    Classify {
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Distance of finite-p interval curves to their limit.
    Converge(commands::ConvergeArgs),
    /// First-curve eigenfunction profile on the interval.
    Profile(commands::ProfileArgs),
    /// Residual of a profile in the limit equation.
    Viscosity(commands::ViscosityArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    if let Some(tol) = common.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Validation(format!("--tol must be > 0, got {tol}")));
        }
    }
    match &cli.command {
        Command::Inradius { domain } => commands::inradius(domain, common),
        Command::Curve(a) => commands::curve(a, common),
        Command::Classify { domain } => commands::classify(domain, common),
        Command::Converge(a) => commands::converge(a, common),
        Command::Profile(a) => commands::profile(a, common),
        Command::Viscosity(a) => commands::viscosity(a, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.common.threads {
        Some(0) => Err(CliError::Validation("--threads must be >= 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(CliError::Io(e.to_string())),
        },
        None => run(cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fucik: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
