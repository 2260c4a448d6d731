use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logdiv::frontend::{cli, FrontendError};

/// Exact criteria for free divisors over the rationals.
#[derive(Parser)]
#[command(name = "logdiv", version)]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis; prints the JSON report unless --report is given.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Certify (or compute) a basis of logarithmic derivations.
    CheckBasis { file: PathBuf },
    /// Gröbner bases and dimensions of the Fitting ideals.
    Fitting {
        file: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Rank criterion for strong Euler-homogeneity at a point "(a,b,...)".
    Seh {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Jordan–Chevalley decomposition of a rational matrix.
    Jordan {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        file: PathBuf,
        #[arg(long, default_value = "degrevlex")]
        order: String,
    },
}

fn run(args: Args) -> Result<String, FrontendError> {
    let budget = cli::budget_from_env()?;
    match args.cmd {
        Cmd::Analyze { file, report } => cli::analyze(&file, report.as_deref(), budget),
        Cmd::CheckBasis { file } => cli::check_basis(&file, budget),
        Cmd::Fitting { file, level } => cli::fitting(&file, level, budget),
        Cmd::Seh { file, point } => cli::seh(&file, &point, budget),
        Cmd::Jordan { matrix } => cli::jordan(&matrix),
        Cmd::Gb { file, order } => cli::gb(&file, &order, budget),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
