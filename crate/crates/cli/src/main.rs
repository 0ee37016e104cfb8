//! `impurity-casimir`: radial profiles, verification suites, `λ → 0⁺` tables and
//! coupling conversion for the vacuum energy density near a delta impurity.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 numerical check failure,
//! 3 verification failure.

mod commands;
mod settings;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use settings::RunFile;

#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Cli {
    /// `key = value` file supplying defaults; flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point-like density on a radial grid, integral and closed form side by side
    Profile(ProfileArgs),
    /// Run the identity and invariant suites and report PASS/FAIL per check
    Verify(VerifyArgs),
    /// Extended-impurity density for a decreasing list of λ against the point limit
    Convergence(ConvergenceArgs),
    /// Print a coupling in all three conventions
    Convert(CouplingArgs),
}

#[derive(Args, Clone, Default)]
pub struct CouplingArgs {
    /// Fermi–Pizzocchero coupling γ (length)
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Ziemian coupling α = 2π²/γ
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Albeverio coupling α_A = 1/(4πγ)
    #[arg(long = "alpha-a", allow_negative_numbers = true)]
    alpha_a: Option<f64>,
}

#[derive(Args, Clone, Default)]
pub struct ToleranceArgs {
    /// Absolute quadrature tolerance
    #[arg(long = "abs-tol")]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Maximum refinement depth of the quadrature
    #[arg(long = "max-refinement")]
    max_refinement: Option<usize>,
}

#[derive(Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    coupling: CouplingArgs,
    /// Smallest radius |x| (> 0)
    #[arg(long, allow_negative_numbers = true)]
    rmin: Option<f64>,
    /// Largest radius |x|
    #[arg(long, allow_negative_numbers = true)]
    rmax: Option<f64>,
    /// Number of radii
    #[arg(long)]
    rcount: Option<usize>,
    /// Grid spacing
    #[arg(long, value_enum)]
    rscale: Option<Scale>,
    #[command(flatten)]
    tolerances: ToleranceArgs,
    /// Output CSV path (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Replace the threshold of every absolute check
    #[arg(long = "abs-tol")]
    abs_tol: Option<f64>,
    /// Replace the threshold of every relative check
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
}

#[derive(Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    coupling: CouplingArgs,
    /// Impurity profile
    #[arg(long, value_enum)]
    shape: Option<ShapeName>,
    /// Ball radius or Gaussian width
    #[arg(long = "shape-param")]
    shape_param: Option<f64>,
    /// Comma-separated, strictly decreasing λ values
    #[arg(long, allow_hyphen_values = true)]
    lambdas: Option<String>,
    /// Distance |x| from the impurity
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    #[command(flatten)]
    tolerances: ToleranceArgs,
    /// Output CSV path (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeName {
    Trivial,
    Ball,
    Gaussian,
}

/// A message for standard error and the exit code that goes with it.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<impurity_casimir::Error> for Failure {
    fn from(e: impurity_casimir::Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => RunFile::load(path)?,
        None => RunFile::default(),
    };
    match cli.command {
        Command::Profile(args) => commands::profile(args, &file),
        Command::Verify(args) => verify::run(args, &file),
        Command::Convergence(args) => commands::convergence(args, &file),
        Command::Convert(args) => commands::convert(args, &file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
