//! `umbracal`: Hermite numbers and polynomials, identity checks, heat
//! equation runs and figure data.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "umbracal", version, about = "Umbral Hermite calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of Hermite numbers h_r of order m.
    Numbers(commands::NumbersArgs),
    /// Evaluate a Hermite polynomial family at a point.
    Poly(commands::PolyArgs),
    /// Run named identity checks.
    Verify(commands::VerifyArgs),
    /// Evolve initial data under dF/dy = ±d^mF/dx^m.
    Heat(commands::HeatArgs),
    /// Gabor transform of a Gaussian signal: Hermite series against direct quadrature.
    Gabor(commands::GaborArgs),
    /// Triple-lacunary generating function by three routes.
    Lacunary(commands::LacunaryArgs),
    /// Data behind the figures, with their parameters as defaults.
    Figure(commands::FigureArgs),
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters outside a routine's domain: exit 2.
    Usage(String),
    /// Failed checks, ill-posed requests, numerical failures: exit 1.
    Run(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        use umbracal::Error as E;
        match e.downcast_ref::<E>() {
            Some(
                E::InvalidOrder(_)
                | E::UnsupportedFractionalIndex { .. }
                | E::NegativeWeightRoot { .. }
                | E::Domain(_)
                | E::InvalidGrid(_),
            ) => Failure::Usage(format!("{e:#}")),
            _ => Failure::Run(format!("{e:#}")),
        }
    }
}

impl From<umbracal::Error> for Failure {
    fn from(e: umbracal::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("UMBRACAL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Usage(format!("UMBRACAL_THREADS must be an integer ≥ 1, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Run(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Numbers(a) => commands::numbers(&a),
        Command::Poly(a) => commands::poly(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Heat(a) => commands::heat(&a),
        Command::Gabor(a) => commands::gabor(&a),
        Command::Lacunary(a) => commands::lacunary(&a),
        Command::Figure(a) => commands::figure(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
