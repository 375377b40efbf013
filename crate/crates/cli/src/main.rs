//! `colorlie`: build graded algebras, save them as JSON spec files and verify
//! their defining identities exactly.
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample is found,
//! 2 for malformed input or invalid parameters.

mod build;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "colorlie", version, about = "Exact construction and verification of color Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and write its spec file.
    Build(build::BuildArgs),
    /// Run validators on a spec file.
    Verify(VerifyArgs),
    /// Realize a spec file by oscillators, quons or a Λ-hull.
    Realize(RealizeArgs),
}

#[derive(Args)]
struct ReportArgs {
    /// Largest number of tuples per identity before sampling kicks in.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the JSON report document here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    spec: PathBuf,
    /// Comma-separated subset of: factor, symmetries, jacobi, representation, multiplier, all.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<Check>,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    All,
    Factor,
    Symmetries,
    Jacobi,
    Representation,
    Multiplier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Oscillator,
    Quon,
    Lambda,
}

#[derive(Args)]
pub struct RealizeArgs {
    spec: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Statistics of the oscillators: +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    epsilon: String,
    /// Copies of each Λ generator degree.
    #[arg(long, default_value_t = 3)]
    multiplicity: usize,
    #[command(flatten)]
    report: ReportArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(args) => build::run_build(&args).map(|()| true),
        Command::Verify(args) => run::run_verify(&args),
        Command::Realize(args) => run::run_realize(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
