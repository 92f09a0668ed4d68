//! `mf`: build argument-shift systems on sl_n, verify their properties,
//! enumerate Borel atlases and evaluate the zero-fibre count.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mf", version, about = "Exact argument-shift systems on sl_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build F_a and print its components and independence certificate.
    Build(RunArgs),
    /// Run the property and probe suite for one element.
    Verify(RunArgs),
    /// Evaluate the recursive count of components of F_a^{-1}(0).
    Count(RunArgs),
    /// List the Borel and parabolic subalgebras containing a.
    Atlas(RunArgs),
    /// Run the frozen sl_2 / sl_3 regression corpus.
    CheckExamples(OutputArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Size of the matrices (sl_n).
    #[arg(long)]
    pub n: Option<usize>,
    /// Representative: s, r or n.
    #[arg(long, default_value = "s")]
    pub element: String,
    /// Rational parameter of the representative (repeatable).
    #[arg(long = "param", allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// JSON file `{"n": .., "entries": [[..]]}` replacing --element.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// JSON table of |I'| values overlaid on the defaults.
    #[arg(long)]
    pub iprime: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, output) = match &cli.command {
        Command::Build(a) => (commands::build(a), &a.output),
        Command::Verify(a) => (commands::verify(a), &a.output),
        Command::Count(a) => (commands::count(a), &a.output),
        Command::Atlas(a) => (commands::atlas(a), &a.output),
        Command::CheckExamples(o) => (commands::check_examples(), o),
    };
    match outcome {
        Ok(report) => {
            if let Err(e) = output::emit(&report, output) {
                eprintln!("mf: {e}");
                return ExitCode::from(2);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                if let Some(f) = &report.first_failure {
                    eprintln!("mf: verification failed: {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("mf: {e}");
            ExitCode::from(2)
        }
    }
}
