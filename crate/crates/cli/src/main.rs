use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxorb_cli::{ball, corpus, decompose, euler, validate, CliError, Output};

#[derive(Parser)]
#[command(
    name = "coxorb",
    version,
    about = "Geometric decomposition of 3-dimensional Coxeter orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a nerve triangulates the 2-sphere.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cut a nerve into geometric pieces.
    Decompose {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include wall-clock time (reports are then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Print the orbifold Euler characteristic.
    Euler {
        path: PathBuf,
        #[arg(long)]
        allow_non_sphere: bool,
    },
    /// Build a word-metric ball in the Davis complex.
    Ball {
        path: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Write the Cayley graph and cell export here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Work with the corpus directory.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Compare every entry against its manifest expectations.
    Check {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
    /// Write a structured report for every sphere in the corpus.
    Batch {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Validate { path, format } => validate(&path, matches!(format, Format::Structured)),
        Command::Decompose {
            path,
            format,
            timing,
        } => decompose(&path, matches!(format, Format::Structured), timing),
        Command::Euler {
            path,
            allow_non_sphere,
        } => euler(&path, allow_non_sphere),
        Command::Ball {
            path,
            radius,
            export,
        } => ball(&path, radius, export.as_deref()),
        Command::Corpus { action } => match action {
            CorpusAction::Check { dir } => corpus::check(&dir),
            CorpusAction::Batch { dir, out } => corpus::batch(&dir, &out),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
