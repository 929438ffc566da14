use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use copos_cli::commands::{self, GenerateKind, Outcome, EXIT_ERROR};
use copos_cli::document::Mode;

#[derive(Parser)]
#[command(
    name = "copos",
    version,
    about = "Exact copositivity checks and cone-preserver certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a symmetric matrix as interior, boundary or outside the copositive cone.
    Check {
        /// Matrix file (text or JSON), or `-` for stdin.
        input: String,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Certify an operator as a monomial congruence or find a counterexample.
    Decompose {
        /// Operator JSON file, or `-` for stdin.
        input: String,
        /// Random candidates to try after the fixed corpus.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Emit a seeded random instance.
    Generate {
        /// copositive | boundary | At | monomial-op
        kind: GenerateKind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Zero diagonal index for `At`, 1-based.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run the structural claim suite on random monomial congruences.
    Selftest {
        /// Dimensions, e.g. `1..4` or `5`.
        range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn with_input(path: &str, f: impl FnOnce(&str) -> Outcome) -> Outcome {
    match read_input(path) {
        Ok(s) => f(&s),
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {path}: {e}\n"),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { input, mode, json } => with_input(&input, |s| commands::check(s, mode, json)),
        Command::Decompose { input, budget, json } => with_input(&input, |s| commands::decompose(s, budget, json)),
        Command::Generate { kind, n, seed, t, json } => commands::generate(kind, n, seed, t, json),
        Command::Selftest { range, seed, samples } => commands::selftest(&range, seed, samples),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
