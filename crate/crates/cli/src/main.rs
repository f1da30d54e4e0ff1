//! `su2-factor`: factorize SU(2) targets into bounded two-generator pulse
//! schedules, verify schedules against their problems, inspect canonical
//! frames, and run the built-in property suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod exit;
mod problem;
mod schedule;

#[derive(Parser)]
#[command(
    name = "su2-factor",
    version,
    about = "Factorize SU(2) matrices into products exp(a_k A + b_k B) with a_k > 0 and |b_k| <= C"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize the target of a problem file into a factor schedule.
    Factorize {
        /// Problem file (JSON).
        input: PathBuf,
        /// Where to write the schedule.
        #[arg(long, default_value = "schedule.json")]
        output: PathBuf,
        /// Write CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Override the problem file's tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Recompute a schedule's product and check it against its problem.
    Verify {
        /// Problem file (JSON).
        input: PathBuf,
        /// Schedule file (JSON or CSV).
        schedule: PathBuf,
        /// Override the problem file's tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the canonical frame (conjugator, rotation, mixing matrix) of a
    /// generator pair.
    Canonicalize {
        /// Problem file (JSON); only the generators are required.
        input: PathBuf,
        /// Also write the frame as JSON.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in property suites.
    Selftest {
        /// Trials per suite.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the deterministic trial stream.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time the pipeline on random problems.
    Bench {
        /// Number of timed factorizations.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Seed for the deterministic trial stream.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Factorize {
            input,
            output,
            csv,
            tol,
        } => commands::cmd_factorize(input, output, *csv, *tol),
        Command::Verify {
            input,
            schedule,
            tol,
        } => commands::cmd_verify(input, schedule, *tol),
        Command::Canonicalize { input, output } => {
            commands::cmd_canonicalize(input, output.as_ref())
        }
        Command::Selftest { trials, seed } => commands::cmd_selftest(*trials, *seed),
        Command::Bench { trials, seed } => commands::cmd_bench(*trials, *seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
