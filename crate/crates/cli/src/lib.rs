//! Library half of the `cpcheck` command-line tool.
//!
//! Commands return an [`Outcome`] instead of printing, so they can be driven
//! from tests without spawning a process.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::Outcome;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Success; for `check`/`kraus`/`remix` also "the map is CP".
    Cp = 0,
    NotCp = 1,
    InputError = 2,
    NumericalFailure = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "cpcheck",
    version,
    about = "Complete-positivity checks and Kraus decompositions for linear maps on M_N(C)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide complete positivity; exit 0 if CP, 1 if not.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Emit a minimal Kraus set for a CP map.
    Kraus {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Remix a Kraus set by a unitary: M~_j = sum_p U[p, j] M_p.
    Remix {
        input: PathBuf,
        #[arg(long)]
        unitary: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Apply a channel to a matrix.
    Apply {
        channel: PathBuf,
        #[arg(long)]
        state: PathBuf,
    },
    /// Emit a named channel (transpose, depolarizing, identity, dephasing, random_cptp).
    Zoo {
        name: String,
        /// Parameters as key=value, e.g. `lambda=0.5 mu=0.5`.
        params: Vec<String>,
        /// Seed for random_cptp (same as `seed=`).
        #[arg(long)]
        seed: Option<u64>,
    },
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { input, tol, json } => commands::check(input, *tol, *json),
        Command::Kraus { input, tol } => commands::kraus(input, *tol),
        Command::Remix { input, unitary, tol } => commands::remix(input, unitary, *tol),
        Command::Apply { channel, state } => commands::apply(channel, state),
        Command::Zoo { name, params, seed } => commands::zoo(name, params, *seed),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Argument errors map to [`ExitStatus::InputError`].
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let status = if e.use_stderr() {
                ExitStatus::InputError
            } else {
                ExitStatus::Cp
            };
            let text = e.render().to_string();
            if status == ExitStatus::Cp {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}
