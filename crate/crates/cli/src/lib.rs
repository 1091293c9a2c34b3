//! Command-line front end: solve, check against the brute-force oracle,
//! generate random games, trace iterations and benchmark step counts.

pub mod bench;
pub mod check;
pub mod gen;
pub mod solve;
pub mod trace;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use parity_si::arena::{parse_pgsolver, ParityGame};
use thiserror::Error;

pub use bench::{cmd_bench, BenchArgs, BenchRecord, BenchSummary};
pub use check::{cmd_check, oracle_cap, CheckArgs};
pub use gen::{cmd_gen, generate, GenArgs};
pub use solve::{cmd_solve, SolveArgs};
pub use trace::{cmd_trace, TraceArgs};

#[derive(Debug, Error)]
pub enum CliError {
    /// Solver and oracle disagree.
    #[error("{0}")]
    Mismatch(String),
    /// Bad flags or unreadable input.
    #[error("{0}")]
    Usage(String),
    /// A solver invariant failed.
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "parity-si", version, about = "Parity game solver by strategy iteration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a game in PGSolver format.
    Solve(SolveArgs),
    /// Generate a random game.
    Gen(GenArgs),
    /// Measure iteration counts on random games.
    Bench(BenchArgs),
    /// Compare the solver with the brute-force oracle.
    Check(CheckArgs),
    /// Print the strategy, valuation and strict improvements of every iteration.
    Trace(TraceArgs),
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Gen(args) => cmd_gen(args, out),
        Command::Bench(args) => cmd_bench(args, out),
        Command::Check(args) => cmd_check(args, out),
        Command::Trace(args) => cmd_trace(args, out),
    }
}

/// Reads a game from `path`, or from stdin when the path is absent or `-`.
pub fn read_game(path: Option<&Path>) -> Result<ParityGame, CliError> {
    let (text, name) = match path {
        Some(p) if p != Path::new("-") => (
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            (text, "<stdin>".to_string())
        }
    };
    parse_pgsolver(&text).map_err(|e| CliError::Usage(format!("{name}: {e}")))
}

pub(crate) fn input_path(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref()
}

/// Space-separated ids, or `(empty)`.
pub(crate) fn format_set(nodes: &[usize]) -> String {
    if nodes.is_empty() {
        "(empty)".to_string()
    } else {
        nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    }
}

pub(crate) fn format_moves<'a>(moves: impl IntoIterator<Item = (&'a usize, &'a usize)>) -> String {
    let parts: Vec<String> = moves.into_iter().map(|(s, t)| format!("{s}->{t}")).collect();
    if parts.is_empty() {
        "(empty)".to_string()
    } else {
        parts.join(" ")
    }
}
