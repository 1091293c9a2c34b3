use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use parity_si::iteration::{solve, Backend, SolveOptions, SolveResult, SwitchPolicy};
use parity_si::ParityGame;

use crate::{format_moves, format_set, input_path, read_game, CliError};

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// PGSolver file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    /// all-switches, deterministic-all or single-random[:seed].
    #[arg(long, default_value = "all-switches")]
    pub policy: SwitchPolicy,
    /// Seed for single-random, overriding one given in --policy.
    #[arg(long)]
    pub seed: Option<u64>,
    /// dijkstra or bellman-ford.
    #[arg(long, default_value = "dijkstra")]
    pub backend: Backend,
    /// Check every k-th Dijkstra update against Bellman-Ford; 0 disables.
    #[arg(long = "audit-every", default_value_t = 16)]
    pub audit_every: usize,
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock times in the JSON statistics.
    #[arg(long)]
    pub timings: bool,
}

impl SolveArgs {
    pub fn policy(&self) -> SwitchPolicy {
        match (self.policy, self.seed) {
            (SwitchPolicy::SingleRandom { .. }, Some(seed)) => SwitchPolicy::SingleRandom { seed },
            (p, _) => p,
        }
    }

    pub fn options(&self) -> SolveOptions {
        SolveOptions {
            backend: self.backend,
            audit_every: self.audit_every,
            check_invariants: true,
        }
    }
}

pub fn solve_game(game: &ParityGame, args: &SolveArgs) -> Result<SolveResult, CliError> {
    let mut result = solve(game, args.policy(), args.options()).map_err(|e| CliError::Internal(e.to_string()))?;
    if !args.timings {
        for s in &mut result.stats {
            s.wall_ms = None;
        }
    }
    Ok(result)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let game = read_game(input_path(&args.input))?;
    let result = solve_game(&game, args)?;
    if args.json {
        let text = serde_json::to_string(&result).map_err(|e| CliError::Internal(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        write_human(&result, out)?;
    }
    Ok(())
}

fn write_human(result: &SolveResult, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "W0: {}", format_set(&result.w0))?;
    writeln!(out, "W1: {}", format_set(&result.w1))?;
    writeln!(out, "strategy0: {}", format_moves(&result.strategy0))?;
    writeln!(out, "strategy1: {}", format_moves(&result.strategy1))?;
    writeln!(out, "iterations: {}", result.iterations)?;
    writeln!(out, "policy: {}", result.policy)
}
