use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use parity_si::iteration::{solve_with, Backend, SolveOptions, SwitchPolicy};
use parity_si::valuation::valuate_bellman_ford_traced;

use crate::{format_moves, format_set, input_path, read_game, CliError};

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    /// PGSolver file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "all-switches")]
    pub policy: SwitchPolicy,
    /// dijkstra or bellman-ford.
    #[arg(long, default_value = "bellman-ford")]
    pub backend: Backend,
    /// Also list every value change of a Bellman-Ford run per iteration.
    #[arg(long)]
    pub passes: bool,
}

pub fn cmd_trace(args: &TraceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let game = read_game(input_path(&args.input))?;
    let mut rule = args.policy.rule();
    let mut lines: Vec<String> = Vec::new();
    let result = solve_with(
        &game,
        rule.as_mut(),
        SolveOptions::with_backend(args.backend),
        &mut |rec| {
            let arena = &rec.preprocessed.arena;
            let name = |v: usize| {
                if arena.is_sink(v) {
                    "sink".to_string()
                } else {
                    arena.original_id(v).to_string()
                }
            };
            lines.push(format!("iteration {}", rec.iteration));
            let edges: Vec<String> = rec
                .strategy
                .edges()
                .map(|(s, t)| format!("{}->{}", name(s), name(t)))
                .collect();
            lines.push(format!("  strategy: {}", join_or_empty(edges)));
            let values: Vec<String> = (0..arena.num_nodes())
                .map(|v| format!("{}={}", name(v), rec.valuation.get(v)))
                .collect();
            lines.push(format!("  values: {}", join_or_empty(values)));
            let strict: Vec<String> = rec
                .improvements
                .strict
                .iter()
                .map(|&(s, t)| format!("{}->{}", name(s), name(t)))
                .collect();
            lines.push(format!("  strict: {}", join_or_empty(strict)));
            if args.passes {
                let _ = valuate_bellman_ford_traced(arena, rec.strategy, &mut |e| {
                    lines.push(format!("    pass {}: {} {} -> {}", e.pass, name(e.node), e.old, e.new));
                });
            }
        },
    )
    .map_err(|e| CliError::Internal(e.to_string()))?;

    for line in lines {
        writeln!(out, "{line}")?;
    }
    if !result.pre_won.is_empty() {
        writeln!(out, "removed up front: {}", format_set(&result.pre_won))?;
    }
    writeln!(out, "iterations: {}", result.iterations)?;
    writeln!(out, "W0: {}", format_set(&result.w0))?;
    writeln!(out, "W1: {}", format_set(&result.w1))?;
    writeln!(out, "strategy0: {}", format_moves(&result.strategy0))?;
    writeln!(out, "strategy1: {}", format_moves(&result.strategy1))?;
    Ok(())
}

fn join_or_empty(parts: Vec<String>) -> String {
    if parts.is_empty() {
        "(empty)".to_string()
    } else {
        parts.join(" ")
    }
}
