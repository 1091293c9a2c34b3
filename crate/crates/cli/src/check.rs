use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use parity_si::iteration::{Backend, SolveOptions, SwitchPolicy};
use parity_si::oracle::{crosscheck, CrossCheckError, Mismatch, DEFAULT_ORACLE_CAP};
use parity_si::ParityGame;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gen::{generate, GenArgs};
use crate::{input_path, read_game, CliError};

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Game to check; omit and pass --count for a random campaign.
    pub input: Option<PathBuf>,
    /// Number of random games to check.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest random game.
    #[arg(long = "max-nodes", default_value_t = 8)]
    pub max_nodes: usize,
    /// Directory receiving a PGSolver file and a JSON diff per mismatch.
    #[arg(long, default_value = "check-artifacts")]
    pub artifacts: PathBuf,
}

/// The oracle's strategy cap, from `SOLVER_ORACLE_CAP` if set.
pub fn oracle_cap() -> Result<u128, CliError> {
    match std::env::var("SOLVER_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("SOLVER_ORACLE_CAP={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

/// Random game for the fuzz campaign: at most `max_nodes` nodes, four colors,
/// out-degree three.
pub fn fuzz_game(seed: u64, max_nodes: usize) -> ParityGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let args = GenArgs {
        nodes: rng.gen_range(1..=max_nodes.max(1)),
        degree: rng.gen_range(1..=3),
        colors: rng.gen_range(1..=4),
        p0_fraction: 0.5,
        seed: rng.gen(),
    };
    generate(&args).expect("valid parameters")
}

/// Crosschecks `game` under every policy and backend.
fn check_game(game: &ParityGame, seed: u64, cap: u128) -> Result<Vec<Mismatch>, CliError> {
    let mut found = Vec::new();
    for policy in SwitchPolicy::all(seed) {
        for backend in [Backend::Dijkstra, Backend::BellmanFord] {
            let options = SolveOptions::with_backend(backend);
            match crosscheck(game, policy, options, cap) {
                Ok(c) => found.extend(c.mismatch),
                Err(CrossCheckError::Oracle(e)) => return Err(CliError::Usage(e.to_string())),
                Err(CrossCheckError::Solve(e)) => return Err(CliError::Internal(e.to_string())),
            }
        }
    }
    Ok(found)
}

fn write_artifacts(dir: &Path, stem: &str, mismatches: &[Mismatch]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{stem}.gm")), &mismatches[0].game)?;
    let json = serde_json::to_string_pretty(mismatches).map_err(|e| CliError::Internal(e.to_string()))?;
    std::fs::write(dir.join(format!("{stem}.json")), json)?;
    Ok(())
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = oracle_cap()?;
    if let Some(path) = input_path(&args.input) {
        let game = read_game(Some(path))?;
        let mismatches = check_game(&game, args.seed, cap)?;
        if mismatches.is_empty() {
            writeln!(out, "ok: {}", path.display())?;
            return Ok(());
        }
        write_artifacts(&args.artifacts, "input", &mismatches)?;
        return Err(CliError::Mismatch(format!(
            "{}: {} configurations disagree with the oracle; see {}",
            path.display(),
            mismatches.len(),
            args.artifacts.display()
        )));
    }
    let Some(count) = args.count else {
        return Err(CliError::Usage("give an input file or --count".into()));
    };

    let results: Vec<(u64, Result<Vec<Mismatch>, CliError>)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = args.seed.wrapping_add(i);
            (seed, check_game(&fuzz_game(seed, args.max_nodes), seed, cap))
        })
        .collect();

    let mut failed = 0;
    for (seed, result) in results {
        let mismatches = result?;
        if !mismatches.is_empty() {
            failed += 1;
            write_artifacts(&args.artifacts, &format!("seed-{seed}"), &mismatches)?;
            writeln!(out, "mismatch: seed {seed}")?;
        }
    }
    writeln!(out, "checked {count} games, {failed} mismatches")?;
    if failed > 0 {
        return Err(CliError::Mismatch(format!(
            "{failed} games disagree with the oracle; see {}",
            args.artifacts.display()
        )));
    }
    Ok(())
}
