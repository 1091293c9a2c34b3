use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use parity_si::arena::Player;
use parity_si::iteration::{binary_choice_bound, general_iteration_bound, solve, Backend, SolveOptions, SwitchPolicy};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gen::{generate, GenArgs};
use crate::CliError;

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Instances per size.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_delimiter = ',', default_value = "10,20")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "all-switches,deterministic-all")]
    pub policies: Vec<SwitchPolicy>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 4)]
    pub colors: usize,
    #[arg(long = "p0-fraction", default_value_t = 0.5)]
    pub p0_fraction: f64,
    #[arg(long, default_value = "dijkstra")]
    pub backend: Backend,
    /// Record wall-clock times.
    #[arg(long)]
    pub timings: bool,
}

impl Default for BenchArgs {
    fn default() -> Self {
        BenchArgs {
            count: 100,
            sizes: vec![10, 20],
            policies: vec![SwitchPolicy::AllSwitches, SwitchPolicy::DeterministicAll],
            seed: 0,
            out: None,
            degree: 2,
            colors: 4,
            p0_fraction: 0.5,
            backend: Backend::Dijkstra,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub seed: u64,
    pub n: usize,
    pub v0: usize,
    pub d: usize,
    pub degree: usize,
    pub policy: String,
    pub iterations: usize,
    /// `n · (n/d + 1)^d`.
    pub bound_general: f64,
    /// `3 · 1.724^{v0}`, for out-degree at most 2.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_binary: Option<f64>,
    /// Iterations over the tightest applicable bound.
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub instances: usize,
    pub records: usize,
    pub max_ratio: f64,
    /// Share of instances where all-switches needs no more iterations than
    /// deterministic-all, when both ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub all_switches_le_deterministic: Option<f64>,
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut seeds: Vec<(usize, u64)> = records.iter().map(|r| (r.n, r.seed)).collect();
    seeds.dedup();
    let find = |n: usize, seed: u64, policy: SwitchPolicy| {
        records
            .iter()
            .find(|r| r.n == n && r.seed == seed && r.policy == policy.to_string())
            .map(|r| r.iterations)
    };
    let pairs: Vec<bool> = seeds
        .iter()
        .filter_map(|&(n, seed)| {
            let all = find(n, seed, SwitchPolicy::AllSwitches)?;
            let det = find(n, seed, SwitchPolicy::DeterministicAll)?;
            Some(all <= det)
        })
        .collect();
    BenchSummary {
        instances: seeds.len(),
        records: records.len(),
        max_ratio: records.iter().map(|r| r.ratio).fold(0.0, f64::max),
        all_switches_le_deterministic: (!pairs.is_empty())
            .then(|| pairs.iter().filter(|&&b| b).count() as f64 / pairs.len() as f64),
    }
}

/// Runs every policy on `count` random games per size. Fails with the
/// instance seed if an iteration count exceeds its bound.
pub fn run_bench(args: &BenchArgs) -> Result<Vec<BenchRecord>, CliError> {
    let instances: Vec<(usize, u64)> = args
        .sizes
        .iter()
        .flat_map(|&n| (0..args.count as u64).map(move |i| (n, i)))
        .collect();
    let per_instance: Vec<Result<Vec<BenchRecord>, CliError>> = instances
        .par_iter()
        .map(|&(n, i)| {
            let seed = args.seed.wrapping_add(i);
            let game = generate(&GenArgs {
                nodes: n,
                degree: args.degree,
                colors: args.colors,
                p0_fraction: args.p0_fraction,
                seed,
            })?;
            let v0 = game.nodes_of(Player::Even).count();
            let d = game.num_colors();
            let bound_general = general_iteration_bound(n, d);
            let bound_binary = (args.degree <= 2).then(|| binary_choice_bound(v0));
            args.policies
                .iter()
                .map(|&policy| {
                    let started = Instant::now();
                    let result = solve(&game, policy, SolveOptions::with_backend(args.backend))
                        .map_err(|e| CliError::Internal(format!("seed {seed}, n {n}, {policy}: {e}")))?;
                    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
                    let iterations = result.iterations;
                    // the tighter bound is proved for all-switches only
                    let binary = bound_binary.filter(|_| policy == SwitchPolicy::AllSwitches);
                    let bound = binary.map_or(bound_general, |b| b.min(bound_general));
                    if iterations as f64 > bound {
                        return Err(CliError::Internal(format!(
                            "bound violated: seed {seed}, n {n}, {policy}: {iterations} iterations > {bound}"
                        )));
                    }
                    Ok(BenchRecord {
                        seed,
                        n,
                        v0,
                        d,
                        degree: args.degree,
                        policy: policy.to_string(),
                        iterations,
                        bound_general,
                        bound_binary: binary,
                        ratio: iterations as f64 / bound,
                        wall_ms: args.timings.then_some(wall_ms),
                    })
                })
                .collect()
        })
        .collect();
    let mut records = Vec::new();
    for r in per_instance {
        records.extend(r?);
    }
    Ok(records)
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let records = run_bench(args)?;
    let mut text = String::new();
    for r in &records {
        text.push_str(&serde_json::to_string(r).map_err(|e| CliError::Internal(e.to_string()))?);
        text.push('\n');
    }
    if !records.is_empty() {
        let summary = serde_json::json!({ "summary": summarize(&records) });
        text.push_str(&summary.to_string());
        text.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
