use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arena::{EscapeArena, Player};
use crate::valuation::{edge_value, ImprovementSets, Strategy, Valuation};

/// Everything a switch rule may look at when choosing the next strategy.
#[derive(Debug, Clone, Copy)]
pub struct StepContext<'a> {
    pub iteration: usize,
    pub arena: &'a EscapeArena,
    pub strategy: &'a Strategy,
    pub valuation: &'a Valuation,
    pub improvements: &'a ImprovementSets,
}

/// Chooses the next strategy from the improvements of the current one.
///
/// The solver only calls `select` when a strict improvement exists and
/// rejects any choice that is not a subset of the improving edges or that
/// contains no strict improvement.
pub trait SwitchRule {
    fn name(&self) -> String;
    fn select(&mut self, ctx: &StepContext<'_>) -> Strategy;
}

/// The built-in switch rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwitchPolicy {
    /// Switch to the set of all improving edges.
    AllSwitches,
    /// At every node with a strict improvement take its best one; keep the
    /// current best edge elsewhere. Produces deterministic strategies.
    DeterministicAll,
    /// Apply one strict improvement, drawn uniformly with a seeded generator.
    SingleRandom { seed: u64 },
}

impl SwitchPolicy {
    pub fn rule(&self) -> Box<dyn SwitchRule> {
        match *self {
            SwitchPolicy::AllSwitches => Box::new(AllSwitches),
            SwitchPolicy::DeterministicAll => Box::new(DeterministicAll),
            SwitchPolicy::SingleRandom { seed } => Box::new(SingleRandom::new(seed)),
        }
    }

    pub fn all(seed: u64) -> [SwitchPolicy; 3] {
        [
            SwitchPolicy::AllSwitches,
            SwitchPolicy::DeterministicAll,
            SwitchPolicy::SingleRandom { seed },
        ]
    }
}

impl fmt::Display for SwitchPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchPolicy::AllSwitches => f.write_str("all-switches"),
            SwitchPolicy::DeterministicAll => f.write_str("deterministic-all"),
            SwitchPolicy::SingleRandom { seed } => write!(f, "single-random:{seed}"),
        }
    }
}

impl FromStr for SwitchPolicy {
    type Err = String;

    /// Accepts `all-switches`, `deterministic-all`, `single-random` (seed 0)
    /// and `single-random:<seed>`, or the short forms `all`, `det`, `random`
    /// and `random:<seed>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-switches" | "all" => Ok(SwitchPolicy::AllSwitches),
            "deterministic-all" | "det" => Ok(SwitchPolicy::DeterministicAll),
            "single-random" | "random" => Ok(SwitchPolicy::SingleRandom { seed: 0 }),
            other => other
                .strip_prefix("single-random:")
                .or_else(|| other.strip_prefix("random:"))
                .and_then(|seed| seed.parse().ok())
                .map(|seed| SwitchPolicy::SingleRandom { seed })
                .ok_or_else(|| format!("unknown policy {other:?}")),
        }
    }
}

/// Smallest successor in `candidates` whose edge value equals the node's
/// current value.
fn current_best(ctx: &StepContext<'_>, s: usize, candidates: &[usize]) -> usize {
    candidates
        .iter()
        .copied()
        .find(|&t| edge_value(ctx.arena, ctx.valuation, s, t) == *ctx.valuation.get(s))
        .expect("a fixpoint valuation is attained along some chosen edge")
}

struct AllSwitches;

impl SwitchRule for AllSwitches {
    fn name(&self) -> String {
        SwitchPolicy::AllSwitches.to_string()
    }

    fn select(&mut self, ctx: &StepContext<'_>) -> Strategy {
        ctx.improvements.improving.clone()
    }
}

struct DeterministicAll;

impl SwitchRule for DeterministicAll {
    fn name(&self) -> String {
        SwitchPolicy::DeterministicAll.to_string()
    }

    fn select(&mut self, ctx: &StepContext<'_>) -> Strategy {
        let mut choices = vec![Vec::new(); ctx.strategy_len()];
        let strict = &ctx.improvements.strict;
        for s in ctx.arena.nodes_of(Player::Even) {
            let lo = strict.partition_point(|&(u, _)| u < s);
            let hi = strict.partition_point(|&(u, _)| u <= s);
            let pick = if lo < hi {
                // largest edge value, smallest id among equals
                let mut best = strict[lo].1;
                let mut best_value = edge_value(ctx.arena, ctx.valuation, s, best);
                for &(_, t) in &strict[lo + 1..hi] {
                    let value = edge_value(ctx.arena, ctx.valuation, s, t);
                    if value > best_value {
                        best = t;
                        best_value = value;
                    }
                }
                best
            } else {
                current_best(ctx, s, ctx.strategy.choices(s))
            };
            choices[s].push(pick);
        }
        Strategy::from_valid(choices)
    }
}

struct SingleRandom {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SingleRandom {
    fn new(seed: u64) -> Self {
        SingleRandom {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SwitchRule for SingleRandom {
    fn name(&self) -> String {
        SwitchPolicy::SingleRandom { seed: self.seed }.to_string()
    }

    fn select(&mut self, ctx: &StepContext<'_>) -> Strategy {
        let strict = &ctx.improvements.strict;
        let (from, to) = strict[self.rng.gen_range(0..strict.len())];
        let mut choices = vec![Vec::new(); ctx.strategy_len()];
        for s in ctx.arena.nodes_of(Player::Even) {
            let pick = if s == from {
                to
            } else {
                current_best(ctx, s, ctx.strategy.choices(s))
            };
            choices[s].push(pick);
        }
        Strategy::from_valid(choices)
    }
}

impl StepContext<'_> {
    fn strategy_len(&self) -> usize {
        self.arena.num_nodes() + 1
    }
}
