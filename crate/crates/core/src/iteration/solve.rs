use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{
    build_escape_arena, dominated_cycle_components, preprocess, GameView, ParityGame, Player, Preprocessed,
    Subgraph,
};
use crate::profile::ColorProfile;
use crate::valuation::{
    dijkstra_update_with, improvements, initial_strategy, is_reasonable, response_strategy, valuate_bellman_ford,
    ImprovementSets, Strategy, Valuation, ValuationError,
};

use super::extract::extract_deterministic;
use super::policy::{StepContext, SwitchPolicy, SwitchRule};

/// How the valuation of the next strategy is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// Recompute from scratch by fixpoint iteration.
    BellmanFord,
    /// Update the previous valuation with a Dijkstra sweep whenever the next
    /// strategy is the set of all improvements; fall back to Bellman-Ford
    /// otherwise.
    Dijkstra,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::BellmanFord => "bellman-ford",
            Backend::Dijkstra => "dijkstra",
        })
    }
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bellman-ford" | "bf" => Ok(Backend::BellmanFord),
            "dijkstra" => Ok(Backend::Dijkstra),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub backend: Backend,
    /// Re-run Bellman-Ford after every `audit_every`-th Dijkstra update and
    /// compare; 0 disables the audit.
    pub audit_every: usize,
    /// Check reasonableness and strict progress at every step.
    pub check_invariants: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            backend: Backend::Dijkstra,
            audit_every: 16,
            check_invariants: true,
        }
    }
}

impl SolveOptions {
    pub fn with_backend(backend: Backend) -> Self {
        SolveOptions {
            backend,
            ..Self::default()
        }
    }
}

/// Violations of properties the algorithm guarantees. Any of these means a
/// bug, not a property of the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("iteration {iteration}: {source}")]
    Valuation {
        iteration: usize,
        #[source]
        source: ValuationError,
    },
    #[error("iteration {iteration}: strategy is not reasonable")]
    NotReasonable { iteration: usize },
    #[error("iteration {iteration}: switch rule produced an invalid strategy: {reason}")]
    InvalidSelection { iteration: usize, reason: String },
    #[error("iteration {iteration}: valuation did not improve at node {node}")]
    NotMonotone { iteration: usize, node: usize },
    #[error("{iterations} iterations exceed the bound {bound}")]
    IterationBound { iterations: usize, bound: f64 },
    #[error("iteration {iteration}: Dijkstra update disagrees with Bellman-Ford")]
    AuditMismatch { iteration: usize },
    #[error("node {0} has no edge attaining its value")]
    NoTightEdge(usize),
    #[error("final strategy check failed: {0}")]
    FinalCheck(String),
}

/// Per-iteration statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationStats {
    pub iteration: usize,
    /// `|S|`: number of strict improvements.
    pub strict: usize,
    /// Number of nodes with a strict improvement.
    pub strict_sources: usize,
    /// Changing Bellman-Ford passes, when this valuation came from Bellman-Ford.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bf_passes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

/// Winning sets and strategies, in the input game's node ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub w0: Vec<usize>,
    pub w1: Vec<usize>,
    /// Deterministic player-0 strategy on his player-0 nodes in `w0`.
    pub strategy0: BTreeMap<usize, usize>,
    /// Deterministic player-1 strategy on his player-1 nodes in `w1`.
    pub strategy1: BTreeMap<usize, usize>,
    /// Number of strategies valuated.
    pub iterations: usize,
    pub policy: String,
    pub stats: Vec<IterationStats>,
    /// Final valuation of every node that survived preprocessing.
    #[serde(skip)]
    pub valuation: BTreeMap<usize, ColorProfile>,
    /// Nodes removed by preprocessing.
    #[serde(skip)]
    pub pre_won: Vec<usize>,
}

/// One solver iteration as seen by an observer.
#[derive(Debug, Clone, Copy)]
pub struct IterationRecord<'a> {
    pub iteration: usize,
    pub preprocessed: &'a Preprocessed,
    pub strategy: &'a Strategy,
    pub valuation: &'a Valuation,
    pub improvements: &'a ImprovementSets,
    pub stats: &'a IterationStats,
}

/// Upper bound on the number of iterations for `nodes` nodes and `colors`
/// colors: `n · (n/d + 1)^d`.
pub fn general_iteration_bound(nodes: usize, colors: usize) -> f64 {
    let n = nodes as f64;
    let d = colors.max(1) as f64;
    n * (n / d + 1.0).powf(d)
}

/// Upper bound on the number of improvement steps of the all-switches rule
/// when player 0 has at most two choices per node: `3 · 1.724^{|V0|}`.
pub fn binary_choice_bound(player0_nodes: usize) -> f64 {
    3.0 * 1.724f64.powi(player0_nodes as i32)
}

pub fn solve(game: &ParityGame, policy: SwitchPolicy, options: SolveOptions) -> Result<SolveResult, SolveError> {
    solve_with(game, policy.rule().as_mut(), options, &mut |_| {})
}

/// Runs strategy iteration with an arbitrary switch rule, reporting every
/// iteration to `observer`.
pub fn solve_with(
    game: &ParityGame,
    rule: &mut dyn SwitchRule,
    options: SolveOptions,
    observer: &mut dyn FnMut(&IterationRecord<'_>),
) -> Result<SolveResult, SolveError> {
    let pre = preprocess(&build_escape_arena(game));
    let arena = &pre.arena;
    let bound = general_iteration_bound(game.num_nodes(), game.num_colors());
    let valuation_err = |iteration| move |source| SolveError::Valuation { iteration, source };

    let mut stats = Vec::new();
    let mut started = Instant::now();
    let mut strategy = initial_strategy(arena);
    let first = valuate_bellman_ford(arena, &strategy).map_err(valuation_err(1))?;
    let mut valuation = first.valuation;
    let mut bf_passes = Some(first.passes);
    let mut iteration = 0;

    let final_sets = if arena.is_empty() {
        None
    } else {
        loop {
            iteration += 1;
            if iteration as f64 > bound {
                return Err(SolveError::IterationBound {
                    iterations: iteration,
                    bound,
                });
            }
            if options.check_invariants && !is_reasonable(arena, &strategy) {
                return Err(SolveError::NotReasonable { iteration });
            }
            let sets = improvements(arena, &strategy, &valuation);
            stats.push(IterationStats {
                iteration,
                strict: sets.strict.len(),
                strict_sources: sets.strict_sources().len(),
                bf_passes,
                wall_ms: Some(started.elapsed().as_secs_f64() * 1e3),
            });
            observer(&IterationRecord {
                iteration,
                preprocessed: &pre,
                strategy: &strategy,
                valuation: &valuation,
                improvements: &sets,
                stats: stats.last().expect("just pushed"),
            });
            if !sets.has_strict() {
                break Some(sets);
            }
            started = Instant::now();

            let next = rule.select(&StepContext {
                iteration,
                arena,
                strategy: &strategy,
                valuation: &valuation,
                improvements: &sets,
            });
            let applied = check_selection(iteration, &next, &sets)?;

            let use_dijkstra = options.backend == Backend::Dijkstra && next == sets.improving;
            let next_valuation = if use_dijkstra {
                let updated = dijkstra_update_with(arena, &sets, &valuation).map_err(valuation_err(iteration + 1))?;
                bf_passes = None;
                if options.audit_every > 0 && (iteration + 1) % options.audit_every == 0 {
                    let audit = valuate_bellman_ford(arena, &next).map_err(valuation_err(iteration + 1))?;
                    if audit.valuation != updated {
                        return Err(SolveError::AuditMismatch {
                            iteration: iteration + 1,
                        });
                    }
                    bf_passes = Some(audit.passes);
                }
                updated
            } else {
                let run = valuate_bellman_ford(arena, &next).map_err(valuation_err(iteration + 1))?;
                bf_passes = Some(run.passes);
                run.valuation
            };

            if options.check_invariants {
                check_progress(iteration, &valuation, &next_valuation, &applied)?;
            }
            strategy = next;
            valuation = next_valuation;
        }
    };

    let (w0_local, strategy0) = match &final_sets {
        Some(sets) => {
            // The improvements of the final strategy have the same valuation
            // and contain every tight edge; pick one per node.
            let full = valuate_bellman_ford(arena, &sets.improving).map_err(valuation_err(iteration))?;
            if full.valuation != valuation {
                return Err(SolveError::FinalCheck(
                    "improvements of the final strategy change its valuation".into(),
                ));
            }
            let det = extract_deterministic(arena, &sets.improving, &valuation)?;
            let check = valuate_bellman_ford(arena, &det).map_err(valuation_err(iteration))?;
            if check.valuation != valuation {
                return Err(SolveError::FinalCheck(
                    "extracted deterministic strategy has a different valuation".into(),
                ));
            }
            let won: Vec<usize> = (0..arena.num_nodes())
                .filter(|&v| valuation.get(v).is_pos_inf())
                .collect();
            let mut strategy0 = BTreeMap::new();
            for &v in &won {
                if arena.owner(v) == Player::Even {
                    let t = det.choices(v)[0];
                    if arena.is_sink(t) {
                        return Err(SolveError::FinalCheck(format!("won node {v} escapes")));
                    }
                    strategy0.insert(arena.original_id(v), arena.original_id(t));
                }
            }
            (won, strategy0)
        }
        None => (Vec::new(), BTreeMap::new()),
    };

    let mut is_w0 = vec![false; game.num_nodes()];
    for &v in &w0_local {
        is_w0[arena.original_id(v)] = true;
    }
    let w0: Vec<usize> = (0..game.num_nodes()).filter(|&v| is_w0[v]).collect();
    let w1: Vec<usize> = (0..game.num_nodes()).filter(|&v| !is_w0[v]).collect();

    let mut strategy1 = pre_won_strategy(game, &pre);
    let tau = response_strategy(arena, &valuation);
    for v in arena.nodes_of(Player::Odd) {
        if valuation.get(v).is_finite() {
            let t = *tau[v].first().ok_or(SolveError::NoTightEdge(arena.original_id(v)))?;
            strategy1.insert(arena.original_id(v), arena.original_id(t));
        }
    }

    Ok(SolveResult {
        w0,
        w1,
        strategy0,
        strategy1,
        iterations: iteration,
        policy: rule.name(),
        stats,
        valuation: (0..arena.num_nodes())
            .map(|v| (arena.original_id(v), valuation.get(v).clone()))
            .collect(),
        pre_won: pre.pre_won.clone(),
    })
}

/// Returns the strict improvements contained in `next`, after checking it is
/// a strategy made of improving edges with at least one strict one.
fn check_selection(iteration: usize, next: &Strategy, sets: &ImprovementSets) -> Result<Vec<(usize, usize)>, SolveError> {
    let invalid = |reason: &str| SolveError::InvalidSelection {
        iteration,
        reason: reason.to_string(),
    };
    let improving = &sets.improving;
    if next.node_bound() != improving.node_bound() {
        return Err(invalid("wrong number of nodes"));
    }
    for v in 0..improving.node_bound() {
        if !improving.choices(v).is_empty() && next.choices(v).is_empty() {
            return Err(invalid("a player-0 node has no choice"));
        }
    }
    if !next.is_subset_of(improving) {
        return Err(invalid("not a subset of the improving edges"));
    }
    let applied: Vec<(usize, usize)> = sets
        .strict
        .iter()
        .copied()
        .filter(|&(s, t)| next.contains_edge(s, t))
        .collect();
    if applied.is_empty() {
        return Err(invalid("no strict improvement applied"));
    }
    Ok(applied)
}

fn check_progress(
    iteration: usize,
    before: &Valuation,
    after: &Valuation,
    applied: &[(usize, usize)],
) -> Result<(), SolveError> {
    if let Some(node) = (0..before.len()).find(|&v| before.get(v) > after.get(v)) {
        return Err(SolveError::NotMonotone { iteration, node });
    }
    if let Some(&(node, _)) = applied.iter().find(|&&(s, _)| before.get(s) >= after.get(s)) {
        return Err(SolveError::NotMonotone { iteration, node });
    }
    Ok(())
}

/// Player-1 moves on the nodes removed by preprocessing: attractor moves
/// towards the dominated cycles, and on the cycles themselves moves that
/// keep every cycle passing through a node of the component's top color.
fn pre_won_strategy(game: &ParityGame, pre: &Preprocessed) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    if pre.pre_won.is_empty() {
        return out;
    }
    // preprocessing ran on a fresh arena, so its ids are game ids
    for v in pre.attractor.members() {
        if let Some(&t) = pre.attractor.strategy[v].first() {
            out.insert(v, t);
        }
    }
    out.extend(cycle_moves(&Subgraph::owned_by(game, Player::Odd)));
    out
}

fn cycle_moves<G: GameView>(player1: &G) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for comp in dominated_cycle_components(player1, Player::Odd) {
        let bound = player1.node_bound();
        let mut inside = vec![false; bound];
        for &v in &comp.nodes {
            inside[v] = true;
        }
        // breadth-first search backwards from the top-colored nodes
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); bound];
        for &v in &comp.nodes {
            for &w in player1.successors(v) {
                if inside[w] {
                    preds[w].push(v);
                }
            }
        }
        let mut reached = vec![false; bound];
        let mut queue = VecDeque::new();
        for &v in &comp.nodes {
            if player1.color(v) == comp.color {
                reached[v] = true;
                queue.push_back(v);
                let t = *player1
                    .successors(v)
                    .iter()
                    .find(|&&w| inside[w])
                    .expect("component nodes have an edge inside");
                out.insert(v, t);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &preds[w] {
                if !reached[v] {
                    reached[v] = true;
                    out.insert(v, w);
                    queue.push_back(v);
                }
            }
        }
    }
    out
}

