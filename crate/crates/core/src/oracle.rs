//! Brute-force solver for small games.
//!
//! Enumerates every deterministic player-0 strategy of the input game and
//! decides each node by cycle dominance alone. It shares nothing with the
//! strategy-iteration solver except the cycle detection routine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{
    find_dominated_cycle_nodes, find_one_dominated_cycle_nodes, serialize_pgsolver, GameView, ParityGame, Player,
    Subgraph,
};
use crate::iteration::{solve, SolveError, SolveOptions, SolveResult, SwitchPolicy};

pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for oracle: {strategies} strategies exceed the cap {cap}")]
    TooLarge { strategies: u128, cap: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub w0: Vec<usize>,
    pub w1: Vec<usize>,
    /// For each node of `w0`, the player-0 moves of the first enumerated
    /// strategy that wins from it.
    pub witness: BTreeMap<usize, BTreeMap<usize, usize>>,
}

/// Number of deterministic player-0 strategies of `game`.
pub fn strategy_count(game: &ParityGame) -> u128 {
    game.nodes_of(Player::Even)
        .map(|v| game.successors(v).len() as u128)
        .fold(1u128, u128::saturating_mul)
}

pub fn oracle_solve(game: &ParityGame, cap: u128) -> Result<OracleResult, OracleError> {
    let strategies = strategy_count(game);
    if strategies > cap {
        return Err(OracleError::TooLarge { strategies, cap });
    }
    let n = game.num_nodes();
    let p0: Vec<usize> = game.nodes_of(Player::Even).collect();
    let mut digits = vec![0usize; p0.len()];
    let mut won = vec![false; n];
    let mut witness = BTreeMap::new();

    loop {
        let choice = |v: usize| p0.binary_search(&v).ok().map(|i| game.successors(v)[digits[i]]);
        let restricted = Subgraph::new(game, |_| true, |v, w| choice(v).is_none_or(|c| c == w));
        let losing = reaches(&restricted, &find_one_dominated_cycle_nodes(&restricted));
        let mut moves = None;
        for v in 0..n {
            if losing[v] || won[v] {
                continue;
            }
            won[v] = true;
            let moves = moves.get_or_insert_with(|| {
                p0.iter()
                    .enumerate()
                    .map(|(i, &u)| (u, game.successors(u)[digits[i]]))
                    .collect::<BTreeMap<_, _>>()
            });
            witness.insert(v, moves.clone());
        }

        let mut i = p0.len();
        loop {
            if i == 0 {
                return Ok(OracleResult {
                    w0: (0..n).filter(|&v| won[v]).collect(),
                    w1: (0..n).filter(|&v| !won[v]).collect(),
                    witness,
                });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < game.successors(p0[i]).len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Nodes of `view` from which some node of `targets` is reachable.
fn reaches<G: GameView>(view: &G, targets: &[usize]) -> Vec<bool> {
    let bound = view.node_bound();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); bound];
    for v in view.nodes() {
        for &w in view.successors(v) {
            preds[w].push(v);
        }
    }
    let mut seen = vec![false; bound];
    let mut stack = targets.to_vec();
    for &t in targets {
        seen[t] = true;
    }
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Replays the winning strategies of `result` on `game`: fixing player i's
/// moves on `W_i`, every cycle reachable from `W_i` must be won by player i.
pub fn replay_check(game: &ParityGame, result: &SolveResult) -> Result<(), String> {
    let n = game.num_nodes();
    for (player, region, strategy) in [
        (Player::Even, &result.w0, &result.strategy0),
        (Player::Odd, &result.w1, &result.strategy1),
    ] {
        let mut inside = vec![false; n];
        for &v in region {
            inside[v] = true;
        }
        for &v in region {
            if game.owner(v) != player {
                continue;
            }
            match strategy.get(&v) {
                Some(&t) if game.successors(v).contains(&t) => {}
                Some(&t) => return Err(format!("({v}, {t}) is not an edge")),
                None => return Err(format!("{player:?} has no move at {v}")),
            }
        }
        let fixed = |v: usize| inside[v] && game.owner(v) == player;
        let restricted = Subgraph::new(game, |_| true, |v, w| !fixed(v) || strategy[&v] == w);
        let reachable = Subgraph::reachable_from(&restricted, region);
        let lost = find_dominated_cycle_nodes(&reachable, player.opponent());
        if let Some(v) = lost.first() {
            return Err(format!(
                "{player:?} strategy admits a cycle won by the opponent through node {v}"
            ));
        }
    }
    Ok(())
}

/// Both partitions of a disagreement, plus the game in PGSolver format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub policy: String,
    pub backend: String,
    pub solver_w0: Vec<usize>,
    pub solver_w1: Vec<usize>,
    pub oracle_w0: Vec<usize>,
    pub oracle_w1: Vec<usize>,
    pub game: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub agree: bool,
    pub mismatch: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrossCheckError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Solves `game` with the given policy and options and compares the
/// partition with the oracle's.
pub fn crosscheck(
    game: &ParityGame,
    policy: SwitchPolicy,
    options: SolveOptions,
    cap: u128,
) -> Result<CrossCheck, CrossCheckError> {
    let oracle = oracle_solve(game, cap)?;
    let result = solve(game, policy, options)?;
    if result.w0 == oracle.w0 && result.w1 == oracle.w1 {
        return Ok(CrossCheck {
            agree: true,
            mismatch: None,
        });
    }
    Ok(CrossCheck {
        agree: false,
        mismatch: Some(Mismatch {
            policy: policy.to_string(),
            backend: options.backend.to_string(),
            solver_w0: result.w0,
            solver_w1: result.w1,
            oracle_w0: oracle.w0,
            oracle_w1: oracle.w1,
            game: serialize_pgsolver(game),
        }),
    })
}
