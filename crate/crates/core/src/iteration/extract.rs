use crate::arena::{EscapeArena, Player};
use crate::valuation::{edge_value, Strategy, Valuation};

use super::SolveError;

/// Picks, for every player-0 node, the smallest successor in `strategy`
/// whose edge value equals the node's value.
pub fn extract_deterministic(
    arena: &EscapeArena,
    strategy: &Strategy,
    valuation: &Valuation,
) -> Result<Strategy, SolveError> {
    let mut choices = vec![Vec::new(); strategy.node_bound()];
    for s in arena.nodes_of(Player::Even) {
        let t = strategy
            .choices(s)
            .iter()
            .copied()
            .find(|&t| edge_value(arena, valuation, s, t) == *valuation.get(s))
            .ok_or(SolveError::NoTightEdge(arena.original_id(s)))?;
        choices[s].push(t);
    }
    Ok(Strategy::from_valid(choices))
}

/// Error returned when a strategy has more deterministic refinements than
/// requested.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{count} deterministic refinements exceed the cap {cap}")]
pub struct TooManyRefinements {
    pub count: u128,
    pub cap: u128,
}

/// All deterministic strategies contained in `strategy`, in lexicographic
/// order of choices.
pub fn deterministic_refinements(
    strategy: &Strategy,
    cap: u128,
) -> Result<impl Iterator<Item = Strategy> + '_, TooManyRefinements> {
    let mut count: u128 = 1;
    for v in 0..strategy.node_bound() {
        let k = strategy.choices(v).len().max(1) as u128;
        count = count.saturating_mul(k);
        if count > cap {
            return Err(TooManyRefinements { count, cap });
        }
    }
    let slots: Vec<usize> = (0..strategy.node_bound())
        .filter(|&v| !strategy.choices(v).is_empty())
        .collect();
    let mut digits = vec![0usize; slots.len()];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut choices = vec![Vec::new(); strategy.node_bound()];
        for (i, &v) in slots.iter().enumerate() {
            choices[v].push(strategy.choices(v)[digits[i]]);
        }
        // advance the odometer, last slot fastest
        done = true;
        for i in (0..slots.len()).rev() {
            digits[i] += 1;
            if digits[i] < strategy.choices(slots[i]).len() {
                done = false;
                break;
            }
            digits[i] = 0;
        }
        Some(Strategy::from_valid(choices))
    }))
}
