use std::cmp::Ordering;

use crate::arena::{EscapeArena, GameView, Player};
use crate::profile::ColorProfile;

use super::{Strategy, Valuation};

/// Improvement edges of a strategy with respect to its valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementSets {
    /// All player-0 edges `(s, t)` with `V(s) ⪯ color(s) + V(t)`.
    pub improving: Strategy,
    /// The edges of `improving` where the inequality is strict, ascending.
    pub strict: Vec<(usize, usize)>,
}

impl ImprovementSets {
    /// Distinct sources of strict improvements, ascending.
    pub fn strict_sources(&self) -> Vec<usize> {
        let mut src: Vec<usize> = self.strict.iter().map(|&(s, _)| s).collect();
        src.dedup();
        src
    }

    pub fn has_strict(&self) -> bool {
        !self.strict.is_empty()
    }
}

/// Value of moving from `s` to `t`: the color of `s` plus the value of `t`.
pub fn edge_value(arena: &EscapeArena, valuation: &Valuation, s: usize, t: usize) -> ColorProfile {
    let mut value = valuation.get(t).clone();
    value.add_color(arena.color(s));
    value
}

/// Computes the improvement sets of `strategy` from its valuation.
///
/// At a node valued `+inf` every edge into another `+inf` node would pass
/// the test, including edges closing cycles won by player 1. There the
/// improving edges are restricted to the strategy's own edges into `+inf`
/// nodes, so the `+inf` region stays closed and keeps only cycles the
/// strategy already had.
pub fn improvements(arena: &EscapeArena, strategy: &Strategy, valuation: &Valuation) -> ImprovementSets {
    let mut choices = vec![Vec::new(); arena.node_bound()];
    let mut strict = Vec::new();
    for s in arena.nodes_of(Player::Even) {
        let current = valuation.get(s);
        if current.is_pos_inf() {
            choices[s] = strategy
                .choices(s)
                .iter()
                .copied()
                .filter(|&t| valuation.get(t).is_pos_inf())
                .collect();
            debug_assert!(!choices[s].is_empty());
            continue;
        }
        for &t in arena.successors(s) {
            match current.cmp(&edge_value(arena, valuation, s, t)) {
                Ordering::Less => {
                    choices[s].push(t);
                    strict.push((s, t));
                }
                Ordering::Equal => choices[s].push(t),
                Ordering::Greater => {}
            }
        }
        choices[s].sort_unstable();
        debug_assert!(!choices[s].is_empty(), "the argmax edge is always an improvement");
    }
    strict.sort_unstable();
    ImprovementSets {
        improving: Strategy::from_valid(choices),
        strict,
    }
}

/// Player 1's tight edges: `(s, t)` with `V(s) = color(s) + V(t)`, per
/// player-1 node (empty lists elsewhere).
pub fn response_strategy(arena: &EscapeArena, valuation: &Valuation) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); arena.node_bound()];
    for s in arena.nodes_of(Player::Odd) {
        out[s] = arena
            .successors(s)
            .iter()
            .copied()
            .filter(|&t| *valuation.get(s) == edge_value(arena, valuation, s, t))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{build_escape_arena, ParityGame};
    use crate::valuation::{initial_strategy, valuate_bellman_ford};

    fn fin(c: &[i64]) -> ColorProfile {
        ColorProfile::Finite(c.to_vec())
    }

    #[test]
    fn odd_loop_has_no_strict_improvement() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(0, 1, &[0])]).unwrap());
        let v = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap().valuation;
        assert_eq!(v.get(0), &fin(&[0, 1]));
        // (0,0) is worth (0,2) < (0,1); (0,sink) is worth (0,1)
        let imp = improvements(&a, &initial_strategy(&a), &v);
        assert_eq!(imp.improving.choices(0), &[1]);
        assert!(imp.strict.is_empty());
    }

    #[test]
    fn even_loop_is_a_strict_improvement() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(0, 2, &[0])]).unwrap());
        let v = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap().valuation;
        assert_eq!(v.get(0), &fin(&[0, 0, 1]));
        let imp = improvements(&a, &initial_strategy(&a), &v);
        assert_eq!(imp.improving.choices(0), &[0, 1]);
        assert_eq!(imp.strict, vec![(0, 0)]);
        assert_eq!(imp.strict_sources(), vec![0]);
    }

    #[test]
    fn response_picks_minimal_successor() {
        // 0: player 1, color 0; successors 1 worth (0,1) and 2 worth (1,0)
        let a = build_escape_arena(&ParityGame::from_triples(&[(1, 0, &[1, 2]), (0, 1, &[1]), (0, 0, &[2])]).unwrap());
        let v = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap().valuation;
        let tau = response_strategy(&a, &v);
        assert_eq!(tau[0], vec![1]);
        assert!(tau[1].is_empty() && tau[2].is_empty());

        let only_p0 = build_escape_arena(&ParityGame::from_triples(&[(0, 0, &[0])]).unwrap());
        let v = valuate_bellman_ford(&only_p0, &initial_strategy(&only_p0)).unwrap().valuation;
        assert!(response_strategy(&only_p0, &v).iter().all(Vec::is_empty));
    }

    #[test]
    fn response_to_sink_chain() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(1, 0, &[1]), (0, 0, &[1])]).unwrap());
        let v = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap().valuation;
        assert_eq!(response_strategy(&a, &v)[0], vec![1]);
    }
}
