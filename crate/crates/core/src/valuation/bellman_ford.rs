use crate::arena::{EscapeArena, GameView, Player};
use crate::profile::ColorProfile;

use super::{Strategy, Valuation, ValuationError};

/// One value change observed during a Bellman-Ford run.
#[derive(Debug, Clone, Copy)]
pub struct TraceEvent<'a> {
    pub pass: usize,
    pub node: usize,
    pub old: &'a ColorProfile,
    pub new: &'a ColorProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellmanFordRun {
    pub valuation: Valuation,
    /// Passes that changed at least one value (the final, certifying pass
    /// is not counted).
    pub passes: usize,
}

/// The operator value at `v` given current values: player 1 takes the
/// minimum over all his edges, player 0 the maximum over his chosen edges,
/// then the node's own color is added.
fn operator_at(arena: &EscapeArena, strategy: &Strategy, values: &[ColorProfile], v: usize) -> ColorProfile {
    if arena.is_sink(v) {
        return ColorProfile::zero(arena.num_colors());
    }
    let best = match arena.owner(v) {
        Player::Odd => arena.successors(v).iter().map(|&w| &values[w]).min(),
        Player::Even => strategy.choices(v).iter().map(|&w| &values[w]).max(),
    };
    let mut value = best.expect("every node of a preprocessed arena has a move").clone();
    value.add_color(arena.color(v));
    value
}

/// One simultaneous application of the operator to `valuation`.
pub fn apply_operator(arena: &EscapeArena, strategy: &Strategy, valuation: &Valuation) -> Valuation {
    Valuation::from_values(
        (0..arena.node_bound())
            .map(|v| operator_at(arena, strategy, valuation.values(), v))
            .collect(),
    )
}

pub fn valuate_bellman_ford(arena: &EscapeArena, strategy: &Strategy) -> Result<BellmanFordRun, ValuationError> {
    valuate_bellman_ford_traced(arena, strategy, &mut |_| {})
}

/// Iterates the operator from "sink = zero, everything else = +inf" until a
/// pass changes nothing. Passes update in place, sweeping node ids in
/// descending order.
///
/// A reasonable strategy stabilises within one changing pass per game node;
/// exceeding that is reported as [`ValuationError::NotConverged`].
pub fn valuate_bellman_ford_traced(
    arena: &EscapeArena,
    strategy: &Strategy,
    trace: &mut dyn FnMut(&TraceEvent<'_>),
) -> Result<BellmanFordRun, ValuationError> {
    let n = arena.num_nodes();
    let mut values = vec![ColorProfile::PosInf; n + 1];
    values[arena.sink()] = ColorProfile::zero(arena.num_colors());

    let mut passes = 0;
    loop {
        let mut changed = false;
        for v in (0..n).rev() {
            let new = operator_at(arena, strategy, &values, v);
            if new != values[v] {
                debug_assert!(new < values[v], "values only decrease");
                if new == ColorProfile::NegInf {
                    return Err(ValuationError::NegativeInfinity(v));
                }
                trace(&TraceEvent {
                    pass: passes + 1,
                    node: v,
                    old: &values[v],
                    new: &new,
                });
                values[v] = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        passes += 1;
        if passes > n {
            return Err(ValuationError::NotConverged { passes });
        }
    }
    Ok(BellmanFordRun {
        valuation: Valuation::from_values(values),
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{build_escape_arena, ParityGame};
    use crate::valuation::initial_strategy;

    fn fin(c: &[i64]) -> ColorProfile {
        ColorProfile::Finite(c.to_vec())
    }

    #[test]
    fn odd_self_loop_escapes() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(0, 1, &[0])]).unwrap());
        let run = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap();
        assert_eq!(run.valuation.get(0), &fin(&[0, 1]));
        assert_eq!(run.valuation.get(1), &ColorProfile::zero(2));
        assert_eq!(run.passes, 1);
    }

    #[test]
    fn even_self_loop_with_both_edges_is_won() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(0, 2, &[0])]).unwrap());
        let s = Strategy::new(&a, vec![vec![0, 1], vec![]]).unwrap();
        let run = valuate_bellman_ford(&a, &s).unwrap();
        assert_eq!(run.valuation.get(0), &ColorProfile::PosInf);
        assert_eq!(run.valuation.get(1), &ColorProfile::zero(3));
        assert_eq!(run.passes, 0);
    }

    #[test]
    fn player_one_minimises() {
        // 0: player 1, color 0, successors 1 (value (0,1)) and 2 (value (1,0))
        let a = build_escape_arena(&ParityGame::from_triples(&[(1, 0, &[1, 2]), (0, 1, &[1]), (0, 0, &[2])]).unwrap());
        let run = valuate_bellman_ford(&a, &initial_strategy(&a)).unwrap();
        assert_eq!(run.valuation.get(1), &fin(&[0, 1]));
        assert_eq!(run.valuation.get(2), &fin(&[1, 0]));
        assert_eq!(run.valuation.get(0), &fin(&[1, 1]));
        assert_eq!(apply_operator(&a, &initial_strategy(&a), &run.valuation), run.valuation);
    }

    #[test]
    fn unreasonable_strategy_fails_to_converge() {
        // player 0 at 0 (color 1) forced around 0 -> 1 -> 0 with player 1
        // able to leave to the escape route through 2.
        let g = ParityGame::from_triples(&[(0, 1, &[1]), (1, 0, &[0, 2]), (0, 0, &[2])]).unwrap();
        let a = build_escape_arena(&g);
        let s = Strategy::new(&a, vec![vec![1], vec![], vec![3], vec![]]).unwrap();
        assert!(matches!(
            valuate_bellman_ford(&a, &s),
            Err(ValuationError::NotConverged { .. })
        ));
    }

    #[test]
    fn trace_reports_changes() {
        let a = build_escape_arena(&ParityGame::from_triples(&[(0, 1, &[0])]).unwrap());
        let mut events = Vec::new();
        valuate_bellman_ford_traced(&a, &initial_strategy(&a), &mut |e| {
            events.push((e.pass, e.node, e.old.to_string(), e.new.to_string()))
        })
        .unwrap();
        assert_eq!(events, vec![(1, 0, "+inf".to_string(), "(0,1)".to_string())]);
    }
}
