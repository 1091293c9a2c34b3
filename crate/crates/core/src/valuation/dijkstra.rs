use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arena::{attractor, EscapeArena, GameView, Player};
use crate::profile::ColorProfile;

use super::improvements::edge_value;
use super::{improvements, ImprovementSets, Strategy, StrategyView, Valuation, ValuationError};

/// Valuation of the strategy of all improvements of `σ`, computed from the
/// valuation of `σ` itself.
pub fn valuate_dijkstra_update(
    arena: &EscapeArena,
    strategy: &Strategy,
    valuation: &Valuation,
) -> Result<Valuation, ValuationError> {
    let sets = improvements(arena, strategy, valuation);
    dijkstra_update_with(arena, &sets, valuation)
}

/// Like [`valuate_dijkstra_update`] with the improvement sets precomputed.
///
/// Nodes outside the player-1 attractor to the sink (under the improving
/// strategy) are valued `+inf`. Inside it, every improving edge `(u, v)`
/// carries the weight `color(u) + V(v) - V(u) ⪰ 0`, and the sweep computes
/// the min/max path weight `δ` from each node to the sink: player-1 nodes
/// settle greedily at their least tentative weight, player-0 nodes only once
/// all their successors have settled, at the largest one. The result is
/// `V + δ` there.
pub fn dijkstra_update_with(
    arena: &EscapeArena,
    sets: &ImprovementSets,
    valuation: &Valuation,
) -> Result<Valuation, ValuationError> {
    let view = StrategyView::new(arena, &sets.improving);
    let sink = arena.sink();
    let bound = arena.node_bound();
    let dim = arena.num_colors();
    let region = attractor(&view, Player::Odd, &[sink]);

    // Reverse adjacency restricted to the region, with edge weights.
    let mut preds: Vec<Vec<(usize, ColorProfile)>> = vec![Vec::new(); bound];
    let mut waiting = vec![0usize; bound];
    for u in (0..arena.num_nodes()).filter(|&u| region.contains(u)) {
        for &v in view.successors(u) {
            if !region.contains(v) {
                continue;
            }
            let weight = edge_value(arena, valuation, u, v).subtract(valuation.get(u))?;
            if weight < ColorProfile::zero(dim) {
                return Err(ValuationError::NegativeWeight { from: u, to: v });
            }
            preds[v].push((u, weight));
            waiting[u] += 1;
        }
    }

    let mut settled: Vec<Option<ColorProfile>> = vec![None; bound];
    let mut tentative: Vec<Option<ColorProfile>> = vec![None; bound];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((ColorProfile::zero(dim), sink)));

    while let Some(Reverse((delta, u))) = heap.pop() {
        if settled[u].is_some() {
            continue;
        }
        for (p, weight) in &preds[u] {
            let p = *p;
            if settled[p].is_some() {
                continue;
            }
            let candidate = weight.add(&delta)?;
            match arena.owner(p) {
                Player::Odd => {
                    if tentative[p].as_ref().is_none_or(|t| candidate < *t) {
                        tentative[p] = Some(candidate.clone());
                        heap.push(Reverse((candidate, p)));
                    }
                }
                Player::Even => {
                    if tentative[p].as_ref().is_none_or(|t| candidate > *t) {
                        tentative[p] = Some(candidate);
                    }
                    waiting[p] -= 1;
                    if waiting[p] == 0 {
                        let value = tentative[p].clone().expect("set above");
                        heap.push(Reverse((value, p)));
                    }
                }
            }
        }
        settled[u] = Some(delta);
    }

    let mut values = Vec::with_capacity(bound);
    for (v, delta) in settled.iter().enumerate() {
        let value = if v == sink {
            ColorProfile::zero(dim)
        } else if let Some(delta) = delta {
            valuation.get(v).add(delta)?
        } else {
            debug_assert!(!region.contains(v));
            ColorProfile::PosInf
        };
        values.push(value);
    }
    Ok(Valuation::from_values(values))
}
