use thiserror::Error;

use crate::arena::{find_one_dominated_cycle_nodes, EscapeArena, GameView, Player};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy covers {got} nodes, arena has {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("player-0 node {0} has no chosen successor")]
    EmptyChoice(usize),
    #[error("node {0} is not a player-0 node but has choices")]
    NotPlayerZero(usize),
    #[error("({from}, {to}) is not an edge of the arena")]
    NotAnEdge { from: usize, to: usize },
}

/// A non-deterministic player-0 strategy: a non-empty set of successors for
/// every player-0 node of an escape arena, kept sorted by node id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strategy {
    choices: Vec<Vec<usize>>,
}

impl Strategy {
    /// Validates `choices` (indexed by arena node, sink included) against
    /// the arena.
    pub fn new(arena: &EscapeArena, choices: Vec<Vec<usize>>) -> Result<Self, StrategyError> {
        let bound = arena.node_bound();
        if choices.len() != bound {
            return Err(StrategyError::WrongSize {
                expected: bound,
                got: choices.len(),
            });
        }
        let mut normalized = Vec::with_capacity(bound);
        for (v, mut list) in choices.into_iter().enumerate() {
            let is_p0 = !arena.is_sink(v) && arena.owner(v) == Player::Even;
            if !is_p0 {
                if !list.is_empty() {
                    return Err(StrategyError::NotPlayerZero(v));
                }
                normalized.push(list);
                continue;
            }
            if list.is_empty() {
                return Err(StrategyError::EmptyChoice(v));
            }
            if let Some(&to) = list.iter().find(|t| !arena.successors(v).contains(t)) {
                return Err(StrategyError::NotAnEdge { from: v, to });
            }
            list.sort_unstable();
            list.dedup();
            normalized.push(list);
        }
        Ok(Strategy {
            choices: normalized,
        })
    }

    /// Builds a strategy from lists already known to be valid and sorted.
    pub(crate) fn from_valid(choices: Vec<Vec<usize>>) -> Self {
        debug_assert!(choices.iter().all(|c| c.windows(2).all(|w| w[0] < w[1])));
        Strategy { choices }
    }

    pub fn choices(&self, v: usize) -> &[usize] {
        &self.choices[v]
    }

    /// Size of the node index space, sink included.
    pub fn node_bound(&self) -> usize {
        self.choices.len()
    }

    pub fn is_deterministic(&self) -> bool {
        self.choices.iter().all(|c| c.len() <= 1)
    }

    pub fn num_edges(&self) -> usize {
        self.choices.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.choices
            .iter()
            .enumerate()
            .flat_map(|(v, c)| c.iter().map(move |&w| (v, w)))
    }

    pub fn contains_edge(&self, from: usize, to: usize) -> bool {
        self.choices
            .get(from)
            .is_some_and(|c| c.binary_search(&to).is_ok())
    }

    /// True if every edge of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &Strategy) -> bool {
        self.edges().all(|(v, w)| other.contains_edge(v, w))
    }

    pub fn into_choices(self) -> Vec<Vec<usize>> {
        self.choices
    }
}

/// The arena restricted to a player-0 strategy: player-0 nodes keep only
/// their chosen edges, everything else is unchanged.
#[derive(Debug, Clone, Copy)]
pub struct StrategyView<'a> {
    pub arena: &'a EscapeArena,
    pub strategy: &'a Strategy,
}

impl<'a> StrategyView<'a> {
    pub fn new(arena: &'a EscapeArena, strategy: &'a Strategy) -> Self {
        StrategyView { arena, strategy }
    }
}

impl GameView for StrategyView<'_> {
    fn node_bound(&self) -> usize {
        self.arena.node_bound()
    }
    fn owner(&self, v: usize) -> Player {
        self.arena.owner(v)
    }
    fn color(&self, v: usize) -> usize {
        self.arena.color(v)
    }
    fn successors(&self, v: usize) -> &[usize] {
        if self.arena.is_sink(v) || self.arena.owner(v) == Player::Odd {
            self.arena.successors(v)
        } else {
            self.strategy.choices(v)
        }
    }
}

/// Every player-0 node escapes to the sink.
pub fn initial_strategy(arena: &EscapeArena) -> Strategy {
    let sink = arena.sink();
    Strategy::from_valid(
        (0..arena.node_bound())
            .map(|v| {
                if !arena.is_sink(v) && arena.owner(v) == Player::Even {
                    vec![sink]
                } else {
                    Vec::new()
                }
            })
            .collect(),
    )
}

/// A strategy is reasonable if the restricted arena has no odd-dominated cycle.
pub fn is_reasonable(arena: &EscapeArena, strategy: &Strategy) -> bool {
    find_one_dominated_cycle_nodes(&StrategyView::new(arena, strategy)).is_empty()
}
