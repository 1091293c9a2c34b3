//! Strategies for player 0 and their valuations.
//!
//! The valuation of a reasonable strategy maps each node to the least color
//! profile player 1 can guarantee against it. It is computed either from
//! scratch by Bellman-Ford style fixpoint iteration, or, for the strategy of
//! all improvements, incrementally from the previous valuation with a
//! Dijkstra sweep over non-negative profile weights.

mod bellman_ford;
mod dijkstra;
mod improvements;
mod strategy;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arena::EscapeArena;
use crate::profile::{ColorProfile, ProfileError};

pub use bellman_ford::{apply_operator, valuate_bellman_ford, valuate_bellman_ford_traced, BellmanFordRun, TraceEvent};
pub use dijkstra::{dijkstra_update_with, valuate_dijkstra_update};
pub use improvements::{edge_value, improvements, response_strategy, ImprovementSets};
pub use strategy::{initial_strategy, is_reasonable, Strategy, StrategyError, StrategyView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation did not stabilise within {passes} passes; the strategy is not reasonable")]
    NotConverged { passes: usize },
    #[error("node {0} valued -inf; the strategy is not reasonable")]
    NegativeInfinity(usize),
    #[error("negative weight on edge ({from}, {to}); the input valuation is not a fixpoint")]
    NegativeWeight { from: usize, to: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// A color profile per arena node; the sink is always the zero profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    values: Vec<ColorProfile>,
}

impl Valuation {
    pub fn from_values(values: Vec<ColorProfile>) -> Self {
        Valuation { values }
    }

    pub fn get(&self, v: usize) -> &ColorProfile {
        &self.values[v]
    }

    pub fn values(&self) -> &[ColorProfile] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `self ⪯ other` at every node.
    pub fn le_pointwise(&self, other: &Valuation) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Nodes where `self ≺ other`.
    pub fn strictly_below(&self, other: &Valuation) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&v| self.values[v] < other.values[v])
            .collect()
    }

    /// Values keyed by original game id, rendered as text. The sink is omitted.
    pub fn dump(&self, arena: &EscapeArena) -> BTreeMap<usize, String> {
        (0..arena.num_nodes())
            .map(|v| (arena.original_id(v), self.values[v].to_string()))
            .collect()
    }
}
