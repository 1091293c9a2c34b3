//! Game graphs: parity games, PGSolver I/O, escape arenas, attractors and
//! detection of cycles dominated by a given player.

mod attractor;
mod cycles;
mod escape;
mod game;
mod pgsolver;

pub use attractor::{attractor, AttractorResult};
pub use cycles::{
    dominated_cycle_components, find_dominated_cycle_nodes, find_one_dominated_cycle_nodes,
    DominatedComponent,
};
pub use escape::{build_escape_arena, preprocess, EscapeArena, Preprocessed, WithoutEscape};
pub use game::{GameError, NodeDecl, ParityGame, Player};
pub use pgsolver::{parse_pgsolver, serialize_pgsolver, ParseError};

/// Read access to a game graph over the node index space `0..node_bound()`.
///
/// Views may leave some indices unused; `contains` tells which ones are
/// nodes. Successor lists only mention contained nodes.
pub trait GameView {
    fn node_bound(&self) -> usize;

    fn contains(&self, v: usize) -> bool {
        v < self.node_bound()
    }

    fn owner(&self, v: usize) -> Player;

    fn color(&self, v: usize) -> usize;

    fn successors(&self, v: usize) -> &[usize];

    fn nodes(&self) -> Vec<usize> {
        (0..self.node_bound()).filter(|&v| self.contains(v)).collect()
    }
}

impl<G: GameView + ?Sized> GameView for &G {
    fn node_bound(&self) -> usize {
        (**self).node_bound()
    }
    fn contains(&self, v: usize) -> bool {
        (**self).contains(v)
    }
    fn owner(&self, v: usize) -> Player {
        (**self).owner(v)
    }
    fn color(&self, v: usize) -> usize {
        (**self).color(v)
    }
    fn successors(&self, v: usize) -> &[usize] {
        (**self).successors(v)
    }
}

/// An owned, filtered copy of another view: a subset of its nodes and edges,
/// with the original node indices.
#[derive(Debug, Clone)]
pub struct Subgraph {
    owner: Vec<Player>,
    color: Vec<usize>,
    succ: Vec<Vec<usize>>,
    present: Vec<bool>,
}

impl Subgraph {
    pub fn new<G: GameView + ?Sized>(
        view: &G,
        keep_node: impl Fn(usize) -> bool,
        keep_edge: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let bound = view.node_bound();
        let present: Vec<bool> = (0..bound)
            .map(|v| view.contains(v) && keep_node(v))
            .collect();
        let succ = (0..bound)
            .map(|v| {
                if !present[v] {
                    return Vec::new();
                }
                view.successors(v)
                    .iter()
                    .copied()
                    .filter(|&w| present[w] && keep_edge(v, w))
                    .collect()
            })
            .collect();
        Subgraph {
            owner: (0..bound).map(|v| view.owner(v)).collect(),
            color: (0..bound).map(|v| view.color(v)).collect(),
            succ,
            present,
        }
    }

    /// Nodes of `view` owned by `player`, with the edges among them.
    pub fn owned_by<G: GameView + ?Sized>(view: &G, player: Player) -> Self {
        Self::new(view, |v| view.owner(v) == player, |_, _| true)
    }

    /// The part of `view` reachable from `sources`.
    pub fn reachable_from<G: GameView + ?Sized>(view: &G, sources: &[usize]) -> Self {
        let mut seen = vec![false; view.node_bound()];
        let mut stack: Vec<usize> = sources.iter().copied().filter(|&s| view.contains(s)).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in view.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Self::new(view, |v| seen[v], |_, _| true)
    }
}

impl GameView for Subgraph {
    fn node_bound(&self) -> usize {
        self.present.len()
    }
    fn contains(&self, v: usize) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }
    fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }
    fn color(&self, v: usize) -> usize {
        self.color[v]
    }
    fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }
}
