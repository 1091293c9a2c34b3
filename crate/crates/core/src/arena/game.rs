use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::GameView;

/// One of the two players. Player 0 (`Even`) wins a play iff the highest
/// color seen infinitely often is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(Player::Even),
            1 => Some(Player::Odd),
            _ => None,
        }
    }

    pub fn opponent(self) -> Self {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a cycle whose highest color is `color`.
    pub fn of_color(color: usize) -> Self {
        if color.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("node {0} has no successors")]
    NoSuccessors(usize),
    #[error("node {node} has successor {succ}, which is not a node")]
    DanglingSuccessor { node: usize, succ: usize },
    #[error("name of node {0} contains a quote or line break")]
    InvalidName(usize),
}

/// Declaration of a single node, used to build a [`ParityGame`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDecl {
    pub owner: Player,
    pub color: usize,
    pub successors: Vec<usize>,
    pub name: Option<String>,
}

/// A finite parity game: nodes `0..n` with an owner, a color and a
/// non-empty successor list each.
///
/// Successor lists keep their declaration order; repeated successors are
/// collapsed to their first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    color: Vec<usize>,
    succ: Vec<Vec<usize>>,
    names: Vec<Option<String>>,
}

impl ParityGame {
    pub fn new(nodes: Vec<NodeDecl>) -> Result<Self, GameError> {
        let n = nodes.len();
        let mut game = ParityGame {
            owner: Vec::with_capacity(n),
            color: Vec::with_capacity(n),
            succ: Vec::with_capacity(n),
            names: Vec::with_capacity(n),
        };
        for (v, decl) in nodes.into_iter().enumerate() {
            if decl.successors.is_empty() {
                return Err(GameError::NoSuccessors(v));
            }
            let mut succ = Vec::with_capacity(decl.successors.len());
            for w in decl.successors {
                if w >= n {
                    return Err(GameError::DanglingSuccessor { node: v, succ: w });
                }
                if !succ.contains(&w) {
                    succ.push(w);
                }
            }
            if let Some(name) = &decl.name {
                if name.contains(['"', '\n', '\r']) {
                    return Err(GameError::InvalidName(v));
                }
            }
            game.owner.push(decl.owner);
            game.color.push(decl.color);
            game.succ.push(succ);
            game.names.push(decl.name.filter(|s| !s.is_empty()));
        }
        Ok(game)
    }

    /// Shorthand constructor from `(owner, color, successors)` triples where
    /// the owner is given as 0 or 1.
    pub fn from_triples(nodes: &[(usize, usize, &[usize])]) -> Result<Self, GameError> {
        Self::new(
            nodes
                .iter()
                .map(|&(owner, color, succ)| NodeDecl {
                    owner: Player::from_index(owner).expect("owner must be 0 or 1"),
                    color,
                    successors: succ.to_vec(),
                    name: None,
                })
                .collect(),
        )
    }

    pub fn num_nodes(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// Number of colors `d = max color + 1` (1 for the empty game).
    pub fn num_colors(&self) -> usize {
        self.color.iter().copied().max().map_or(1, |c| c + 1)
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names[v].as_deref()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn nodes_of(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_nodes()).filter(move |&v| self.owner[v] == player)
    }

    /// Renames node `v` to `perm[v]`, keeping successor order.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.num_nodes();
        assert_eq!(perm.len(), n);
        let mut decls: Vec<Option<NodeDecl>> = vec![None; n];
        for v in 0..n {
            decls[perm[v]] = Some(NodeDecl {
                owner: self.owner[v],
                color: self.color[v],
                successors: self.succ[v].iter().map(|&w| perm[w]).collect(),
                name: self.names[v].clone(),
            });
        }
        Self::new(decls.into_iter().map(|d| d.expect("not a permutation")).collect())
            .expect("relabeling preserves validity")
    }

    pub fn to_decls(&self) -> Vec<NodeDecl> {
        (0..self.num_nodes())
            .map(|v| NodeDecl {
                owner: self.owner[v],
                color: self.color[v],
                successors: self.succ[v].clone(),
                name: self.names[v].clone(),
            })
            .collect()
    }
}

impl GameView for ParityGame {
    fn node_bound(&self) -> usize {
        self.num_nodes()
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
