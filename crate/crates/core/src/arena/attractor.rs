use std::collections::VecDeque;

use super::{GameView, Player};

/// Result of an attractor computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractorResult {
    pub player: Player,
    /// `rank[v]` is the first layer containing `v`; `None` outside the attractor.
    pub rank: Vec<Option<usize>>,
    /// For members owned by the attracting player with non-zero rank: every
    /// successor of strictly smaller rank.
    pub strategy: Vec<Vec<usize>>,
}

impl AttractorResult {
    pub fn contains(&self, v: usize) -> bool {
        self.rank.get(v).is_some_and(Option::is_some)
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.rank.len()).filter(|&v| self.contains(v)).collect()
    }

    pub fn len(&self) -> usize {
        self.rank.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Attractor of `player` to `target` in `view`.
///
/// Layer `i+1` adds the attracting player's nodes with a successor in layer
/// `i` and the opponent's nodes whose successors all lie in layer `i`.
/// Nodes without successors are only members if they are targets.
pub fn attractor<G: GameView + ?Sized>(view: &G, player: Player, target: &[usize]) -> AttractorResult {
    let bound = view.node_bound();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); bound];
    let mut remaining = vec![0usize; bound];
    for v in (0..bound).filter(|&v| view.contains(v)) {
        remaining[v] = view.successors(v).len();
        for &w in view.successors(v) {
            preds[w].push(v);
        }
    }

    let mut rank: Vec<Option<usize>> = vec![None; bound];
    let mut queue = VecDeque::new();
    for &t in target {
        if view.contains(t) && rank[t].is_none() {
            rank[t] = Some(0);
            queue.push_back(t);
        }
    }
    // FIFO order visits nodes by non-decreasing rank, so the rank assigned
    // on entry is the first layer the node appears in.
    while let Some(w) = queue.pop_front() {
        let next = rank[w].expect("queued nodes are ranked") + 1;
        for &v in &preds[w] {
            if rank[v].is_some() {
                continue;
            }
            let joins = if view.owner(v) == player {
                true
            } else {
                remaining[v] -= 1;
                remaining[v] == 0
            };
            if joins {
                rank[v] = Some(next);
                queue.push_back(v);
            }
        }
    }

    let strategy = (0..bound)
        .map(|v| match rank[v] {
            Some(r) if r > 0 && view.owner(v) == player => view
                .successors(v)
                .iter()
                .copied()
                .filter(|&w| rank[w].is_some_and(|rw| rw < r))
                .collect(),
            _ => Vec::new(),
        })
        .collect();

    AttractorResult {
        player,
        rank,
        strategy,
    }
}
