use super::{attractor, find_one_dominated_cycle_nodes, AttractorResult, GameView, ParityGame, Player, Subgraph};

/// A parity game extended by a sink that every player-0 node may move to.
///
/// Nodes are numbered `0..num_nodes()`, the sink is `num_nodes()`. An arena
/// may be a restriction of the game it was built from; `original_id` maps
/// back to the game's node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeArena {
    owner: Vec<Player>,
    color: Vec<usize>,
    /// Game successors; player-0 nodes additionally end with the sink.
    succ: Vec<Vec<usize>>,
    original: Vec<usize>,
    num_colors: usize,
}

impl EscapeArena {
    pub fn sink(&self) -> usize {
        self.original.len()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        v == self.sink()
    }

    /// Number of game nodes, not counting the sink.
    pub fn num_nodes(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    /// Color count `d` of the underlying game; profiles over this arena have
    /// this dimension.
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn original_id(&self, v: usize) -> usize {
        self.original[v]
    }

    pub fn original_ids(&self) -> &[usize] {
        &self.original
    }

    /// Successors in the underlying game, without the escape edge.
    pub fn game_successors(&self, v: usize) -> &[usize] {
        let succ = &self.succ[v];
        if self.owner[v] == Player::Even && !self.is_sink(v) {
            &succ[..succ.len() - 1]
        } else {
            succ
        }
    }

    pub fn nodes_of(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_nodes()).filter(move |&v| self.owner[v] == player)
    }

    pub fn num_escape_edges(&self) -> usize {
        self.nodes_of(Player::Even).count()
    }

    /// Keeps the nodes with `keep[v]`, renumbering them in ascending order.
    fn restrict(&self, keep: &[bool]) -> EscapeArena {
        let n = self.num_nodes();
        let mut new_id = vec![usize::MAX; n];
        let mut original = Vec::new();
        for v in (0..n).filter(|&v| keep[v]) {
            new_id[v] = original.len();
            original.push(self.original[v]);
        }
        let sink = original.len();
        let mut owner = Vec::with_capacity(sink + 1);
        let mut color = Vec::with_capacity(sink + 1);
        let mut succ = Vec::with_capacity(sink + 1);
        for v in (0..n).filter(|&v| keep[v]) {
            owner.push(self.owner[v]);
            color.push(self.color[v]);
            let mut list: Vec<usize> = self
                .game_successors(v)
                .iter()
                .filter(|&&w| keep[w])
                .map(|&w| new_id[w])
                .collect();
            if self.owner[v] == Player::Even {
                list.push(sink);
            }
            succ.push(list);
        }
        owner.push(Player::Even);
        color.push(0);
        succ.push(Vec::new());
        EscapeArena {
            owner,
            color,
            succ,
            original,
            num_colors: self.num_colors,
        }
    }
}

impl GameView for EscapeArena {
    fn node_bound(&self) -> usize {
        self.original.len() + 1
    }

    fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    /// The sink reports color 0; it lies on no cycle.
    fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }
}

/// The arena without its sink and escape edges.
#[derive(Debug, Clone, Copy)]
pub struct WithoutEscape<'a>(pub &'a EscapeArena);

impl GameView for WithoutEscape<'_> {
    fn node_bound(&self) -> usize {
        self.0.num_nodes()
    }
    fn owner(&self, v: usize) -> Player {
        self.0.owner(v)
    }
    fn color(&self, v: usize) -> usize {
        self.0.color(v)
    }
    fn successors(&self, v: usize) -> &[usize] {
        self.0.game_successors(v)
    }
}

pub fn build_escape_arena(game: &ParityGame) -> EscapeArena {
    let n = game.num_nodes();
    let mut owner = Vec::with_capacity(n + 1);
    let mut color = Vec::with_capacity(n + 1);
    let mut succ = Vec::with_capacity(n + 1);
    for v in 0..n {
        owner.push(game.owner(v));
        color.push(game.color(v));
        let mut list = game.successors(v).to_vec();
        if game.owner(v) == Player::Even {
            list.push(n);
        }
        succ.push(list);
    }
    owner.push(Player::Even);
    color.push(0);
    succ.push(Vec::new());
    EscapeArena {
        owner,
        color,
        succ,
        original: (0..n).collect(),
        num_colors: game.num_colors(),
    }
}

/// Outcome of removing the nodes player 1 wins by staying among his own
/// nodes.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub arena: EscapeArena,
    /// Removed nodes, as ids of the input arena, ascending.
    pub pre_won: Vec<usize>,
    /// Nodes on odd-dominated cycles of the player-1 subgraph (input ids).
    pub dominated: Vec<usize>,
    /// Player-1 attractor to `dominated` in the input arena without escape
    /// edges (input ids).
    pub attractor: AttractorResult,
}

/// Removes the player-1 attractor (computed without escape edges) to all
/// odd-dominated cycles that use player-1 nodes only.
pub fn preprocess(arena: &EscapeArena) -> Preprocessed {
    let base = WithoutEscape(arena);
    let player1 = Subgraph::owned_by(&base, Player::Odd);
    let dominated = find_one_dominated_cycle_nodes(&player1);
    let attr = attractor(&base, Player::Odd, &dominated);
    let keep: Vec<bool> = (0..arena.num_nodes()).map(|v| !attr.contains(v)).collect();
    let reduced = arena.restrict(&keep);
    debug_assert!(
        find_one_dominated_cycle_nodes(&Subgraph::owned_by(&WithoutEscape(&reduced), Player::Odd)).is_empty()
    );
    Preprocessed {
        arena: reduced,
        pre_won: attr.members(),
        dominated,
        attractor: attr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_edges_only_for_player_zero() {
        let g = ParityGame::from_triples(&[(1, 0, &[0])]).unwrap();
        let a = build_escape_arena(&g);
        assert_eq!(a.node_bound(), 2);
        assert_eq!(a.successors(0), &[0]);
        assert!(a.successors(a.sink()).is_empty());

        let g = ParityGame::from_triples(&[(0, 0, &[0])]).unwrap();
        let a = build_escape_arena(&g);
        assert_eq!(a.successors(0), &[0, 1]);
        assert_eq!(a.game_successors(0), &[0]);

        let g = ParityGame::from_triples(&[(0, 0, &[1]), (1, 0, &[2]), (0, 1, &[0]), (0, 2, &[0, 1])]).unwrap();
        assert_eq!(build_escape_arena(&g).num_escape_edges(), 3);
    }

    #[test]
    fn preprocess_without_dominated_cycles_is_identity() {
        let g = ParityGame::from_triples(&[(0, 1, &[1]), (1, 2, &[0, 1])]).unwrap();
        let a = build_escape_arena(&g);
        let p = preprocess(&a);
        assert!(p.pre_won.is_empty());
        assert_eq!(p.arena, a);
    }

    #[test]
    fn preprocess_single_odd_loop() {
        let g = ParityGame::from_triples(&[(1, 1, &[0])]).unwrap();
        let p = preprocess(&build_escape_arena(&g));
        assert_eq!(p.pre_won, vec![0]);
        assert!(p.arena.is_empty());
        assert_eq!(p.arena.sink(), 0);
    }

    #[test]
    fn preprocess_attracts_forced_predecessor() {
        // u (player 1) -> v; v (player 1, color 1) self-loop; w (player 0) -> u or itself.
        let g = ParityGame::from_triples(&[(1, 0, &[1]), (1, 1, &[1]), (0, 2, &[0, 2])]).unwrap();
        let p = preprocess(&build_escape_arena(&g));
        assert_eq!(p.dominated, vec![1]);
        assert_eq!(p.pre_won, vec![0, 1]);
        assert_eq!(p.arena.num_nodes(), 1);
        assert_eq!(p.arena.original_id(0), 2);
        // w keeps its self-loop plus the escape edge, renumbered
        assert_eq!(p.arena.successors(0), &[0, 1]);
    }

    #[test]
    fn escape_edges_do_not_shelter_player_zero() {
        // player-0 node whose only game move enters the odd loop is lost
        let g = ParityGame::from_triples(&[(0, 2, &[1]), (1, 1, &[1])]).unwrap();
        let p = preprocess(&build_escape_arena(&g));
        assert_eq!(p.pre_won, vec![0, 1]);
    }
}
