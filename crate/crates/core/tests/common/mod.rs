use parity_si::arena::{NodeDecl, ParityGame, Player};
use rand::seq::index::sample;
use rand::Rng;

/// Random game with 1..=max_nodes nodes, colors below `max_colors` and
/// between 1 and `max_degree` distinct successors per node.
pub fn random_game<R: Rng>(rng: &mut R, max_nodes: usize, max_colors: usize, max_degree: usize) -> ParityGame {
    let n = rng.gen_range(1..=max_nodes);
    let d = rng.gen_range(1..=max_colors);
    let decls = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_degree.min(n));
            let mut successors = sample(rng, n, k).into_vec();
            successors.sort_unstable();
            NodeDecl {
                owner: if rng.gen_bool(0.5) { Player::Even } else { Player::Odd },
                color: rng.gen_range(0..d),
                successors,
                name: None,
            }
        })
        .collect();
    ParityGame::new(decls).unwrap()
}
