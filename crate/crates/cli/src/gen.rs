use std::io::Write;

use clap::Args;
use parity_si::arena::{serialize_pgsolver, NodeDecl, ParityGame, Player};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 10)]
    pub nodes: usize,
    /// Maximum out-degree; each node gets between 1 and this many successors.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 4)]
    pub colors: usize,
    /// Probability that a node belongs to player 0.
    #[arg(long = "p0-fraction", default_value_t = 0.5)]
    pub p0_fraction: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Default for GenArgs {
    fn default() -> Self {
        GenArgs {
            nodes: 10,
            degree: 2,
            colors: 4,
            p0_fraction: 0.5,
            seed: 0,
        }
    }
}

/// Random game: uniform colors, owners drawn with `p0_fraction`, and for
/// each node a uniform number of distinct uniform successors.
pub fn generate(args: &GenArgs) -> Result<ParityGame, CliError> {
    if args.nodes == 0 || args.degree == 0 || args.colors == 0 {
        return Err(CliError::Usage("--nodes, --degree and --colors must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&args.p0_fraction) {
        return Err(CliError::Usage("--p0-fraction must lie in [0, 1]".into()));
    }
    let n = args.nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let decls = (0..n)
        .map(|_| {
            let owner = if rng.gen_bool(args.p0_fraction) {
                Player::Even
            } else {
                Player::Odd
            };
            let color = rng.gen_range(0..args.colors);
            let k = rng.gen_range(1..=args.degree.min(n));
            let mut successors = sample(&mut rng, n, k).into_vec();
            successors.sort_unstable();
            NodeDecl {
                owner,
                color,
                successors,
                name: None,
            }
        })
        .collect();
    ParityGame::new(decls).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let game = generate(args)?;
    out.write_all(serialize_pgsolver(&game).as_bytes())?;
    Ok(())
}
