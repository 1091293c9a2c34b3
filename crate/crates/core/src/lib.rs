//! Parity game solving by non-deterministic strategy iteration.
//!
//! A game is extended to an escape arena in which player 0 may leave to a
//! sink from any of his nodes. Player-0 strategies are valued by color
//! profiles, improved by switching to better edges until no strict
//! improvement is left, and the final valuation tells the winner of every
//! node. See [`iteration::solve`].

pub mod arena;
pub mod iteration;
pub mod oracle;
pub mod profile;
pub mod valuation;

pub use arena::{parse_pgsolver, serialize_pgsolver, ParityGame, Player};
pub use iteration::{solve, Backend, SolveOptions, SolveResult, SwitchPolicy};
pub use profile::ColorProfile;
