//! Non-deterministic strategy iteration.
//!
//! Starting from the strategy that escapes everywhere, each step valuates
//! the current strategy, computes its improving edges and lets a switch rule
//! pick the next strategy among them. Iteration stops when no strict
//! improvement is left; player 0 then wins exactly the nodes valued `+inf`.

mod extract;
mod policy;
mod solve;

pub use extract::{deterministic_refinements, extract_deterministic, TooManyRefinements};
pub use policy::{StepContext, SwitchPolicy, SwitchRule};
pub use solve::{
    binary_choice_bound, general_iteration_bound, solve, solve_with, Backend, IterationRecord, IterationStats,
    SolveError, SolveOptions, SolveResult,
};
