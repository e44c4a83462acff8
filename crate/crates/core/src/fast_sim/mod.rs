//! Polynomial-time simulation of the sketch-driven double greedy.
//!
//! Inside one element's loop, `FastDG` flips the same biased coin for as
//! long as `x(e)` and `y(e)` stay on constant pieces of the sketches. That
//! stretch is the random process `P(p, ℓa, ℓb, ℓa+b)`: starting at
//! `a = b = 0`, increment `a` with probability `p` and `b` otherwise until
//! `a = ℓa`, `b = ℓb` or `a + b = ℓa+b`. [`simulate_process`] samples its
//! end point in polylogarithmic time using geometric jumps near the
//! boundaries and binomial batches far from them, and [`poly_maximize`]
//! runs one simulation per piece.

mod poly;
mod process;
mod samplers;

pub use poly::{poly_maximize, poly_maximize_with, simulation_budget, ETA_CONSTANT};
pub use process::{
    process_exact_distribution, process_naive, simulate_process, ProcessOutcome, ProcessParams, EXACT_STATE_LIMIT,
};
pub use samplers::{sample_binomial, sample_geometric};
