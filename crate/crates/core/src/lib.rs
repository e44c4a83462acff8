//! Maximization of non-monotone DR-submodular functions over the bounded
//! integer lattice `{x : 0 <= x <= B}`.
//!
//! The crate provides three randomized double-greedy maximizers and a
//! deterministic single-greedy baseline:
//!
//! * [`maximize::double_greedy`]: the pseudopolynomial 1/2-approximation,
//!   `Θ(‖B‖₁)` oracle calls.
//! * [`maximize::fast_double_greedy`]: replaces exact marginals by
//!   piecewise-constant [`sketch::Sketch`]es, giving a `1/(2+ε)`
//!   approximation with `O(|E|/ε · log(Δ/δ) · log ‖B‖∞)` oracle calls.
//! * [`fast_sim::poly_maximize`]: simulates the sketch-driven walk in
//!   batches, so total running time (not only oracle calls) is polynomial.
//! * [`maximize::single_greedy`]: coordinate-wise greedy baseline.
//!
//! Objectives implement [`Objective`]; every algorithm talks to them
//! through a counting [`Oracle`]. The crate is `no_std` and only needs
//! `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod fast_sim;
mod lattice;
mod math;
pub mod maximize;
pub mod objectives;
mod oracle;
pub mod rng;
pub mod sketch;

pub use error::{Error, Result};
pub use lattice::{BoxConstraint, GroundSet, LatticeVector};
pub use maximize::{Algorithm, RunReport};
pub use oracle::{Objective, Oracle};
