//! Concrete DR-submodular objectives.

mod concave;
mod revenue;
mod tabular;

pub use concave::ConcaveSum;
pub use revenue::{RevenueObjective, WeightedGraph, DEFAULT_ADVOCACY_P};
pub use tabular::{generate_dr_table, TabularObjective, DR_CHECK_LIMIT, GENERATOR_LIMIT};
