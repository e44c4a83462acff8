use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {coord} = {value} lies outside the box bound {bound}")]
    OutOfDomain { coord: usize, value: u64, bound: u64 },

    /// alpha + beta < 0 at some step, which cannot happen for a DR-submodular input.
    #[error("DR-submodularity violated at element {element}: alpha = {alpha}, beta = {beta}")]
    DrViolation { element: usize, alpha: f64, beta: f64 },

    #[error("capacity exceeded: {what} needs {needed} states, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
