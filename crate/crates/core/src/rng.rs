//! Seeded random streams.
//!
//! Every run is driven by one 64-bit seed. The generator is ChaCha8
//! (`rand_chacha::ChaCha8Rng`) keyed by `seed_from_u64(seed)`; element `e`
//! draws from ChaCha stream number `e`, and run-level randomness (such as a
//! shuffled element order) from stream `u64::MAX`. Streams never overlap, so
//! the coins used for one element do not depend on how many coins another
//! element consumed.

use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

const RUN_STREAM: u64 = u64::MAX;

/// Stream used for the coin flips of element `e`.
pub fn element_stream(seed: u64, e: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(e as u64);
    rng
}

/// Stream for run-level decisions that are not tied to an element.
pub fn run_stream(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(RUN_STREAM);
    rng
}

/// Uniform draw in `[0, 1)`.
pub(crate) fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// Bernoulli(p) for `p` in `[0, 1]`; `p = 1` is always true, `p = 0` always false.
pub(crate) fn coin<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    unit(rng) < p
}
