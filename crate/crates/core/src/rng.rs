//! Seeded random streams.
//!
//! Every stochastic routine takes its generator explicitly. Runs use
//! [`ChaCha8Rng`] seeded with [`SeedableRng::seed_from_u64`]; independent
//! work items (simulations, SSE pairs, benchmark instances) get their own
//! ChaCha stream number, so results do not depend on scheduling order or
//! on the host platform.

use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

/// Stream numbers reserved for the pipeline stages.
pub mod streams {
    pub const MOGA: u64 = 1;
    /// Simulation `s` of the ant colony stage uses `ACO_BASE + s`.
    pub const ACO_BASE: u64 = 1 << 32;
}

/// Generator for stream `stream` of the master `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform index in `0..n`, sampled through `u64` so that the draw is the
/// same on 32- and 64-bit targets.
///
/// Panics if `n == 0`.
pub fn index<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    assert!(n > 0, "cannot sample from an empty range");
    rng.random_range(0..n as u64) as usize
}

/// Bernoulli draw with probability `p` (clamped to `[0, 1]`).
pub fn chance<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.random::<f64>() < p
    }
}
