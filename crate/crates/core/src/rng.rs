//! Reproducible randomness.
//!
//! Every sampling operation takes an explicit `u64` seed and draws from a
//! ChaCha8 stream created with `SeedableRng::seed_from_u64`. There is no
//! ambient or thread-local randomness anywhere in the crate.
//!
//! Monte Carlo drivers derive one seed per trial with [`trial_seed`], so the
//! result of trial `i` depends only on `(base, i)` and not on how trials are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator used for all sampling.
pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` from a fresh generator seeded with `seed`.
pub fn uniform(seed: u64) -> f64 {
    rng_from_seed(seed).random::<f64>()
}

/// SplitMix64 finalizer applied to `base` and `index`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
