//! Deterministic per-trial seed derivation.
//!
//! Every trial draws from its own generator whose seed is a pure function of
//! the master seed and the trial index, so results never depend on how trials
//! are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used throughout the crate.
pub type TrialRng = ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(mix(master) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Seed for a named sub-stream, e.g. graph sampling vs walking within one trial.
pub fn derive_stream(master: u64, index: u64, stream: u64) -> u64 {
    derive_seed(derive_seed(master, index), stream)
}

pub fn trial_rng(master: u64, index: u64) -> TrialRng {
    TrialRng::seed_from_u64(derive_seed(master, index))
}

pub fn stream_rng(master: u64, index: u64, stream: u64) -> TrialRng {
    TrialRng::seed_from_u64(derive_stream(master, index, stream))
}

pub fn rng_from_seed(seed: u64) -> TrialRng {
    TrialRng::seed_from_u64(seed)
}
