//! Deterministic per-sample random number streams.
//!
//! Every Monte Carlo sample is generated from an independent stream keyed by
//! `(master_seed, sample_index)`. The same key always reproduces the same
//! stream regardless of how samples are scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The rng used throughout the crate. ChaCha is portable and counter-based,
/// so streams with different indices never overlap.
pub type Stream = ChaCha8Rng;

/// Independent deterministic stream for one sample.
pub fn stream(master_seed: u64, sample_index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(sample_index);
    rng
}
