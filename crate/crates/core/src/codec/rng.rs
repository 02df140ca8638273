//! Seed derivation for reproducible parallel trials.
//!
//! Every random draw comes from a ChaCha8 generator keyed by a 64-bit seed
//! and a stream id, so dictionary, message and noise draws of one trial
//! never share a sequence, and trial `i` depends only on the master seed
//! and `i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random streams used by one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Dictionary = 1,
    Message = 2,
    Noise = 3,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed derived from the master seed and trial index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(mix(master) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
