//! Counter-based seed derivation.
//!
//! Every trajectory gets its own generator whose seed is a pure function of
//! the base seed and the trajectory's coordinates in the sweep (width index,
//! barrier index, current index, trial index). Results therefore do not depend
//! on how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from `base` and a path of counters.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(base.wrapping_add(GOLDEN)), |acc, &p| {
            mix64(acc ^ mix64(p.wrapping_add(GOLDEN).wrapping_mul(GOLDEN)))
        })
}

pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
