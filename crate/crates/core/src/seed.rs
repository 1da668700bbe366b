//! Deterministic seed derivation.
//!
//! Every random stream in an experiment is seeded by
//! `derive_seed(master, &[stream, i, j, ...])`: the master seed and each
//! coordinate are folded in order through the SplitMix64 finalizer. Streams
//! used by the experiment runner:
//!
//! | stream | coordinates          | use                              |
//! |--------|----------------------|----------------------------------|
//! | 0      | -                    | BA generation when no seed given |
//! | 1      | level                | rewiring chain of a level        |
//! | 2      | level, trial         | train/test split                 |
//! | 3      | level, trial         | negative-class sampling          |
//!
//! The derivation depends only on coordinates, never on scheduling, so
//! parallel and serial runs consume identical streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(splitmix(master), |acc, &c| splitmix(acc ^ splitmix(c)))
}
