//! Session seed for the randomized steps (splitting polynomials, picking
//! candidate elements). Every generator is derived from the session seed and
//! a call-site tag, so runs are reproducible.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

static SESSION: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

pub fn set_seed(seed: u64) {
    SESSION.store(seed, Ordering::SeqCst);
}

pub fn seed() -> u64 {
    SESSION.load(Ordering::SeqCst)
}

pub fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}
