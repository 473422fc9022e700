//! Seeded, counter-based random streams.
//!
//! Every random decision in the crate flows from an [`RngStream`]: a master
//! seed plus a stream index. Child streams are derived by mixing the parent
//! index with a child key, so run `r` and walker `w` always receive the same
//! generator regardless of how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Identifies one independent random sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub index: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, index: 0 }
    }

    pub fn with_index(seed: u64, index: u64) -> Self {
        Self { seed, index }
    }

    /// Derives an independent stream keyed by `key` (a run index, walker id, ...).
    pub fn child(&self, key: u64) -> Self {
        let mixed = splitmix64(self.index ^ splitmix64(key.wrapping_add(0x9e37_79b9_7f4a_7c15)));
        Self { seed: self.seed, index: mixed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        rng
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
