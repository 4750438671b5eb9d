use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Name of the generator behind every [`Seed`]. Recorded in reports so that
/// seeds stay portable across builds.
pub const RNG_ALGORITHM: &str =
    "ChaCha8Rng (rand_chacha 0.3): seed_from_u64(master), set_stream(index)";

/// Master seed from which independent generator streams are derived.
///
/// Stream `i` of master `m` is ChaCha8 keyed by `m` (expanded through
/// `SeedableRng::seed_from_u64`) with its 64-bit stream id set to `i`.
/// Streams never overlap, so trials can run in any order or in parallel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed {
    pub master: u64,
}

impl Seed {
    pub const fn new(master: u64) -> Self {
        Seed { master }
    }

    /// Generator for stream `index`.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(index);
        rng
    }

    /// A new master seed drawn from stream `index`, for nested derivations.
    pub fn derive(&self, index: u64) -> Seed {
        Seed::new(self.rng(index).next_u64())
    }
}

impl From<u64> for Seed {
    fn from(master: u64) -> Self {
        Seed::new(master)
    }
}
