//! Seeded, splittable random streams.
//!
//! Every stream is a ChaCha8 generator. The 256-bit key is laid out as
//! `seed (u64 LE) || family (u64 LE) || 0u128`, and the 64-bit ChaCha
//! stream id selects a substream inside the family:
//!
//! | stream                       | family | stream id |
//! |------------------------------|--------|-----------|
//! | `RngStream::new(seed)`       | 0      | 0         |
//! | `derive_substream(seed, i)`  | 1      | `i`       |
//!
//! Substreams are therefore a pure function of `(seed, index)` and never
//! overlap the root stream. Deriving from a substream uses the same seed,
//! so `derive_substream` is always relative to the root seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROOT_FAMILY: u64 = 0;
const SUBSTREAM_FAMILY: u64 = 1;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    index: Option<u64>,
    inner: ChaCha8Rng,
}

fn key(seed: u64, family: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&family.to_le_bytes());
    key
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        let inner = ChaCha8Rng::from_seed(key(seed, ROOT_FAMILY));
        Self {
            seed,
            index: None,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Substream index, or `None` for a root stream.
    pub fn index(&self) -> Option<u64> {
        self.index
    }

    /// Independent stream keyed by `(seed, index)`.
    pub fn derive_substream(&self, index: u64) -> RngStream {
        derive_substream(self, index)
    }
}

pub fn derive_substream(rng: &RngStream, index: u64) -> RngStream {
    let mut inner = ChaCha8Rng::from_seed(key(rng.seed, SUBSTREAM_FAMILY));
    inner.set_stream(index);
    RngStream {
        seed: rng.seed,
        index: Some(index),
        inner,
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
