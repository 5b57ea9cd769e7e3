//! Seeded random streams.
//!
//! A [`RandomStream`] is identified by a 64-bit seed and a short stage label.
//! The pair is hashed into a ChaCha8 key, so streams with different labels
//! never share state and regenerating one stage leaves every other stage's
//! draws untouched.

use rand::{Error, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stage label for layout creation.
pub const STAGE_LAYOUT: &str = "layout";
/// Stage label for furnishing.
pub const STAGE_FURNISH: &str = "furnish";
/// Stage label for persona playthroughs.
pub const STAGE_PERSONA: &str = "persona";

#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    label: String,
    inner: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stage_label: &str) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed ^ fnv1a(stage_label.as_bytes());
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self {
            seed,
            label: stage_label.to_owned(),
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    /// Substream for one item of a batch, e.g. `("layout", ["cc", "17"])`.
    pub fn derive(seed: u64, stage: &str, parts: &[&str]) -> Self {
        let mut label = String::from(stage);
        for part in parts {
            label.push('/');
            label.push_str(part);
        }
        Self::new(seed, &label)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), Error> {
        self.inner.try_fill_bytes(dest)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
