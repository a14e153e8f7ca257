//! Portable seeded pseudo-random numbers.
//!
//! SplitMix64: the state advances by `0x9E3779B97F4A7C15` and each output is
//! mixed with `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
//! `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, `z ^ (z >> 31)` (wrapping
//! arithmetic). Bounded draws take `next_u64() % bound`; shuffles are
//! Fisher-Yates from the last position down. Any implementation following
//! these rules reproduces the same sequences from the same seed.

use serde::{Deserialize, Serialize};

/// 64-bit seed; equal seeds produce bit-identical output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound`. Panics if `bound` is zero.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "empty range");
        (self.next_u64() % bound as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    /// A random subset of `items`, each kept with probability one half.
    pub fn subset<T: Copy>(&mut self, items: &[T]) -> Vec<T> {
        let mut out = Vec::new();
        for chunk in items.chunks(64) {
            let mask = self.next_u64();
            out.extend(chunk.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x));
        }
        out
    }

    /// `size` draws from `items` (with replacement).
    pub fn sample<T: Copy>(&mut self, items: &[T], size: usize) -> Vec<T> {
        (0..size).map(|_| items[self.below(items.len())]).collect()
    }
}
