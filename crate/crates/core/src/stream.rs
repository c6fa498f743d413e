//! Synchronized deterministic bit stream.
//!
//! Both parties derive shortened-bit positions and values, hash evaluation
//! points, and similar shared public randomness from the same keystream, so
//! the generator must be bit-exact across hosts. The stream is the ChaCha20
//! keystream for a 256-bit seed with zero nonce and block counter starting
//! at 0; bits are taken MSB-first from successive keystream bytes.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::bits::BitString;

/// Deterministic shared bit stream. Two streams with equal seed and counter
/// emit identical bit sequences.
#[derive(Clone)]
pub struct SyncStream {
    rng: ChaCha20Rng,
    // One keystream block at a time; partial fills would skip words.
    block: [u8; 64],
    byte_pos: usize,
    current: u8,
    bits_left: u8,
    emitted: u64,
}

impl SyncStream {
    /// Stream over the keystream of `seed`, starting at bit 0.
    pub fn new(seed: [u8; 32]) -> Self {
        Self {
            rng: ChaCha20Rng::from_seed(seed),
            block: [0; 64],
            byte_pos: 64,
            current: 0,
            bits_left: 0,
            emitted: 0,
        }
    }

    /// Total bits drawn so far.
    pub fn counter(&self) -> u64 {
        self.emitted
    }

    fn next_byte(&mut self) -> u8 {
        if self.byte_pos == 64 {
            self.rng.fill_bytes(&mut self.block);
            self.byte_pos = 0;
        }
        let b = self.block[self.byte_pos];
        self.byte_pos += 1;
        b
    }

    /// Next bit.
    pub fn bit(&mut self) -> bool {
        if self.bits_left == 0 {
            self.current = self.next_byte();
            self.bits_left = 8;
        }
        let bit = self.current & 0x80 != 0;
        self.current <<= 1;
        self.bits_left -= 1;
        self.emitted += 1;
        bit
    }

    /// Next `count` bits.
    pub fn bits(&mut self, count: usize) -> BitString {
        let mut out = BitString::zeros(count);
        for i in 0..count {
            if self.bit() {
                out.set(i, true);
            }
        }
        out
    }

    /// Uniform integer in `[0, bound)` by rejection sampling on the minimal
    /// bit width. `bound` must be positive.
    pub fn uniform_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "uniform_below requires a positive bound");
        if bound == 1 {
            return 0;
        }
        let width = 64 - (bound - 1).leading_zeros();
        loop {
            let mut v = 0u64;
            for _ in 0..width {
                v = (v << 1) | u64::from(self.bit());
            }
            if v < bound {
                return v;
            }
        }
    }

    /// `count` distinct positions in `[0, n)`, sorted ascending. Partial
    /// Fisher-Yates over the index range, so both parties draw the same set
    /// from the same stream state.
    pub fn distinct_positions(&mut self, n: usize, count: usize) -> Vec<usize> {
        assert!(count <= n, "cannot draw {count} distinct positions from {n}");
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..count {
            let j = i + self.uniform_below((n - i) as u64) as usize;
            idx.swap(i, j);
        }
        let mut chosen = idx[..count].to_vec();
        chosen.sort_unstable();
        chosen
    }
}
