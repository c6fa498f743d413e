//! Toeplitz matrix-vector products over GF(2).
//!
//! A `p x q` Toeplitz matrix is constant along diagonals and fully described
//! by a seed of `p + q - 1` bits: with the seed indexed `0..p+q-1`,
//! `T[i][j] = seed[p - 1 + j - i]`, so the main diagonal is `seed[p - 1]`
//! and seed index 0 sits in the lower-left corner.
//!
//! Two evaluation paths are provided. [`ToeplitzSpec::multiply_naive`] walks
//! bits and is the reference; [`ToeplitzSpec::multiply`] computes each output
//! bit as the parity of a word-windowed AND between the seed and the input
//! and is bit-identical by construction (and tested to be).

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::BitString;

/// Toeplitz product contract violations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToeplitzError {
    /// Both dimensions must be at least 1.
    #[error("matrix dimensions must be positive, got {out_len}x{in_len}")]
    EmptyDimension { out_len: usize, in_len: usize },
    /// Seed must have exactly `out_len + in_len - 1` bits.
    #[error("seed length {got}, want {want}")]
    SeedLength { got: usize, want: usize },
    /// Input must have exactly `in_len` bits.
    #[error("input length {got}, want {want}")]
    InputLength { got: usize, want: usize },
}

/// Dimensions plus seed of one Toeplitz matrix.
#[derive(Clone, Debug)]
pub struct ToeplitzSpec {
    out_len: usize,
    in_len: usize,
    seed: BitString,
}

/// Outputs longer than this are worth fanning out across threads.
const PAR_THRESHOLD_BITS: usize = 1 << 14;

impl ToeplitzSpec {
    pub fn new(out_len: usize, in_len: usize, seed: BitString) -> Result<Self, ToeplitzError> {
        if out_len == 0 || in_len == 0 {
            return Err(ToeplitzError::EmptyDimension { out_len, in_len });
        }
        let want = out_len + in_len - 1;
        if seed.len() != want {
            return Err(ToeplitzError::SeedLength {
                got: seed.len(),
                want,
            });
        }
        Ok(Self {
            out_len,
            in_len,
            seed,
        })
    }

    pub fn out_len(&self) -> usize {
        self.out_len
    }

    pub fn in_len(&self) -> usize {
        self.in_len
    }

    pub fn seed(&self) -> &BitString {
        &self.seed
    }

    /// Matrix entry `T[i][j]`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.out_len && j < self.in_len);
        self.seed.get(self.out_len - 1 + j - i)
    }

    /// Reference product: bit-by-bit XOR of masked entries.
    pub fn multiply_naive(&self, x: &BitString) -> Result<BitString, ToeplitzError> {
        self.check_input(x)?;
        let mut out = BitString::zeros(self.out_len);
        for i in 0..self.out_len {
            let mut acc = false;
            for j in 0..self.in_len {
                acc ^= self.entry(i, j) && x.get(j);
            }
            if acc {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Word-level product. Output bit `i` is the parity of
    /// `(seed >> (p - 1 - i)) & x`, evaluated 64 bits at a time.
    pub fn multiply(&self, x: &BitString) -> Result<BitString, ToeplitzError> {
        self.check_input(x)?;
        let seed_words = self.seed.words();
        let x_words = x.words();
        let p = self.out_len;

        let row = |i: usize| -> bool {
            let offset = p - 1 - i;
            let base = offset >> 6;
            let shift = offset & 63;
            let mut acc = 0u64;
            if shift == 0 {
                for (w, &xw) in x_words.iter().enumerate() {
                    acc ^= seed_words[base + w] & xw;
                }
            } else {
                for (w, &xw) in x_words.iter().enumerate() {
                    let lo = seed_words[base + w] >> shift;
                    let hi = if base + w + 1 < seed_words.len() {
                        seed_words[base + w + 1] << (64 - shift)
                    } else {
                        0
                    };
                    acc ^= (lo | hi) & xw;
                }
            }
            acc.count_ones() & 1 == 1
        };

        let bits: Vec<bool> = if p >= PAR_THRESHOLD_BITS {
            (0..p).into_par_iter().map(row).collect()
        } else {
            (0..p).map(row).collect()
        };
        Ok(BitString::from_bits(bits))
    }

    fn check_input(&self, x: &BitString) -> Result<(), ToeplitzError> {
        if x.len() != self.in_len {
            return Err(ToeplitzError::InputLength {
                got: x.len(),
                want: self.in_len,
            });
        }
        Ok(())
    }
}
