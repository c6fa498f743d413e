//! Arbitrary-length bit strings over GF(2).
//!
//! `BitString` is the carrier for keys, syndromes, hash tags and seeds.
//! Bits are indexed from 0; the serialized form packs bit 0 into the most
//! significant bit of byte 0 and zero-pads the low bits of a final partial
//! byte. The in-memory layout is `u64` words with bit `i` at word `i / 64`,
//! position `i % 64`; bits beyond `len` are always zero so that word-level
//! kernels (XOR, popcount, windowed AND) need no masking.

use std::fmt;

use thiserror::Error;

/// Errors for bit-string construction and (de)serialization.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitsError {
    /// Byte buffer length does not match the declared bit count.
    #[error("byte length {got} does not match {expected} bytes for {bits} bits")]
    ByteLength {
        got: usize,
        expected: usize,
        bits: usize,
    },
    /// Padding bits in the final byte must be zero.
    #[error("nonzero padding in final byte")]
    BadPadding,
    /// Operand lengths must agree.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// An ordered sequence of bits with word-packed storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    /// All-zero string of `len` bits.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Empty string.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Builds from `0`/`1` values, index 0 first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = Self::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    /// Bit at index `i`. Panics if out of range.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for {}", self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Sets bit `i`. Panics if out of range.
    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for {}", self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    /// Appends one bit.
    pub fn push(&mut self, value: bool) {
        if self.len & 63 == 0 {
            self.words.push(0);
        }
        if value {
            self.words[self.len >> 6] |= 1u64 << (self.len & 63);
        }
        self.len += 1;
    }

    /// Appends all bits of `other`.
    pub fn extend(&mut self, other: &BitString) {
        let old_len = self.len;
        self.len += other.len;
        self.words.resize(self.len.div_ceil(64), 0);
        let shift = old_len & 63;
        let base = old_len >> 6;
        for (k, &w) in other.words.iter().enumerate() {
            if shift == 0 {
                self.words[base + k] |= w;
            } else {
                self.words[base + k] |= w << shift;
                if base + k + 1 < self.words.len() {
                    self.words[base + k + 1] |= w >> (64 - shift);
                }
            }
        }
        self.mask_tail();
    }

    /// Copy of bits `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len, "slice out of range");
        let out_len = end - start;
        let shift = start & 63;
        let base = start >> 6;
        let mut words = Vec::with_capacity(out_len.div_ceil(64));
        for w in 0..out_len.div_ceil(64) {
            let lo = self.words[base + w] >> shift;
            let hi = if shift != 0 && base + w + 1 < self.words.len() {
                self.words[base + w + 1] << (64 - shift)
            } else {
                0
            };
            words.push(lo | hi);
        }
        let mut out = BitString {
            words,
            len: out_len,
        };
        out.mask_tail();
        out
    }

    /// XOR with an equal-length string, in place.
    pub fn xor_assign(&mut self, other: &BitString) -> Result<(), BitsError> {
        if self.len != other.len {
            return Err(BitsError::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance to an equal-length string.
    pub fn hamming(&self, other: &BitString) -> Result<usize, BitsError> {
        if self.len != other.len {
            return Err(BitsError::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Packs to bytes: bit 0 in the MSB of byte 0, final partial byte
    /// zero-padded in the low bits.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n_bytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(n_bytes);
        for k in 0..n_bytes {
            let raw = (self.words[k >> 3] >> ((k & 7) * 8)) as u8;
            out.push(raw.reverse_bits());
        }
        out
    }

    /// Inverse of [`to_bytes`](Self::to_bytes). Rejects buffers of the wrong
    /// size and nonzero padding bits.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self, BitsError> {
        let expected = len.div_ceil(8);
        if bytes.len() != expected {
            return Err(BitsError::ByteLength {
                got: bytes.len(),
                expected,
                bits: len,
            });
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (k, &b) in bytes.iter().enumerate() {
            words[k >> 3] |= (b.reverse_bits() as u64) << ((k & 7) * 8);
        }
        let raw = BitString { words, len };
        let mut masked = raw.clone();
        masked.mask_tail();
        if masked.words != raw.words {
            return Err(BitsError::BadPadding);
        }
        Ok(masked)
    }

    /// Iterator over bits, index 0 first.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Backing words, little-endian bit order within each word. Bits past
    /// `len` are zero.
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        let mut s = BitString { words, len };
        s.mask_tail();
        s
    }

    fn mask_tail(&mut self) {
        let tail = self.len & 63;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "BitString[{}]({})", self.len, self)
        } else {
            write!(f, "BitString[{}]({}...)", self.len, self.slice(0, 64))
        }
    }
}
