//! Rate-adaptive LDPC syndrome coding.
//!
//! A shared pool holds one parity-check matrix per code rate. Each round
//! picks the minimal rate whose redundancy fits the efficiency budget
//! `(1 - R) / h_b(q) <= f_crit`, then shortens
//! `n_s = floor(n - m / (f_crit h_b(q)))` positions to known values so the
//! effective redundancy per unknown bit lands on the budget from below.
//! Shortened positions and values come from the synchronized stream, so both
//! parties assemble identical plans without communication.

mod decoder;
mod peg;

pub use decoder::{decode, DecodeResult, DecodeStatus};
pub use peg::{build_matrix, profile_for, DEGREE_PROFILES};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::bits::BitString;
use crate::entropy::binary_entropy_checked;
use crate::sparse::{SparseBinaryMatrix, SparseError};
use crate::stream::SyncStream;

/// Smallest QBER admitted into the rate-adaptation formulas; guards the
/// division by `h_b`.
pub const QBER_MIN: f64 = 0.001;

/// Errors of pool construction, rate adaptation and decoding contracts.
#[derive(Debug, Error)]
pub enum LdpcError {
    #[error("code pool has no rates")]
    EmptyPool,
    #[error("rate {0} permille not in pool")]
    UnknownRate(u16),
    #[error("rate must lie in (0, 1), got {0} permille")]
    RateOutOfRange(u16),
    #[error("degree {degree} infeasible for {n} columns x {m} rows")]
    DegreeInfeasible { n: usize, m: usize, degree: usize },
    #[error("need {needed} key bits, only {available} available")]
    Starvation { needed: usize, available: usize },
    #[error("frame length {got}, matrix has {want} columns")]
    FrameLength { got: usize, want: usize },
    #[error("syndrome length {got}, matrix has {want} rows")]
    SyndromeLength { got: usize, want: usize },
    #[error("decoder requires 0 < qber < 0.5, got {0}")]
    QberOutOfRange(f64),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// Pool of parity-check matrices, one per rate, over a fixed frame size.
///
/// Matrices are built lazily and cached; construction is deterministic in
/// `(peg_seed, rate)`, so both parties materialize identical codes in any
/// order.
pub struct CodePool {
    frame_size: usize,
    rates: Vec<u16>,
    peg_seed: u64,
    cache: Mutex<HashMap<u16, Arc<SparseBinaryMatrix>>>,
}

impl CodePool {
    /// Registers `rates` (permille, e.g. 500..=900) over frames of `n` bits.
    pub fn build(n: usize, rates_permille: &[u16], peg_seed: u64) -> Result<Self, LdpcError> {
        let mut rates = rates_permille.to_vec();
        rates.sort_unstable();
        rates.dedup();
        for &r in &rates {
            if r == 0 || r >= 1000 {
                return Err(LdpcError::RateOutOfRange(r));
            }
        }
        Ok(Self {
            frame_size: n,
            rates,
            peg_seed,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn frame_size(&self) -> usize {
        self.frame_size
    }

    /// Registered rates in permille, ascending.
    pub fn rates(&self) -> &[u16] {
        &self.rates
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// Check rows for a rate: `m = ceil(n (1 - R))`, exact in integers.
    pub fn check_rows(&self, rate_permille: u16) -> usize {
        check_rows_for(self.frame_size, rate_permille)
    }

    /// The parity-check matrix for `rate_permille`, built on first use.
    pub fn matrix(&self, rate_permille: u16) -> Result<Arc<SparseBinaryMatrix>, LdpcError> {
        if !self.rates.contains(&rate_permille) {
            return Err(LdpcError::UnknownRate(rate_permille));
        }
        let mut cache = self.cache.lock().expect("pool cache poisoned");
        if let Some(m) = cache.get(&rate_permille) {
            return Ok(Arc::clone(m));
        }
        let m = self.check_rows(rate_permille);
        let h = Arc::new(build_matrix(
            self.frame_size,
            m,
            rate_permille,
            self.peg_seed,
        )?);
        cache.insert(rate_permille, Arc::clone(&h));
        Ok(h)
    }

    /// Smallest QBER the pool's highest rate can serve without the shortening
    /// formula going negative: the `q` solving `h_b(q) = m_max / (f_crit n)`.
    /// Estimates below it are lifted to it before entering rate adaptation,
    /// which keeps every round inside the efficiency budget.
    pub fn coverage_floor(&self, f_crit: f64) -> Result<f64, LdpcError> {
        let max_rate = *self.rates.last().ok_or(LdpcError::EmptyPool)?;
        let m = self.check_rows(max_rate) as f64;
        let target = m / (f_crit * self.frame_size as f64);
        if target >= 1.0 {
            return Ok(0.5);
        }
        if target <= binary_entropy_checked(QBER_MIN) {
            return Ok(QBER_MIN);
        }
        let (mut lo, mut hi) = (QBER_MIN, 0.5);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if binary_entropy_checked(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }

    /// Clamps an estimate into the range rate adaptation can serve.
    pub fn operative_qber(&self, qber_est: f64, f_crit: f64) -> Result<f64, LdpcError> {
        let floor = self.coverage_floor(f_crit)?;
        Ok(qber_est.clamp(floor, 0.5))
    }
}

/// `m = ceil(n (1 - R))` in exact integer arithmetic.
pub fn check_rows_for(n: usize, rate_permille: u16) -> usize {
    let inv = 1000 - rate_permille as usize;
    (n * inv).div_ceil(1000)
}

/// The minimal pool rate satisfying `(1 - R) / h_b(q) <= f_crit`; the
/// maximal rate when none does (shortening then compensates).
pub fn select_rate(pool: &CodePool, qber_est: f64, f_crit: f64) -> Result<u16, LdpcError> {
    if pool.is_empty() {
        return Err(LdpcError::EmptyPool);
    }
    let q = qber_est.clamp(QBER_MIN, 0.5);
    let h = binary_entropy_checked(q);
    for &rate in pool.rates() {
        let redundancy = (1000 - rate) as f64 / 1000.0;
        if redundancy / h <= f_crit {
            return Ok(rate);
        }
    }
    Ok(*pool.rates().last().expect("non-empty pool"))
}

/// Shortened-bit count `n_s = floor(n - m / (f_crit h_b(q)))`, clamped into
/// `[0, n - m]`.
pub fn shortened_count(n: usize, m: usize, qber_est: f64, f_crit: f64) -> usize {
    let q = qber_est.clamp(QBER_MIN, 0.5);
    let h = binary_entropy_checked(q);
    let raw = (n as f64 - m as f64 / (f_crit * h)).floor();
    if raw < 0.0 {
        0
    } else {
        (raw as usize).min(n - m)
    }
}

/// Positions and values of the shortened bits of one frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShorteningPlan {
    frame_size: usize,
    positions: Vec<u32>,
    values: BitString,
    mask: BitString,
}

impl ShorteningPlan {
    /// `positions` must be sorted, distinct and within the frame; `values`
    /// aligns with them.
    pub fn new(frame_size: usize, positions: Vec<u32>, values: BitString) -> Self {
        assert_eq!(positions.len(), values.len(), "positions/values mismatch");
        let mut mask = BitString::zeros(frame_size);
        for w in positions.windows(2) {
            assert!(w[0] < w[1], "positions must be sorted and distinct");
        }
        for &p in &positions {
            mask.set(p as usize, true);
        }
        Self {
            frame_size,
            positions,
            values,
            mask,
        }
    }

    /// Empty plan: every frame bit is payload.
    pub fn none(frame_size: usize) -> Self {
        Self::new(frame_size, Vec::new(), BitString::new())
    }

    pub fn shortened_bits(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn values(&self) -> &BitString {
        &self.values
    }

    #[inline]
    pub fn is_shortened(&self, i: usize) -> bool {
        self.mask.get(i)
    }

    /// Value of the shortened bit at absolute frame position `i`.
    pub fn value_at(&self, i: usize) -> bool {
        let idx = self
            .positions
            .binary_search(&(i as u32))
            .expect("position is shortened");
        self.values.get(idx)
    }
}

/// One reconciliation frame: payload bits interleaved with shortened bits.
#[derive(Clone, Debug)]
pub struct Frame {
    payload: BitString,
    plan: ShorteningPlan,
    assembled: BitString,
}

impl Frame {
    pub fn new(payload: BitString, plan: ShorteningPlan) -> Self {
        let n = plan.frame_size;
        assert_eq!(
            payload.len() + plan.shortened_bits(),
            n,
            "payload plus shortened bits must fill the frame"
        );
        let mut assembled = BitString::zeros(n);
        let mut next_payload = 0usize;
        for i in 0..n {
            let bit = if plan.is_shortened(i) {
                plan.value_at(i)
            } else {
                let b = payload.get(next_payload);
                next_payload += 1;
                b
            };
            if bit {
                assembled.set(i, true);
            }
        }
        Self {
            payload,
            plan,
            assembled,
        }
    }

    pub fn payload(&self) -> &BitString {
        &self.payload
    }

    pub fn plan(&self) -> &ShorteningPlan {
        &self.plan
    }

    pub fn assembled(&self) -> &BitString {
        &self.assembled
    }

    /// Restricts a frame-sized word to the payload positions, in order.
    pub fn extract_payload(&self, word: &BitString) -> BitString {
        assert_eq!(word.len(), self.assembled.len());
        let mut out = BitString::zeros(self.payload.len());
        let mut k = 0usize;
        for i in 0..word.len() {
            if !self.plan.is_shortened(i) {
                if word.get(i) {
                    out.set(k, true);
                }
                k += 1;
            }
        }
        out
    }
}

/// Cuts `count` frames of `n` bits from `key`, each with `n_s` shortened
/// bits drawn from `stream`. Consumes exactly `count * (n - n_s)` key bits
/// in order; equal stream states on both parties yield identical plans.
pub fn assemble_frames(
    key: &BitString,
    n: usize,
    n_s: usize,
    stream: &mut SyncStream,
    count: usize,
) -> Result<Vec<Frame>, LdpcError> {
    assert!(n_s < n, "a frame must keep at least one payload bit");
    let payload_len = n - n_s;
    let needed = count * payload_len;
    if key.len() < needed {
        return Err(LdpcError::Starvation {
            needed,
            available: key.len(),
        });
    }
    let mut frames = Vec::with_capacity(count);
    for f in 0..count {
        let positions: Vec<u32> = stream
            .distinct_positions(n, n_s)
            .into_iter()
            .map(|p| p as u32)
            .collect();
        let values = stream.bits(n_s);
        let plan = ShorteningPlan::new(n, positions, values);
        let payload = key.slice(f * payload_len, (f + 1) * payload_len);
        frames.push(Frame::new(payload, plan));
    }
    Ok(frames)
}

#[cfg(test)]
mod tests;
