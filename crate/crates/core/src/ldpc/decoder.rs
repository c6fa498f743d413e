//! Iterative sum-product syndrome decoding.
//!
//! Flooding schedule with the exact tanh/atanh check-node rule. The decoder
//! targets the far side's syndrome: it searches for the word nearest the
//! local frame whose syndrome matches, so all corrections happen locally.
//! Shortened positions carry effectively infinite log-likelihood ratios and
//! are never flipped. The whole function is a pure, deterministic map of its
//! inputs: fixed schedule, fixed tie-break (LLR 0 decides bit 0).

use super::{Frame, LdpcError};
use crate::bits::BitString;
use crate::sparse::SparseBinaryMatrix;

/// Outcome status of one decode attempt. Non-convergence is a status, not
/// an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Converged,
    Failed,
}

/// Result of decoding one frame against a target syndrome.
#[derive(Clone, Debug)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Hard-decision word at exit; satisfies the syndrome iff converged.
    pub corrected: BitString,
    pub iterations_used: usize,
    /// Payload positions that changed relative to the received frame.
    pub flips: usize,
}

/// Stand-in for an infinite log-likelihood ratio. Check messages are capped
/// near 38 by the atanh clamp, and variable degrees stay in single digits,
/// so extrinsic sums can never overturn this.
const SHORTENED_LLR: f64 = 1e6;

/// Keeps atanh finite when every other tanh factor is exactly +/-1.
const TANH_CLAMP: f64 = 1.0 - 1e-15;

pub fn decode(
    h: &SparseBinaryMatrix,
    frame: &Frame,
    syndrome: &BitString,
    qber: f64,
    max_iter: usize,
) -> Result<DecodeResult, LdpcError> {
    let n = h.cols();
    let m = h.rows();
    if frame.assembled().len() != n {
        return Err(LdpcError::FrameLength {
            got: frame.assembled().len(),
            want: n,
        });
    }
    if syndrome.len() != m {
        return Err(LdpcError::SyndromeLength {
            got: syndrome.len(),
            want: m,
        });
    }
    if !(qber > 0.0 && qber < 0.5) {
        return Err(LdpcError::QberOutOfRange(qber));
    }

    // Edge layout: contiguous per check row; per-variable edge lists on top.
    let num_edges = h.num_entries();
    let mut edge_var = Vec::with_capacity(num_edges);
    let mut check_start = Vec::with_capacity(m + 1);
    check_start.push(0usize);
    for r in 0..m {
        for &c in h.row(r) {
            edge_var.push(c as usize);
        }
        check_start.push(edge_var.len());
    }
    let mut var_edges: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (e, &v) in edge_var.iter().enumerate() {
        var_edges[v].push(e as u32);
    }

    let mag = ((1.0 - qber) / qber).ln();
    let received = frame.assembled();
    let mut intrinsic = vec![0.0f64; n];
    for i in 0..n {
        let sign = if received.get(i) { -1.0 } else { 1.0 };
        intrinsic[i] = sign
            * if frame.plan().is_shortened(i) {
                SHORTENED_LLR
            } else {
                mag
            };
    }

    let syndrome_ok = |word: &BitString| -> bool {
        (0..m).all(|r| {
            let parity = h.row(r).iter().fold(false, |acc, &c| acc ^ word.get(c as usize));
            parity == syndrome.get(r)
        })
    };

    // The received word may already satisfy the syndrome.
    if syndrome_ok(received) {
        return Ok(DecodeResult {
            status: DecodeStatus::Converged,
            corrected: received.clone(),
            iterations_used: 0,
            flips: 0,
        });
    }

    let mut var_to_chk = vec![0.0f64; num_edges];
    for (e, &v) in edge_var.iter().enumerate() {
        var_to_chk[e] = intrinsic[v];
    }
    let mut chk_to_var = vec![0.0f64; num_edges];
    let max_row = (0..m).map(|r| h.row(r).len()).max().unwrap_or(0);
    let mut fwd = vec![0.0f64; max_row + 1];
    let mut bwd = vec![0.0f64; max_row + 1];

    let mut hard = received.clone();
    for iter in 1..=max_iter {
        // Check-node pass: exclusive tanh products via forward/backward
        // partials, sign-flipped where the target syndrome bit is 1.
        for r in 0..m {
            let lo = check_start[r];
            let hi = check_start[r + 1];
            let deg = hi - lo;
            let s_sign = if syndrome.get(r) { -1.0 } else { 1.0 };
            fwd[0] = 1.0;
            for k in 0..deg {
                fwd[k + 1] = fwd[k] * (var_to_chk[lo + k] / 2.0).tanh();
            }
            bwd[deg] = 1.0;
            for k in (0..deg).rev() {
                bwd[k] = bwd[k + 1] * (var_to_chk[lo + k] / 2.0).tanh();
            }
            for k in 0..deg {
                let prod = (fwd[k] * bwd[k + 1]).clamp(-TANH_CLAMP, TANH_CLAMP);
                chk_to_var[lo + k] = s_sign * 2.0 * prod.atanh();
            }
        }

        // Variable-node pass and hard decision.
        for v in 0..n {
            let total: f64 = intrinsic[v] + var_edges[v].iter().map(|&e| chk_to_var[e as usize]).sum::<f64>();
            for &e in &var_edges[v] {
                var_to_chk[e as usize] = total - chk_to_var[e as usize];
            }
            hard.set(v, total < 0.0);
        }

        if syndrome_ok(&hard) {
            let flips = frame
                .extract_payload(&hard)
                .hamming(frame.payload())
                .expect("payload lengths agree");
            debug_assert!(frame.plan().positions().iter().all(|&p| {
                hard.get(p as usize) == frame.plan().value_at(p as usize)
            }));
            return Ok(DecodeResult {
                status: DecodeStatus::Converged,
                corrected: hard,
                iterations_used: iter,
                flips,
            });
        }
    }

    let flips = frame
        .extract_payload(&hard)
        .hamming(frame.payload())
        .expect("payload lengths agree");
    Ok(DecodeResult {
        status: DecodeStatus::Failed,
        corrected: hard,
        iterations_used: max_iter,
        flips,
    })
}
