//! Binary entropy.

use thiserror::Error;

/// Input to [`binary_entropy`] outside `[0, 1]`.
#[derive(Debug, Error, PartialEq)]
#[error("binary entropy is defined on [0, 1], got {0}")]
pub struct EntropyDomainError(pub f64);

/// Binary entropy `h_b(x) = -x log2 x - (1-x) log2 (1-x)`, with the limit
/// value 0 at the endpoints.
pub fn binary_entropy(x: f64) -> Result<f64, EntropyDomainError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(EntropyDomainError(x));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// `binary_entropy` for callers that have already range-checked.
pub(crate) fn binary_entropy_checked(x: f64) -> f64 {
    binary_entropy(x).expect("entropy argument pre-clamped")
}
