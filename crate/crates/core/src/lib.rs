//! Post-processing pipeline for quantum key distribution: turns two noisy
//! sifted keys into a shared secret key over an authenticated classical
//! channel.
//!
//! The pipeline stages, each its own module:
//!
//! - [`bits`] / [`sparse`] / [`toeplitz`] / [`stream`] / [`entropy`] —
//!   bit-exact GF(2) kernels shared by every stage
//! - [`ldpc`] — rate-adaptive LDPC syndrome coding with shortening and
//!   sum-product decoding
//! - [`verify`] — polynomial hash verification of corrected blocks
//! - [`estimate`] — QBER estimation from pre/post-correction blocks
//! - [`pa`] — finite-key feasibility check and Toeplitz key extraction
//! - [`auth`] — Toeplitz/one-time-pad message authentication with a key
//!   consumption ledger
//! - [`wire`] / [`session`] — framed wire format and the Alice/Bob state
//!   machines
//! - [`sim`] / [`run`] — binary-symmetric-channel key source, transports,
//!   tamper hooks, and the end-to-end session driver

pub mod auth;
pub mod bits;
pub mod entropy;
pub mod estimate;
pub mod ldpc;
pub mod pa;
pub mod run;
pub mod session;
pub mod sim;
pub mod sparse;
pub mod stream;
pub mod toeplitz;
pub mod verify;
pub mod wire;

pub use bits::BitString;
pub use sparse::SparseBinaryMatrix;
pub use stream::SyncStream;
pub use toeplitz::ToeplitzSpec;
