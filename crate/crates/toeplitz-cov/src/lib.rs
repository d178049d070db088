//! The Toeplitz covariance operator behind the stationary quasi-free state.
//!
//! The operator is defined by its diagonals: `d(0) = 1` and
//! `d(k) = -3i/(pi^2 k^2)` for `k > 0`, reflected Hermitianly below the
//! diagonal.  Its symbol is the real function
//! `s(theta) = 1 + (6/pi^2) * sum_{k>=1} sin(k theta)/k^2`, whose extrema
//! give the operator norm and a strict positivity margin.  Rescaling by
//! `C = 1/norm` produces a covariance with `0 <= Q <= 1`, the admissibility
//! window for quasi-free states.
//!
//! The norm is certified, not just sampled: the symbol's derivative is
//! `-(6/pi^2) ln(2 sin(theta/2))`, monotone on each half-circle, so a grid
//! scan with per-cell Lipschitz constants brackets both extrema to below
//! `1e-6`.  The sine series itself is evaluated through the closed form of
//! its sum (see [`clausen`]), accurate to machine precision; truncated
//! partial sums are kept only as an independent cross-check.

mod clausen;
mod covariance;
mod symbol;

pub use clausen::{cl2, cl2_partial_sum};
pub use covariance::{min_eigenvalue, ToeplitzCovariance, TRUNCATION_CAP};
pub use symbol::{certificate, certify_norm, symbol, symbol_partial_sum, NormCertificate};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ToeplitzError {
    #[error("truncation size {size} exceeds the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("symbol minimum {0} is not strictly positive; covariance would lose positivity")]
    NotPositive(f64),
    #[error("eigensolver: {0}")]
    Eigen(#[from] densemat::MatError),
}
