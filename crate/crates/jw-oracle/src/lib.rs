//! Finite-dimensional oracle for the symbolic CAR layer.
//!
//! A window of up to ten modes is represented on `2^N` dimensions through
//! the Jordan-Wigner parity strings, every covariance truncation becomes an
//! explicit quasi-free density matrix, and expectations are plain traces.
//! Nothing here shares code with the determinant evaluation path, so
//! agreement between the two is a genuine end-to-end check of the Wick
//! rewriting, the determinant signs, and the covariance orientation.

mod check;
mod density;
mod window;

pub use check::{equivalence_check, relation_residual, sum_position_norm, CheckReport};
pub use density::{oracle_expectation, quasifree_density};
pub use window::{JwWindow, WINDOW_CAP};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum JwError {
    #[error("window of {size} sites exceeds the cap of {cap}")]
    WindowCap { size: usize, cap: usize },
    #[error("site {site} is not in the window")]
    SiteOutsideWindow { site: i64 },
    #[error("covariance eigenvalue {0} outside [0, 1]; not a state")]
    EigenvalueRange(f64),
    #[error("window sites must be distinct")]
    DuplicateSites,
    #[error(transparent)]
    Mat(#[from] densemat::MatError),
}
