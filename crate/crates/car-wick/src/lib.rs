//! Symbolic CAR algebra over integer-labeled modes.
//!
//! Monomials are words in creators `a+[j]` and annihilators `a[j]`;
//! polynomials store complex coefficients on Wick-ordered monomials
//! (daggered factors first with strictly increasing sites, then undaggered
//! with strictly decreasing sites — the index pattern of the determinant
//! formula, so evaluation reads the matrix off without extra signs).
//!
//! The anticommutation relations `{a+[j], a[k]} = delta I`,
//! `{a[j], a[k]} = {a+[j], a+[k]} = 0` drive a terminating, confluent
//! rewriting into that canonical form.  Gauge-invariant quasi-free states
//! evaluate canonical monomials by `delta_{m,n} det[cov(i_k, j_l)]`.
//!
//! Index relabelings act as homomorphisms: any injective map of the
//! integers (in particular every element of the increasing-map monoid)
//! and any transposition of two sites.

mod eval;
mod monomial;
mod normal;
mod polynomial;

pub use eval::{eval_quasifree, Covariance, FullCovariance, VacuumCovariance};
pub use monomial::{CarMonomial, CarOp};
pub use normal::{normal_order, normal_order_rightmost, DEGREE_CAP};
pub use polynomial::{position, CarPolynomial};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CarError {
    #[error("monomial degree {degree} exceeds the normal-ordering cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
