//! Gauge-invariant quasi-free evaluation by determinants.

use densemat::DenseComplexMatrix;
use num_complex::Complex64;
use toeplitz_cov::ToeplitzCovariance;

use crate::{CarMonomial, CarPolynomial};

/// A two-point function `cov(m, n) = state(a+_m a_n)`; Hermitian with
/// truncations between 0 and the identity.
pub trait Covariance {
    fn cov(&self, m: i64, n: i64) -> Complex64;
}

impl<T: Covariance + ?Sized> Covariance for &T {
    fn cov(&self, m: i64, n: i64) -> Complex64 {
        (**self).cov(m, n)
    }
}

impl Covariance for ToeplitzCovariance {
    fn cov(&self, m: i64, n: i64) -> Complex64 {
        ToeplitzCovariance::cov(self, m, n)
    }
}

/// The Fock vacuum: every two-point value vanishes.
#[derive(Debug, Clone, Copy)]
pub struct VacuumCovariance;

impl Covariance for VacuumCovariance {
    fn cov(&self, _m: i64, _n: i64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

/// The fully occupied extreme `Q = I`.
#[derive(Debug, Clone, Copy)]
pub struct FullCovariance;

impl Covariance for FullCovariance {
    fn cov(&self, m: i64, n: i64) -> Complex64 {
        if m == n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// Evaluate the state on a polynomial: each Wick-ordered monomial
/// `a+_{i_1}...a+_{i_m} a_{j_n}...a_{j_1}` contributes
/// `delta_{m,n} det[cov(i_k, j_l)]` (both index families ascending), the
/// unit contributes 1, and everything is linear in the coefficients.
pub fn eval_quasifree(p: &CarPolynomial, q: &impl Covariance) -> Complex64 {
    p.terms().map(|(m, c)| c * eval_monomial(m, q)).sum()
}

fn eval_monomial(m: &CarMonomial, q: &impl Covariance) -> Complex64 {
    if m.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let (creators, annihilators) = m.split_canonical();
    if creators.len() != annihilators.len() {
        return Complex64::new(0.0, 0.0);
    }
    let k = creators.len();
    // Stored annihilators descend; the determinant wants them ascending.
    let cols: Vec<i64> = annihilators.into_iter().rev().collect();
    DenseComplexMatrix::from_fn(k, k, |r, c| q.cov(creators[r], cols[c])).det()
}
