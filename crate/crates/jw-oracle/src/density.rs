//! Quasi-free density matrices from covariance truncations.

use car_wick::{CarMonomial, CarOp, Covariance};
use densemat::{hermitian_eigen, DenseComplexMatrix};
use num_complex::Complex64;

use crate::{JwError, JwWindow};

/// Build the density matrix whose two-point function reproduces the
/// compressed covariance: diagonalize the transposed truncation
/// `Q^T = W diag(lambda) W*`, rotate the creators into `b+_k = sum_j
/// W[j][k] a+_j`, and take the product of the commuting single-mode
/// factors `lambda_k n_k + (1 - lambda_k)(I - n_k)`.
///
/// The transpose is forced by the index order of the two-point function:
/// `tr(rho a+_m a_n) = sum_k conj(W[m][k]) lambda_k W[n][k]`, which equals
/// `cov(m, n)` exactly when `W` diagonalizes the transpose.
pub fn quasifree_density(
    w: &JwWindow,
    q: &impl Covariance,
) -> Result<DenseComplexMatrix, JwError> {
    let n = w.n_sites();
    let truncation_t = DenseComplexMatrix::from_fn(n, n, |i, j| {
        q.cov(w.sites()[j], w.sites()[i])
    });
    let eigen = hermitian_eigen(&truncation_t)?;
    let mut rho = DenseComplexMatrix::identity(w.dim());
    for k in 0..n {
        let lambda = eigen.values[k];
        if !(-1e-10..=1.0 + 1e-10).contains(&lambda) {
            return Err(JwError::EigenvalueRange(lambda));
        }
        let lambda = lambda.clamp(0.0, 1.0);
        // b+_k as a matrix on the window.
        let mut creator = DenseComplexMatrix::zeros(w.dim(), w.dim());
        for (j, &site) in w.sites().iter().enumerate() {
            let a_dag = w.jw_op(CarOp::create(site))?;
            creator = creator.add(&a_dag.scale(eigen.vectors[(j, k)]));
        }
        let number = creator.mul(&creator.adjoint());
        let complement = DenseComplexMatrix::identity(w.dim()).sub(&number);
        let factor = number
            .scale(Complex64::new(lambda, 0.0))
            .add(&complement.scale(Complex64::new(1.0 - lambda, 0.0)));
        rho = rho.mul(&factor);
    }
    Ok(rho)
}

/// `tr(rho * jw(m))` for the density attached to the covariance.
pub fn oracle_expectation(
    w: &JwWindow,
    q: &impl Covariance,
    m: &CarMonomial,
) -> Result<Complex64, JwError> {
    let rho = quasifree_density(w, q)?;
    Ok(rho.trace_of_product(&w.jw_monomial(m)?))
}
