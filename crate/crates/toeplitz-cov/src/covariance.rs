//! The scaled covariance matrix, its truncations, and their spectra.

use densemat::{hermitian_eigen, DenseComplexMatrix};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::symbol::certificate;
use crate::ToeplitzError;

pub const TRUNCATION_CAP: usize = 256;

/// The two-point function `cov(m, n) = scale * d(n - m)` with diagonals
/// `d(0) = 1`, `d(k) = -3i/(pi^2 k^2)` for `k > 0`, `d(-k) = conj(d(k))`.
///
/// The orientation is fixed by the normative value at neighboring modes:
/// `cov(2, 1) = +3i*scale/pi^2`.  Entries depend only on `m - n`, which is
/// exactly shift-stationarity at the covariance level.
#[derive(Debug, Clone, Copy)]
pub struct ToeplitzCovariance {
    scale: f64,
}

impl ToeplitzCovariance {
    /// The normalized operator: scale = 1/opnorm from the cached norm
    /// certificate, so the covariance satisfies `0 <= Q <= 1`.
    pub fn certified() -> Self {
        Self { scale: certificate().scale }
    }

    /// Unnormalized variant for tests and symbol-level comparisons.
    pub fn with_scale(scale: f64) -> Self {
        assert!(scale > 0.0 && scale.is_finite());
        Self { scale }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Unscaled diagonal value `d(k)`.
    pub fn diag(&self, k: i64) -> Complex64 {
        match k {
            0 => Complex64::new(1.0, 0.0),
            k if k > 0 => Complex64::new(0.0, -3.0 / (PI * PI * (k * k) as f64)),
            k => Complex64::new(0.0, 3.0 / (PI * PI * (k * k) as f64)),
        }
    }

    /// Two-point value at modes `(m, n)`.
    pub fn cov(&self, m: i64, n: i64) -> Complex64 {
        self.scale * self.diag(n - m)
    }

    /// The finite section over the mode window `[m_lo, m_hi]`.
    pub fn truncation(
        &self,
        m_lo: i64,
        m_hi: i64,
    ) -> Result<DenseComplexMatrix, ToeplitzError> {
        assert!(m_hi >= m_lo);
        let size = (m_hi - m_lo + 1) as usize;
        if size > TRUNCATION_CAP {
            return Err(ToeplitzError::SizeCap { size, cap: TRUNCATION_CAP });
        }
        Ok(DenseComplexMatrix::from_fn(size, size, |i, j| {
            self.cov(m_lo + i as i64, m_lo + j as i64)
        }))
    }
}

/// Smallest eigenvalue of a Hermitian matrix (size-capped Jacobi solve).
pub fn min_eigenvalue(m: &DenseComplexMatrix) -> Result<f64, ToeplitzError> {
    if m.n_rows() > TRUNCATION_CAP {
        return Err(ToeplitzError::SizeCap { size: m.n_rows(), cap: TRUNCATION_CAP });
    }
    let eigen = hermitian_eigen(m)?;
    Ok(eigen.values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::certificate;

    #[test]
    fn normative_entries() {
        let q = ToeplitzCovariance::certified();
        let c = q.scale();
        assert_eq!(q.cov(1, 1), Complex64::new(c, 0.0));
        let expected = Complex64::new(0.0, 3.0 * c / (PI * PI));
        assert!((q.cov(2, 1) - expected).norm() < 1e-15);
        let expected13 = Complex64::new(0.0, -3.0 * c / (4.0 * PI * PI));
        assert!((q.cov(1, 3) - expected13).norm() < 1e-15);
        assert_eq!(q.cov(1, 3), q.cov(3, 1).conj());
    }

    #[test]
    fn hermitian_and_toeplitz_on_a_wide_window() {
        let q = ToeplitzCovariance::certified();
        for m in -100..=100i64 {
            for n in -100..=100i64 {
                assert_eq!(q.cov(m, n), q.cov(n, m).conj());
                assert_eq!(q.cov(m + 1, n + 1), q.cov(m, n));
            }
        }
    }

    #[test]
    fn off_diagonal_mass_sums_to_one() {
        let q = ToeplitzCovariance::with_scale(1.0);
        let mut acc = 0.0;
        for k in (1..=1_000_000i64).rev() {
            acc += 2.0 * q.diag(k).norm();
        }
        assert!(acc < 1.0);
        assert!((acc - 1.0).abs() < 1e-6);
        // Tail bound 6/(pi^2 K): the partial sum is short of 1 by roughly it.
        assert!((1.0 - acc) < 6.2e-7);
    }

    #[test]
    fn truncation_entries_and_caps() {
        let q = ToeplitzCovariance::certified();
        let one = q.truncation(1, 1).unwrap();
        assert_eq!(one[(0, 0)], Complex64::new(q.scale(), 0.0));
        let two = q.truncation(1, 2).unwrap();
        assert!((two[(0, 1)].norm() - 3.0 * q.scale() / (PI * PI)).abs() < 1e-15);
        assert!(matches!(
            q.truncation(0, TRUNCATION_CAP as i64),
            Err(ToeplitzError::SizeCap { .. })
        ));
        // Entries are window-independent once both indices are inside.
        let a = q.truncation(-3, 3).unwrap();
        let b = q.truncation(-5, 5).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(a[(i, j)], b[(i + 2, j + 2)]);
            }
        }
    }

    #[test]
    fn identity_min_eigenvalue_is_one() {
        let id = DenseComplexMatrix::identity(8);
        assert!((min_eigenvalue(&id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncations_are_positive_with_spectral_margin() {
        let q = ToeplitzCovariance::certified();
        let cert = certificate();
        let floor = q.scale() * cert.min_symbol_lower;
        for size in 1..=64i64 {
            let t = q.truncation(1, size).unwrap();
            let lambda = min_eigenvalue(&t).unwrap();
            assert!(lambda >= -1e-10, "size {size}: {lambda}");
            // Spectral inclusion: the section's spectrum sits inside the
            // scaled symbol range, a sharper floor than Gershgorin's 0.
            assert!(lambda >= floor - 1e-8, "size {size}: {lambda} < {floor}");
            assert!(lambda <= q.scale() + 1e-10);
        }
    }
}
