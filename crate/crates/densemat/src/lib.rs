//! Dense complex matrices just big enough for this workspace: row-major
//! storage, parallel products, LU determinants, a cyclic Jacobi eigensolver
//! for Hermitian matrices, and a power-iteration operator norm.
//!
//! Dimensions stay modest (a few hundred for covariance windows, up to
//! 2^10 for occupation-representation matrices), so everything is plain
//! O(n^3) with no blocking.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseComplexMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Complex64>,
}

impl DenseComplexMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseComplexMatrix { n_rows, n_cols, data: vec![Complex64::ZERO; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)].conj())
    }

    /// Largest absolute deviation from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.n_rows {
            for j in i..self.n_cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += w;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        out
    }

    /// Matrix product, parallelized over rows.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows, "inner dimensions must agree");
        let n = self.n_rows;
        let k = self.n_cols;
        let m = other.n_cols;
        let mut out = Self::zeros(n, m);
        out.data
            .par_chunks_mut(m)
            .enumerate()
            .for_each(|(i, row_out)| {
                for l in 0..k {
                    let a = self.data[i * k + l];
                    if a == Complex64::ZERO {
                        continue;
                    }
                    let brow = &other.data[l * m..(l + 1) * m];
                    for (o, b) in row_out.iter_mut().zip(brow) {
                        *o += a * b;
                    }
                }
            });
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.n_rows).map(|i| self[(i, i)]).sum()
    }

    /// trace(self · other) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n_cols, other.n_rows);
        assert_eq!(self.n_rows, other.n_cols);
        let mut acc = Complex64::ZERO;
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let n = self.n_rows;
        if n == 0 {
            return Complex64::ONE;
        }
        let mut a = self.data.clone();
        let mut det = Complex64::ONE;
        for col in 0..n {
            let (pivot_row, pivot_norm) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_norm == 0.0 {
                return Complex64::ZERO;
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det *= pivot;
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                if factor == Complex64::ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for DenseComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: `a = V diag(values) V†`,
/// eigenvalues ascending, columns of `vectors` the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DenseComplexMatrix,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Rotations annihilate one off-diagonal entry at a time; each sweep visits
/// every upper-triangle position.  Converges quadratically once the
/// off-diagonal mass is small; we stop when it drops below `1e-13` relative
/// to the Frobenius norm.
pub fn hermitian_eigen(m: &DenseComplexMatrix) -> Result<HermitianEigen, MatError> {
    if !m.is_square() {
        return Err(MatError::Dimension(format!("{}x{}", m.n_rows, m.n_cols)));
    }
    let dev = m.hermitian_deviation();
    let scale = m.frobenius_norm().max(1e-300);
    if dev > 1e-10 * scale {
        return Err(MatError::NotHermitian(dev));
    }
    let n = m.n_rows;
    let mut a = m.clone();
    // Force exact Hermitian symmetry so rounding in the input cannot drift.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = DenseComplexMatrix::identity(n);
    let tol = 1e-13 * scale;
    let max_sweeps = 60;
    for sweep in 0..=max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            return Ok(sort_eigen(a, v));
        }
        if sweep == max_sweeps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs <= 1e-300 {
                    continue;
                }
                // Unitary 2x2 rotation diag(1, phase)·Givens(theta) with
                // phase = apq/|apq| zeroing the (p,q) entry.
                let phase = apq / abs;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update: [col_p, col_q] <- [c·col_p - s·conj(phase)·col_q,
                //                                   s·phase·col_p + c·col_q]
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = arp * c - arq * s * phase.conj();
                    a[(r, q)] = arp * s * phase + arq * c;
                }
                // Row update with the conjugate transpose.
                for col in 0..n {
                    let apc = a[(p, col)];
                    let aqc = a[(q, col)];
                    a[(p, col)] = apc * c - aqc * s * phase;
                    a[(q, col)] = apc * s * phase.conj() + aqc * c;
                }
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp * c - vrq * s * phase.conj();
                    v[(r, q)] = vrp * s * phase + vrq * c;
                }
            }
        }
    }
    Err(MatError::NoConvergence(max_sweeps))
}

fn sort_eigen(a: DenseComplexMatrix, v: DenseComplexMatrix) -> HermitianEigen {
    let n = a.n_rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DenseComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Operator norm of a Hermitian matrix by power iteration on `M²`.
///
/// Returns the converged Rayleigh estimate; the relative residual is driven
/// below `tol` (or the iteration cap is hit, which for our well-conditioned
/// inputs does not happen).
pub fn hermitian_opnorm(m: &DenseComplexMatrix, tol: f64, max_iter: usize) -> f64 {
    assert!(m.is_square());
    let n = m.n_rows();
    if n == 0 {
        return 0.0;
    }
    // Deterministic pseudo-random start vector.
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = ((i as f64) * 0.7368062997 + 0.1).sin();
            let y = ((i as f64) * 1.2589274311 + 0.2).cos();
            Complex64::new(1.0 + 0.25 * x, 0.25 * y)
        })
        .collect();
    normalize(&mut v);
    let mut lambda = 0.0f64;
    for _ in 0..max_iter {
        let w = m.matvec(&m.matvec(&v)); // M² v
        let new_lambda: f64 = w.iter().zip(&v).map(|(a, b)| (a * b.conj()).re).sum();
        let mut residual = 0.0f64;
        for (wi, vi) in w.iter().zip(&v) {
            residual += (wi - vi * new_lambda).norm_sqr();
        }
        let residual = residual.sqrt();
        v = w;
        normalize(&mut v);
        let scale = new_lambda.abs().max(1e-300);
        if residual <= tol * scale && (new_lambda - lambda).abs() <= tol * scale {
            return new_lambda.max(0.0).sqrt();
        }
        lambda = new_lambda;
    }
    lambda.max(0.0).sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}
