use car_wick::{CarMonomial, CarOp};
use densemat::DenseComplexMatrix;
use num_complex::Complex64;

use crate::JwError;

pub const WINDOW_CAP: usize = 10;

/// A finite ordered set of modes carried on `2^N` dimensions.  Basis state
/// `|b>` occupies mode `sites[p]` exactly when bit `p` of `b` is set.
#[derive(Debug, Clone)]
pub struct JwWindow {
    sites: Vec<i64>,
}

impl JwWindow {
    pub fn new(mut sites: Vec<i64>) -> Result<Self, JwError> {
        sites.sort_unstable();
        let len_before = sites.len();
        sites.dedup();
        if sites.len() != len_before {
            return Err(JwError::DuplicateSites);
        }
        if sites.len() > WINDOW_CAP {
            return Err(JwError::WindowCap { size: sites.len(), cap: WINDOW_CAP });
        }
        Ok(Self { sites })
    }

    /// Consecutive modes `lo..=hi`.
    pub fn range(lo: i64, hi: i64) -> Result<Self, JwError> {
        Self::new((lo..=hi).collect())
    }

    pub fn sites(&self) -> &[i64] {
        &self.sites
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.sites.len()
    }

    fn position(&self, site: i64) -> Result<usize, JwError> {
        self.sites
            .binary_search(&site)
            .map_err(|_| JwError::SiteOutsideWindow { site })
    }

    /// The ladder operator at one site as a dense matrix: the annihilator
    /// clears bit `p` with the parity sign of the lower-positioned occupied
    /// modes, `<b'|a_p|b> = [b_p=1][b'=b-2^p](-1)^{popcount(b & (2^p-1))}`.
    pub fn jw_op(&self, op: CarOp) -> Result<DenseComplexMatrix, JwError> {
        let p = self.position(op.site)?;
        let dim = self.dim();
        let mut m = DenseComplexMatrix::zeros(dim, dim);
        let bit = 1usize << p;
        let mask = bit - 1;
        for b in 0..dim {
            if b & bit == 0 {
                continue;
            }
            let sign = if (b & mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(b ^ bit, b)] = Complex64::new(sign, 0.0);
        }
        if op.dagger {
            m = m.adjoint();
        }
        Ok(m)
    }

    /// A word of ladder operators, multiplied left to right.
    pub fn jw_monomial(&self, m: &CarMonomial) -> Result<DenseComplexMatrix, JwError> {
        let mut acc = DenseComplexMatrix::identity(self.dim());
        for &op in m.factors() {
            acc = acc.mul(&self.jw_op(op)?);
        }
        Ok(acc)
    }
}
