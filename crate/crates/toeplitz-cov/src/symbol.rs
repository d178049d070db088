//! The symbol of the covariance operator and its certified extrema.

use once_cell::sync::Lazy;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::clausen::{cl2, cl2_partial_sum};
use crate::ToeplitzError;

/// `s(theta) = 1 + (6/pi^2) sum_{k>=1} sin(k theta)/k^2`, real-valued.
pub fn symbol(theta: f64) -> f64 {
    1.0 + (6.0 / (PI * PI)) * cl2(theta)
}

/// Same quantity through a direct partial sum; tail error below
/// `(6/pi^2)/k_max`.  Used as the independent cross-check of [`symbol`].
pub fn symbol_partial_sum(theta: f64, k_max: u64) -> f64 {
    1.0 + (6.0 / (PI * PI)) * cl2_partial_sum(theta, k_max)
}

/// A finite certificate for the extrema of the symbol over the circle.
#[derive(Debug, Clone)]
pub struct NormCertificate {
    /// Largest sampled symbol value (a lower bound for the true norm).
    pub opnorm: f64,
    /// Rigorous upper bound for the true norm.
    pub opnorm_upper: f64,
    /// Smallest sampled symbol value (an upper bound for the true minimum).
    pub min_symbol: f64,
    /// Rigorous lower bound for the true minimum.
    pub min_symbol_lower: f64,
    /// `1 / opnorm`, the rescaling constant that normalizes the operator.
    pub scale: f64,
    /// Half-width of the enclosure: `max` and `min` are each trapped in an
    /// interval of this radius.
    pub cert_radius: f64,
    /// Number of grid cells scanned on `[edge, 2pi - edge]`.
    pub grid_cells: usize,
    /// Width of the excluded neighborhoods of 0 and 2pi, where the symbol
    /// provably stays within `edge_bound` of 1.
    pub edge: f64,
    pub edge_bound: f64,
}

/// Scan the symbol over a uniform grid and bracket its extrema.
///
/// The derivative is `-(6/pi^2) ln(2 sin(theta/2))`, monotone on each of
/// `(0, pi)` and `(pi, 2pi)`, so on every cell the Lipschitz constant is
/// attained at an endpoint and `max(endpoints) + L*h/2` bounds the cell's
/// supremum.  Near the extrema the derivative vanishes, which is what makes
/// the enclosure tight.  The neighborhoods of 0 and 2pi, where the
/// derivative blows up logarithmically, are excluded and covered instead by
/// the elementary estimate `|s - 1| <= (6/pi^2) cl2(edge)` there.
pub fn certify_norm(grid_cells: usize) -> Result<NormCertificate, ToeplitzError> {
    let edge = 1e-4;
    let lo = edge;
    let hi = 2.0 * PI - edge;
    let h = (hi - lo) / grid_cells as f64;
    let scale_factor = 6.0 / (PI * PI);

    // Value and derivative magnitude at each grid point.
    let points: Vec<(f64, f64)> = (0..=grid_cells)
        .into_par_iter()
        .map(|i| {
            let theta = lo + h * i as f64;
            let deriv = scale_factor * (2.0 * (theta / 2.0).sin()).ln().abs();
            (symbol(theta), deriv)
        })
        .collect();

    let mut max_sample = f64::NEG_INFINITY;
    let mut min_sample = f64::INFINITY;
    let mut max_upper = f64::NEG_INFINITY;
    let mut min_lower = f64::INFINITY;
    for window in points.windows(2) {
        let (s_a, l_a) = window[0];
        let (s_b, l_b) = window[1];
        let slack = l_a.max(l_b) * h / 2.0;
        max_sample = max_sample.max(s_a.max(s_b));
        min_sample = min_sample.min(s_a.min(s_b));
        max_upper = max_upper.max(s_a.max(s_b) + slack);
        min_lower = min_lower.min(s_a.min(s_b) - slack);
    }

    // The excluded edge neighborhoods keep the symbol within edge_bound of
    // 1; the interior extrema are far outside that band, so the edges
    // cannot host either extremum.
    let edge_bound = scale_factor * cl2(edge);
    assert!(max_sample > 1.0 + 2.0 * edge_bound);
    assert!(min_sample < 1.0 - 2.0 * edge_bound);

    if min_lower <= 0.0 {
        return Err(ToeplitzError::NotPositive(min_lower));
    }
    Ok(NormCertificate {
        opnorm: max_sample,
        opnorm_upper: max_upper,
        min_symbol: min_sample,
        min_symbol_lower: min_lower,
        scale: 1.0 / max_sample,
        cert_radius: (max_upper - max_sample).max(min_sample - min_lower),
        grid_cells,
        edge,
        edge_bound,
    })
}

static CERTIFICATE: Lazy<NormCertificate> =
    Lazy::new(|| certify_norm(1 << 21).expect("symbol is strictly positive"));

/// The cached default certificate (2^21 grid cells, enclosure below 1e-9).
pub fn certificate() -> &'static NormCertificate {
    &CERTIFICATE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_special_points() {
        assert_eq!(symbol(0.0), 1.0);
        assert!((symbol(PI) - 1.0).abs() < 1e-13);
        assert!((symbol(PI / 3.0) - 1.617_010_509_335_69).abs() < 1e-11);
        // Antisymmetry around 1: s(2pi - t) + s(t) = 2.
        for &t in &[0.3, 1.0, PI / 3.0, 2.5] {
            assert!((symbol(2.0 * PI - t) + symbol(t) - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn closed_form_agrees_with_partial_sum() {
        for &t in &[0.4, PI / 3.0, 3.0, 5.0] {
            let direct = symbol_partial_sum(t, 1_000_000);
            assert!((symbol(t) - direct).abs() < 6.2e-7, "t={t}");
        }
    }

    #[test]
    fn certificate_brackets_extrema() {
        let cert = certificate();
        assert!(cert.cert_radius < 1e-9, "radius {}", cert.cert_radius);
        assert!(cert.opnorm > 1.6169 && cert.opnorm < 1.6171);
        assert!((cert.opnorm - 1.617_010_509_335_69).abs() < 1e-9);
        // True minimum is 2 - opnorm by antisymmetry.
        assert!((cert.min_symbol + cert.opnorm - 2.0).abs() < 1e-9);
        assert!((cert.min_symbol - 0.382_989_490_664_31).abs() < 1e-9);
        assert!(cert.scale > 0.6184 && cert.scale < 0.6185);
        assert!(cert.opnorm_upper >= cert.opnorm);
        assert!(cert.min_symbol_lower <= cert.min_symbol);
        assert!(cert.min_symbol_lower > 0.0);
    }

    #[test]
    fn coarse_grid_still_encloses_fine_extrema() {
        let coarse = certify_norm(1 << 12).unwrap();
        let fine = certificate();
        assert!(coarse.opnorm_upper >= fine.opnorm);
        assert!(coarse.min_symbol_lower <= fine.min_symbol);
        assert!(coarse.cert_radius < 1e-3);
    }
}
