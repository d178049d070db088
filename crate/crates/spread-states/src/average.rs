//! Window-averaged expectations, assembled from the exact gap laws.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use car_wick::{eval_quasifree, CarMonomial, CarPolynomial};
use jz_core::JElement;
use num_complex::Complex64;
use num_rational::BigRational;
use toeplitz_cov::ToeplitzCovariance;

use crate::law::{image_law, ImageLawQuery};
use crate::profile::gap_profile;
use crate::SpreadError;

/// An averaged expectation split into its exact rational part and the
/// single irrational unit carrying the scale `C` and the phase.
#[derive(Debug, Clone)]
pub struct AveragedValue {
    pub n: u32,
    pub rational_profile: BigRational,
    pub unit: &'static str,
    pub numeric: Complex64,
}

fn pair_unit() -> Complex64 {
    let scale = ToeplitzCovariance::certified().scale();
    Complex64::new(0.0, -3.0 * scale / (PI * PI))
}

/// The averaged pair value `omega_n(a_1 a+_2)`: the gap law contracted
/// against `v(g) = -3iC/(pi^2 g^2)`, i.e. the inverse-square moment of the
/// gap profile times the unit `-3iC/pi^2`.
pub fn averaged_pair_value(n: u32) -> AveragedValue {
    let profile = gap_profile(n).inverse_square_moment();
    let numeric = folner_lab::report::rational_to_f64(&profile) * pair_unit();
    AveragedValue { n, rational_profile: profile, unit: "-3iC/pi^2", numeric }
}

/// The reversed pair `omega_n(a_2 a+_1)`; same rational profile, opposite
/// unit, so the two are exact negatives at every `n`.
pub fn averaged_pair_backward(n: u32) -> AveragedValue {
    let profile = gap_profile(n).inverse_square_moment();
    let numeric = -folner_lab::report::rational_to_f64(&profile) * pair_unit();
    AveragedValue { n, rational_profile: profile, unit: "+3iC/pi^2", numeric }
}

/// Average `eval_quasifree` over the window at index `n`.  Each monomial is
/// handled through the joint gap law of its support: the stationary value
/// of a relabeled monomial depends only on the image gaps, so one exact
/// rational weight per gap tuple suffices.
pub fn averaged_eval(p: &CarPolynomial, n: u32) -> Result<Complex64, SpreadError> {
    let q = ToeplitzCovariance::certified();
    let mut acc = Complex64::ZERO;
    for (m, c) in p.terms() {
        acc += c * averaged_monomial(m, n, &q)?;
    }
    Ok(acc)
}

fn averaged_monomial(
    m: &CarMonomial,
    n: u32,
    q: &ToeplitzCovariance,
) -> Result<Complex64, SpreadError> {
    let support = m.support();
    if support.is_empty() {
        return Ok(Complex64::ONE);
    }
    let law = image_law(&ImageLawQuery { sites: support.clone(), n })?;
    let single = CarPolynomial::from_monomial(m)?;
    let mut acc = Complex64::ZERO;
    for (gaps, prob) in &law {
        let relabeled = single.act_index(&relabeling(&support, gaps)?);
        acc += folner_lab::report::rational_to_f64(prob) * eval_quasifree(&relabeled, q);
    }
    Ok(acc)
}

/// The increasing map fixing the first support site and realizing the
/// prescribed image gaps: put the excess of each gap over the base
/// distance as a block exponent at the right endpoint.
fn relabeling(support: &[i64], gaps: &[u64]) -> Result<JElement, SpreadError> {
    let mut exponents = BTreeMap::new();
    for (i, &gap) in gaps.iter().enumerate() {
        let excess = gap - (support[i + 1] - support[i]) as u64;
        if excess > 0 {
            exponents.insert(support[i + 1], excess);
        }
    }
    Ok(JElement::from_parts(exponents, 0)?)
}

/// `|omega_n(p) - omega_n(alpha_k(p))|`: how far the averaged state is from
/// absorbing the index map `k`.
pub fn spreadability_residual(
    p: &CarPolynomial,
    n: u32,
    k: &JElement,
) -> Result<f64, SpreadError> {
    let lhs = averaged_eval(p, n)?;
    let rhs = averaged_eval(&p.act_index(k), n)?;
    Ok((lhs - rhs).norm())
}
