use std::collections::HashSet;

use jz_core::JElement;
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::counting::ratio_of;
use crate::{enumerate_fn, enumerate_gn, right_ratio_lower_bound, Budget, FolnerError};

/// Exact translation-overlap data for one window and one translator.
///
/// Right translation by a non-invertible map collapses distinct elements
/// (`th[1] th[0] = th[0] th[0]`), so the image of the window is a multiset.
/// The overlap that measures almost-invariance counts every window member
/// whose translate lands back in the window (`stayers`); the distinct
/// products (`image_size`) and how many of those distinct products lie in
/// the window (`set_intersection`) are kept alongside as diagnostics of
/// the collapse.
#[derive(Debug, Clone)]
pub struct RatioReport {
    pub n: u32,
    pub f: String,
    pub card: BigUint,
    /// Window members whose translate stays in the window (multiset count).
    pub stayers: u64,
    /// Distinct products; smaller than `card` when translation collapses.
    pub image_size: u64,
    /// Distinct products that lie in the window.
    pub set_intersection: u64,
    /// `stayers / card`.
    pub ratio: BigRational,
    pub lower_bound: BigRational,
    /// True exactly when the translation collapsed nothing.
    pub injective: bool,
}

/// Fraction of `F_n` that stays in `F_n` under right translation by `f`,
/// with the exact closed-form lower bound attached.
pub fn right_ratio(n: u32, f: &JElement, budget: Budget) -> Result<RatioReport, FolnerError> {
    let window: HashSet<JElement> = enumerate_fn(n, budget)?.collect();
    overlap(n, f, &window, |e| e.compose(f), right_ratio_lower_bound(n, f))
}

/// Fraction of `G_n` that stays in `G_n` under left translation by `f`.
/// Every element is an injective map, so left translation never collapses
/// and `stayers` always equals `set_intersection` here.
pub fn left_ratio(n: u32, f: &JElement, budget: Budget) -> Result<RatioReport, FolnerError> {
    let window: HashSet<JElement> = enumerate_gn(n, budget)?.collect();
    overlap(n, f, &window, |e| f.compose(e), BigRational::from_integer(0.into()))
}

fn overlap(
    n: u32,
    f: &JElement,
    window: &HashSet<JElement>,
    translate: impl Fn(&JElement) -> JElement,
    lower_bound: BigRational,
) -> Result<RatioReport, FolnerError> {
    let mut stayers = 0u64;
    let mut image: HashSet<JElement> = HashSet::with_capacity(window.len());
    for g in window {
        let product = translate(g);
        if window.contains(&product) {
            stayers += 1;
        }
        image.insert(product);
    }
    let set_intersection = image.iter().filter(|e| window.contains(*e)).count() as u64;
    let card = crate::card_fn(n);
    Ok(RatioReport {
        n,
        f: f.render(),
        injective: BigUint::from(image.len()) == card,
        image_size: image.len() as u64,
        set_intersection,
        ratio: ratio_of(BigUint::from(stayers), card.clone()),
        stayers,
        card,
        lower_bound,
    })
}

/// The translators exercised throughout the tests and reports.
pub fn standard_fixtures() -> Vec<(&'static str, JElement)> {
    vec![
        ("th[0]", JElement::theta(0)),
        ("th[2]", JElement::theta(2)),
        ("th[0]^2", JElement::theta_pow(0, 2)),
        ("t", JElement::tau_power(1)),
        ("T", JElement::tau_power(-1)),
        ("th[0] t", JElement::theta(0).compose(&JElement::tau_power(1))),
    ]
}
