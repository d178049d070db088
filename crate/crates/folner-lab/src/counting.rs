use jz_core::JElement;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact binomial coefficient `C(a, b)`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * BigUint::from(a - b + 1 + i) / BigUint::from(i + 1);
    }
    acc
}

/// `|F_n| = (2n+1) * C(n^2 + 2n + 1, n^2)`: the shift has `2n+1` choices and
/// the exponent vector ranges over `2n+1` nonnegative slots with total at
/// most `n^2` (stars and bars).  `|G_n|` is the same number.
pub fn card_fn(n: u32) -> BigUint {
    let n = n as u64;
    BigUint::from(2 * n + 1) * binomial(n * n + 2 * n + 1, n * n)
}

/// Closed-form lower bound for `|F_n ∩ F_n f| / |F_n|`.
///
/// Writing `N = max(|shift(f)|, max |support index of f|)` and `u` for the
/// exponent mass of `f`, at least `(2n - 2N + 1) * sum_{k=0}^{n^2-u} C(2n+k, k)`
/// elements of `F_n` stay in `F_n` after right translation by `f`; the bound
/// clamps to zero when `2N > 2n` or `u > n^2`.
pub fn right_ratio_lower_bound(n: u32, f: &JElement) -> BigRational {
    let nn = n as i64;
    let cap = (nn * nn) as u64;
    let big_n = f.shift().abs().max(f.max_abs_support());
    let u = f.theta_mass();
    let window = 2 * nn - 2 * big_n + 1;
    if window <= 0 || u > cap {
        return BigRational::zero();
    }
    let mut tuples = BigUint::zero();
    for k in 0..=(cap - u) {
        tuples += binomial(2 * n as u64 + k, k);
    }
    let numerator = BigUint::from(window as u64) * tuples;
    ratio_of(numerator, card_fn(n))
}

pub(crate) fn ratio_of(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(16, 9), BigUint::from(11440u32));
        assert_eq!(binomial(3, 7), BigUint::zero());
        for a in 1..=20u64 {
            for b in 1..a {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
            }
        }
    }

    #[test]
    fn cardinalities_first_values() {
        assert_eq!(card_fn(1), BigUint::from(12u32));
        assert_eq!(card_fn(2), BigUint::from(630u32));
        assert_eq!(card_fn(3), BigUint::from(80080u32));
        assert_eq!(card_fn(4), BigUint::from(18386775u32));
    }

    #[test]
    fn identity_bound_is_one() {
        // With f = e the counted tuples exhaust F_n (hockey-stick identity).
        for n in 1..=5 {
            let bound = right_ratio_lower_bound(n, &JElement::identity());
            assert!(bound.is_integer() && bound.to_f64().unwrap() == 1.0, "n={n}");
        }
    }

    #[test]
    fn bound_frozen_values() {
        use num_bigint::BigInt;
        // f = th[0]: N = 0, u = 1.
        let th0 = JElement::theta(0);
        assert_eq!(
            right_ratio_lower_bound(1, &th0),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
        assert_eq!(
            right_ratio_lower_bound(2, &th0),
            BigRational::new(BigInt::from(4), BigInt::from(9))
        );
        // Hockey stick collapses the n = 20 bound to 400/441.
        assert_eq!(
            right_ratio_lower_bound(20, &th0),
            BigRational::new(BigInt::from(400), BigInt::from(441))
        );
        // f = th[2] at n = 1: the shift window is empty, bound clamps to 0.
        assert!(right_ratio_lower_bound(1, &JElement::theta(2)).is_zero());
    }

    #[test]
    fn bound_monotone_and_convergent_for_generator() {
        // For f = th[0] the hockey-stick identity collapses the bound to
        // (n/(n+1))^2 exactly; that closed form is the oracle here.
        let th0 = JElement::theta(0);
        let mut prev = BigRational::zero();
        for n in 1..=40i64 {
            let b = right_ratio_lower_bound(n as u32, &th0);
            assert_eq!(b, BigRational::new(BigInt::from(n * n), BigInt::from((n + 1) * (n + 1))));
            assert!(b >= prev, "n={n}");
            prev = b;
        }
        assert!(prev.to_f64().unwrap() > 0.95);
        assert!(right_ratio_lower_bound(20, &th0).to_f64().unwrap() >= 0.9);
    }
}
