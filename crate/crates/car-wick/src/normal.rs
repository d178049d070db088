//! Anticommutator rewriting into canonical Wick order.

use num_complex::Complex64;

use crate::polynomial::CarPolynomial;
use crate::{CarError, CarMonomial, CarOp};

/// Normal ordering expands into up to `2^(d/2)` contraction terms; this cap
/// keeps the symbolic layer both fast and predictable.
pub const DEGREE_CAP: usize = 12;

/// Rewrite an arbitrary word into the unique Wick-ordered polynomial equal
/// to it under the CAR relations.  Repeated equal factors annihilate the
/// term; crossing an annihilator over a creator at the same site produces
/// the contraction (shorter) term.
pub fn normal_order(m: &CarMonomial) -> Result<CarPolynomial, CarError> {
    if m.len() > DEGREE_CAP {
        return Err(CarError::DegreeCap { degree: m.len(), cap: DEGREE_CAP });
    }
    Ok(reduce(m, first_violation))
}

/// Same rewriting driven from the rightmost violation; used to exercise
/// confluence (both strategies must produce identical polynomials).
pub fn normal_order_rightmost(m: &CarMonomial) -> Result<CarPolynomial, CarError> {
    if m.len() > DEGREE_CAP {
        return Err(CarError::DegreeCap { degree: m.len(), cap: DEGREE_CAP });
    }
    Ok(reduce(m, last_violation))
}

fn reduce(m: &CarMonomial, pick: fn(&[CarOp]) -> Option<usize>) -> CarPolynomial {
    let mut out = CarPolynomial::zero();
    let mut stack: Vec<(Complex64, Vec<CarOp>)> = vec![(Complex64::new(1.0, 0.0), m.0.clone())];
    while let Some((coeff, word)) = stack.pop() {
        let Some(i) = pick(&word) else {
            out.add_term(CarMonomial(word), coeff);
            continue;
        };
        let (x, y) = (word[i], word[i + 1]);
        if x == y {
            // a^2 = (a+)^2 = 0: the whole term vanishes.
            continue;
        }
        if !x.dagger && y.dagger && x.site == y.site {
            // a_j a+_j = I - a+_j a_j: contraction branch first.
            let mut shorter = word.clone();
            shorter.drain(i..=i + 1);
            stack.push((coeff, shorter));
        }
        let mut swapped = word;
        swapped.swap(i, i + 1);
        stack.push((-coeff, swapped));
    }
    out
}

/// Adjacent pairs that break canonical order: creators must ascend,
/// annihilators must descend, and no annihilator may precede a creator.
fn violates(x: CarOp, y: CarOp) -> bool {
    match (x.dagger, y.dagger) {
        (true, true) => x.site >= y.site,
        (false, false) => x.site <= y.site,
        (false, true) => true,
        (true, false) => false,
    }
}

fn first_violation(word: &[CarOp]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&i| violates(word[i], word[i + 1]))
}

fn last_violation(word: &[CarOp]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).rev().find(|&i| violates(word[i], word[i + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ops: &[CarOp]) -> CarMonomial {
        CarMonomial(ops.to_vec())
    }

    #[test]
    fn single_anticommutator() {
        // a_1 a+_1 = I - a+_1 a_1
        let p = normal_order(&word(&[CarOp::annihilate(1), CarOp::create(1)])).unwrap();
        let mut expected = CarPolynomial::unit();
        expected.add_term(
            word(&[CarOp::create(1), CarOp::annihilate(1)]),
            Complex64::new(-1.0, 0.0),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn nilpotency() {
        let p = normal_order(&word(&[CarOp::annihilate(1), CarOp::annihilate(1)])).unwrap();
        assert_eq!(p, CarPolynomial::zero());
        let q = normal_order(&word(&[CarOp::create(4), CarOp::create(4)])).unwrap();
        assert_eq!(q, CarPolynomial::zero());
    }

    #[test]
    fn disjoint_sites_anticommute() {
        // a_2 a+_1 = -a+_1 a_2
        let p = normal_order(&word(&[CarOp::annihilate(2), CarOp::create(1)])).unwrap();
        let mut expected = CarPolynomial::zero();
        expected.add_term(
            word(&[CarOp::create(1), CarOp::annihilate(2)]),
            Complex64::new(-1.0, 0.0),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn canonical_words_are_fixed_points() {
        let m = word(&[
            CarOp::create(-2),
            CarOp::create(0),
            CarOp::annihilate(4),
            CarOp::annihilate(1),
        ]);
        let p = normal_order(&m).unwrap();
        let mut expected = CarPolynomial::zero();
        expected.add_term(m, Complex64::new(1.0, 0.0));
        assert_eq!(p, expected);
    }

    #[test]
    fn degree_cap_enforced() {
        let long = CarMonomial(vec![CarOp::annihilate(0); DEGREE_CAP + 1]);
        assert!(matches!(normal_order(&long), Err(CarError::DegreeCap { .. })));
    }

    #[test]
    fn both_strategies_agree_on_a_crossing_word() {
        let m = word(&[
            CarOp::annihilate(1),
            CarOp::create(2),
            CarOp::annihilate(2),
            CarOp::create(1),
        ]);
        assert_eq!(normal_order(&m).unwrap(), normal_order_rightmost(&m).unwrap());
    }
}
