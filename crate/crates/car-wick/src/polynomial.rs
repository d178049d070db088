use std::collections::BTreeMap;

use jz_core::JElement;
use num_complex::Complex64;

use crate::normal::normal_order;
use crate::{CarError, CarMonomial, CarOp};

/// Complex linear combination of Wick-ordered monomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CarPolynomial {
    terms: BTreeMap<CarMonomial, Complex64>,
}

impl CarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        let mut p = Self::zero();
        p.add_term(CarMonomial::unit(), Complex64::new(1.0, 0.0));
        p
    }

    /// Normal-order an arbitrary word into a polynomial.
    pub fn from_monomial(m: &CarMonomial) -> Result<Self, CarError> {
        normal_order(m)
    }

    /// Accumulate a coefficient on an already-canonical monomial.
    pub(crate) fn add_term(&mut self, m: CarMonomial, coeff: Complex64) {
        debug_assert!(m.is_canonical(), "non-canonical term {m}");
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                if coeff.re != 0.0 || coeff.im != 0.0 {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                let c = slot.get_mut();
                *c += coeff;
                if c.re == 0.0 && c.im == 0.0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CarMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &CarMonomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        if factor.re == 0.0 && factor.im == 0.0 {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Product in the algebra; re-normal-orders every cross term.
    pub fn mul(&self, other: &Self) -> Result<Self, CarError> {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let mut word = m1.0.clone();
                word.extend_from_slice(&m2.0);
                let reduced = normal_order(&CarMonomial(word))?;
                for (m, c) in reduced.terms() {
                    out.add_term(m.clone(), c * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// The *-operation: reverse factors, flip daggers, conjugate
    /// coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let word: Vec<CarOp> = m.0.iter().rev().map(|op| op.adjoint()).collect();
            let reduced = normal_order(&CarMonomial(word)).expect("adjoint preserves degree");
            for (rm, rc) in reduced.terms() {
                out.add_term(rm.clone(), rc * c.conj());
            }
        }
        out
    }

    /// Relabel every site through an injective increasing map.  Canonical
    /// order is preserved, so no signs appear.
    pub fn act_index(&self, g: &JElement) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let word: Vec<CarOp> =
                m.0.iter().map(|op| CarOp { site: g.apply(op.site), dagger: op.dagger }).collect();
            out.add_term(CarMonomial(word), *c);
        }
        out
    }

    /// Swap two site labels everywhere; re-normal-orders, so signs from the
    /// broken monotonicity are accounted for.
    pub fn act_transposition(&self, i: i64, j: i64) -> Self {
        let relabel = |site: i64| {
            if site == i {
                j
            } else if site == j {
                i
            } else {
                site
            }
        };
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let word: Vec<CarOp> =
                m.0.iter().map(|op| CarOp { site: relabel(op.site), dagger: op.dagger }).collect();
            let reduced =
                normal_order(&CarMonomial(word)).expect("transposition preserves degree");
            for (rm, rc) in reduced.terms() {
                out.add_term(rm.clone(), rc * c);
            }
        }
        out
    }

    /// Split by factor-count parity; the parts sum back to the polynomial.
    pub fn parity_split(&self) -> (Self, Self) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for (m, c) in self.terms() {
            if m.len() % 2 == 0 {
                even.add_term(m.clone(), *c);
            } else {
                odd.add_term(m.clone(), *c);
            }
        }
        (even, odd)
    }

    /// The grading automorphism: even part minus odd part.
    pub fn theta(&self) -> Self {
        let (even, odd) = self.parity_split();
        even.sub(&odd)
    }

    /// Largest coefficient difference against another polynomial.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut max = 0.0f64;
        for (m, c) in self.terms() {
            max = max.max((c - other.coefficient(m)).norm());
        }
        for (m, c) in other.terms() {
            max = max.max((c - self.coefficient(m)).norm());
        }
        max
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_coeff_diff(other) <= tol
    }

    /// Parse `"a+[j]"`, `"a[j]"`, `"x[j]"`, and `"I"` joined by `*`.
    pub fn parse(input: &str) -> Result<Self, CarError> {
        let mut acc = Self::unit();
        for raw in input.split('*') {
            let token = raw.trim();
            let factor = parse_factor(token)?;
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }
}

fn parse_factor(token: &str) -> Result<CarPolynomial, CarError> {
    if token == "I" {
        return Ok(CarPolynomial::unit());
    }
    let (kind, rest) = if let Some(rest) = token.strip_prefix("a+") {
        ("a+", rest)
    } else if let Some(rest) = token.strip_prefix('a') {
        ("a", rest)
    } else if let Some(rest) = token.strip_prefix('x') {
        ("x", rest)
    } else {
        return Err(CarError::Parse(format!("unknown factor `{token}`")));
    };
    let site: i64 = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| CarError::Parse(format!("bad site index in `{token}`")))?;
    Ok(match kind {
        "a+" => single(CarOp::create(site)),
        "a" => single(CarOp::annihilate(site)),
        _ => position(site),
    })
}

fn single(op: CarOp) -> CarPolynomial {
    let mut p = CarPolynomial::zero();
    p.add_term(CarMonomial(vec![op]), Complex64::new(1.0, 0.0));
    p
}

/// The self-adjoint position operator `x_j = a_j + a+_j`.
pub fn position(j: i64) -> CarPolynomial {
    let mut p = CarPolynomial::zero();
    p.add_term(CarMonomial(vec![CarOp::create(j)]), Complex64::new(1.0, 0.0));
    p.add_term(CarMonomial(vec![CarOp::annihilate(j)]), Complex64::new(1.0, 0.0));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CarPolynomial {
        CarPolynomial::parse(s).unwrap()
    }

    #[test]
    fn position_squares_to_unit() {
        for j in -5..=5 {
            let x = position(j);
            assert_eq!(x.mul(&x).unwrap(), CarPolynomial::unit(), "j={j}");
        }
    }

    #[test]
    fn positions_anticommute() {
        for j in -5..=5i64 {
            for k in -5..=5i64 {
                if j == k {
                    continue;
                }
                let (xj, xk) = (position(j), position(k));
                let anti = xj.mul(&xk).unwrap().add(&xk.mul(&xj).unwrap());
                assert!(anti.is_zero(), "j={j} k={k}");
            }
        }
    }

    #[test]
    fn parity_and_grading() {
        let p = parse("a+[1]*a[1]").add(&position(2));
        let (even, odd) = p.parity_split();
        assert_eq!(even, parse("a+[1]*a[1]"));
        assert_eq!(odd, position(2));
        assert_eq!(even.add(&odd), p);
        assert_eq!(p.theta(), even.sub(&odd));
        assert_eq!(position(1).theta(), position(1).scale(Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn index_action_examples() {
        let tau = JElement::tau_power(1);
        assert_eq!(parse("a+[1]*a[0]").act_index(&tau), parse("a+[2]*a[1]"));
        let th0 = JElement::theta(0);
        assert_eq!(parse("a[1]*a+[2]").act_index(&th0), parse("a[2]*a+[3]"));
        let id = JElement::identity();
        let p = parse("a+[1]*a[3]").add(&position(0));
        assert_eq!(p.act_index(&id), p);
    }

    #[test]
    fn transposition_examples() {
        let p = parse("a[1]*a+[2]");
        assert_eq!(p.act_transposition(1, 2), parse("a[2]*a+[1]"));
        assert_eq!(p.act_transposition(1, 2).act_transposition(1, 2), p);
        assert_eq!(p.act_transposition(3, 3), p);
        // Swapping two creator labels inside one monomial flips the sign.
        let q = parse("a+[1]*a+[2]");
        assert_eq!(q.act_transposition(1, 2), q.scale(Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn adjoint_is_an_involution_and_antihomomorphism() {
        let p = parse("a+[1]*a[2]").scale(Complex64::new(0.0, 2.0));
        assert_eq!(p.adjoint().adjoint(), p);
        // (x1 x2)* = x2 x1 = -x1 x2.
        let x12 = position(1).mul(&position(2)).unwrap();
        assert_eq!(x12.adjoint(), x12.scale(Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn parser_round_trips_and_rejects() {
        let p = parse("a+[1]*a[-2]");
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m.to_string(), "a+[1]*a[-2]");
        assert_eq!(*c, Complex64::new(1.0, 0.0));
        assert_eq!(parse("x[3]"), position(3));
        assert_eq!(parse("I"), CarPolynomial::unit());
        assert!(CarPolynomial::parse("b[1]").is_err());
        assert!(CarPolynomial::parse("a+[oops]").is_err());
        assert!(CarPolynomial::parse("a+[1").is_err());
    }

    #[test]
    fn product_degree_cap() {
        let mut long = CarPolynomial::unit();
        for j in 1..=7 {
            long = long.mul(&parse(&format!("a+[{j}]"))).unwrap();
        }
        assert!(matches!(long.mul(&long), Err(CarError::DegreeCap { .. })));
    }
}
