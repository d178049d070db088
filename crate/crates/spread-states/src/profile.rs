//! Exact distribution of the image gap `h(2) - h(1)` over a window.
//!
//! Under `h = th-block . t^l` the image of `k` is `k + l + sum_{m <= k+l}
//! h_m`, so the gap is `1 + h_{2+l}` while `2 + l` stays inside the
//! exponent window `[-n, n]`, and exactly `1` for the two edge shifts
//! `l in {n-1, n}`.  Fixing one coordinate of the exponent vector leaves a
//! simplex of lattice points whose size is a single binomial, so the whole
//! law is closed-form.

use std::collections::BTreeMap;

use folner_lab::{binomial, card_fn};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact gap law at one window index.
#[derive(Debug, Clone)]
pub struct GapProfile {
    n: u32,
    probabilities: BTreeMap<u64, BigRational>,
}

/// The gap distribution of `(h(1), h(2))` under the uniform measure on the
/// window family at index `n >= 1`.
pub fn gap_profile(n: u32) -> GapProfile {
    assert!(n >= 1, "gap_profile needs n >= 1");
    let n_u64 = u64::from(n);
    let window = 2 * n_u64 + 1;
    let mass = n_u64 * n_u64;
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    // Edge shifts l = n-1 and l = n push the pair past the window: gap 1.
    let all_exponents = binomial(mass + window, window);
    counts.insert(1, &all_exponents * 2u32);
    // The remaining 2n-1 shifts read off one in-window coordinate.
    let in_window = BigUint::from(window - 2);
    for v in 0..=mass {
        let fixed = binomial(mass - v + window - 1, window - 1) * &in_window;
        *counts.entry(1 + v).or_insert_with(BigUint::zero) += fixed;
    }
    let total = BigInt::from(card_fn(n));
    let probabilities = counts
        .into_iter()
        .map(|(g, c)| (g, BigRational::new(BigInt::from(c), total.clone())))
        .collect();
    GapProfile { n, probabilities }
}

impl GapProfile {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn probabilities(&self) -> &BTreeMap<u64, BigRational> {
        &self.probabilities
    }

    pub fn prob(&self, gap: u64) -> BigRational {
        self.probabilities.get(&gap).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `P(gap > 1)`, the mass of the slow-decay tail.
    pub fn prob_gap_exceeds_one(&self) -> BigRational {
        BigRational::one() - self.prob(1)
    }

    /// `sum_g p_g / g^2`, the exact rational factor in the averaged pair
    /// value (the unit `-3iC/pi^2` carries the rest).
    pub fn inverse_square_moment(&self) -> BigRational {
        self.probabilities
            .iter()
            .map(|(&g, p)| p / BigRational::from(BigInt::from(g * g)))
            .sum()
    }
}
