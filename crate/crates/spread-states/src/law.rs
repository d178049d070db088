//! Joint law of the image gaps of a site tuple under a uniform window.
//!
//! For sites `j_1 < ... < j_k` and a window element with shift `l`, the gap
//! `h(j_{i+1}) - h(j_i)` is the base distance plus the sum of the exponents
//! over the index block `(j_i + l, j_{i+1} + l]` clipped to `[-n, n]`.  The
//! number of exponent vectors realizing prescribed block sums is a product
//! of stars-and-bars binomials times one slack binomial, so the law is
//! assembled exactly from grouped block-size signatures — no enumeration of
//! the window itself.

use std::collections::BTreeMap;

use folner_lab::{binomial, card_fn};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::SpreadError;

/// Maximum number of distinct sites in one query.
pub const LAW_SITE_CAP: usize = 4;
/// Maximum window index.
pub const N_CAP: u32 = 60;
/// Cap on the number of block-sum tuples visited across all signatures.
pub const LAW_STATE_CAP: u64 = 8_000_000;

/// A site tuple and the window index to average over.
#[derive(Debug, Clone)]
pub struct ImageLawQuery {
    pub sites: Vec<i64>,
    pub n: u32,
}

/// Exact joint distribution of `(h(j_2)-h(j_1), ..., h(j_k)-h(j_{k-1}))`
/// under the uniform measure on the window family at index `n`.
pub fn image_law(
    q: &ImageLawQuery,
) -> Result<BTreeMap<Vec<u64>, BigRational>, SpreadError> {
    let k = q.sites.len();
    if k == 0 || q.sites.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpreadError::BadSites);
    }
    if k > LAW_SITE_CAP {
        return Err(SpreadError::SiteCap { got: k, cap: LAW_SITE_CAP });
    }
    if q.n == 0 || q.n > N_CAP {
        return Err(SpreadError::WindowCap { n: q.n, cap: N_CAP });
    }
    let n = i64::from(q.n);
    let mass = (n * n) as u64;
    let window = (2 * n + 1) as u64;

    // Group the 2n+1 shifts by the clipped block-size signature; the count
    // of exponent vectors depends on the blocks only through their sizes.
    let mut signatures: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for l in -n..=n {
        let sig: Vec<u64> = q
            .sites
            .windows(2)
            .map(|w| {
                let lo = (w[0] + l + 1).max(-n);
                let hi = (w[1] + l).min(n);
                if hi >= lo { (hi - lo + 1) as u64 } else { 0 }
            })
            .collect();
        *signatures.entry(sig).or_insert(0) += 1;
    }

    let mut states: u128 = 0;
    for sig in signatures.keys() {
        let active = sig.iter().filter(|&&b| b > 0).count() as u128;
        let mut est: u128 = 1;
        for i in 0..active {
            est = est * (u128::from(mass) + active - i) / (i + 1);
        }
        states += est;
    }
    if states > u128::from(LAW_STATE_CAP) {
        return Err(SpreadError::StateBudget { estimate: states, cap: LAW_STATE_CAP });
    }

    let bases: Vec<u64> = q.sites.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
    let mut counts: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    for (sig, mult) in &signatures {
        let free = window - sig.iter().sum::<u64>();
        // Tables: per block the composition counts, plus the slack counts
        // for whatever total is left over.
        let comps: Vec<Option<Vec<BigUint>>> = sig
            .iter()
            .map(|&b| {
                (b > 0).then(|| {
                    (0..=mass).map(|s| binomial(s + b - 1, b - 1)).collect()
                })
            })
            .collect();
        let slack: Vec<BigUint> = (0..=mass).map(|u| binomial(u + free, free)).collect();
        let mult = BigUint::from(*mult);
        let mut sums = vec![0u64; sig.len()];
        fill(&mut counts, &comps, &slack, &bases, &mult, &mut sums, 0, mass);
    }

    let total = BigInt::from(card_fn(q.n));
    Ok(counts
        .into_iter()
        .map(|(gaps, c)| (gaps, BigRational::new(BigInt::from(c), total.clone())))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn fill(
    counts: &mut BTreeMap<Vec<u64>, BigUint>,
    comps: &[Option<Vec<BigUint>>],
    slack: &[BigUint],
    bases: &[u64],
    mult: &BigUint,
    sums: &mut Vec<u64>,
    block: usize,
    remaining: u64,
) {
    if block == comps.len() {
        let mut weight = mult * &slack[remaining as usize];
        for (i, comp) in comps.iter().enumerate() {
            if let Some(table) = comp {
                weight *= &table[sums[i] as usize];
            }
        }
        let gaps: Vec<u64> = bases.iter().zip(sums.iter()).map(|(b, s)| b + s).collect();
        *counts.entry(gaps).or_insert_with(BigUint::zero) += weight;
        return;
    }
    if comps[block].is_none() {
        sums[block] = 0;
        fill(counts, comps, slack, bases, mult, sums, block + 1, remaining);
        return;
    }
    for s in 0..=remaining {
        sums[block] = s;
        fill(counts, comps, slack, bases, mult, sums, block + 1, remaining - s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap_profile;
    use folner_lab::{enumerate_fn, Budget};
    use num_traits::One;

    fn enumeration_law(sites: &[i64], n: u32) -> BTreeMap<Vec<u64>, BigRational> {
        let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        let mut total = 0u64;
        for e in enumerate_fn(n, Budget::default()).unwrap() {
            let gaps: Vec<u64> = sites
                .windows(2)
                .map(|w| (e.apply(w[1]) - e.apply(w[0])) as u64)
                .collect();
            *counts.entry(gaps).or_insert(0) += 1;
            total += 1;
        }
        counts
            .into_iter()
            .map(|(g, c)| (g, BigRational::new(BigInt::from(c), BigInt::from(total))))
            .collect()
    }

    #[test]
    fn pair_law_is_the_gap_profile() {
        for n in 1..=6u32 {
            let law = image_law(&ImageLawQuery { sites: vec![1, 2], n }).unwrap();
            let profile = gap_profile(n);
            assert_eq!(law.len(), profile.probabilities().len());
            for (gaps, p) in &law {
                assert_eq!(p, &profile.prob(gaps[0]), "n={n} gaps={gaps:?}");
            }
        }
    }

    #[test]
    fn skip_pair_matches_enumeration() {
        for n in 1..=2u32 {
            let law = image_law(&ImageLawQuery { sites: vec![1, 3], n }).unwrap();
            assert_eq!(law, enumeration_law(&[1, 3], n), "n={n}");
        }
    }

    #[test]
    fn triple_law_matches_enumeration_and_normalizes() {
        let query = ImageLawQuery { sites: vec![0, 1, 2], n: 2 };
        let law = image_law(&query).unwrap();
        let sum: BigRational = law.values().sum();
        assert!(sum.is_one());
        assert_eq!(law, enumeration_law(&[0, 1, 2], 2));
    }

    #[test]
    fn single_site_law_is_trivial() {
        let law = image_law(&ImageLawQuery { sites: vec![5], n: 3 }).unwrap();
        assert_eq!(law.len(), 1);
        assert!(law[&Vec::new()].is_one());
    }

    #[test]
    fn caps_are_enforced() {
        let wide = ImageLawQuery { sites: vec![1, 2, 3, 4, 5], n: 1 };
        assert!(matches!(image_law(&wide), Err(SpreadError::SiteCap { got: 5, .. })));
        let deep = ImageLawQuery { sites: vec![1, 2], n: 61 };
        assert!(matches!(image_law(&deep), Err(SpreadError::WindowCap { n: 61, .. })));
        let unsorted = ImageLawQuery { sites: vec![2, 1], n: 1 };
        assert!(matches!(image_law(&unsorted), Err(SpreadError::BadSites)));
        let heavy = ImageLawQuery { sites: vec![1, 2, 3, 4], n: 60 };
        assert!(matches!(image_law(&heavy), Err(SpreadError::StateBudget { .. })));
    }
}
