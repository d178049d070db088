use car_wick::{eval_quasifree, CarMonomial, CarOp, CarPolynomial};
use folner_lab::{enumerate_fn, Budget};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spread_states::{averaged_eval, gap_profile, image_law, ImageLawQuery};
use std::collections::BTreeMap;
use toeplitz_cov::ToeplitzCovariance;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gap_profile_is_normalized(n in 1u32..=16) {
        let p = gap_profile(n);
        let sum: BigRational = p.probabilities().values().sum();
        prop_assert!(sum.is_one());
        prop_assert!(p.prob_gap_exceeds_one() >= BigRational::zero());
    }

    #[test]
    fn image_law_marginalizes_to_the_pair_laws(
        start in -3i64..=3,
        gap_a in 1i64..=2,
        gap_b in 1i64..=2,
        n in 1u32..=3,
    ) {
        let sites = vec![start, start + gap_a, start + gap_a + gap_b];
        let joint = image_law(&ImageLawQuery { sites: sites.clone(), n }).unwrap();

        let mut first: BTreeMap<u64, BigRational> = BTreeMap::new();
        let mut second: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (gaps, p) in &joint {
            *first.entry(gaps[0]).or_insert_with(BigRational::zero) += p;
            *second.entry(gaps[1]).or_insert_with(BigRational::zero) += p;
        }

        let front = image_law(&ImageLawQuery { sites: sites[..2].to_vec(), n }).unwrap();
        for (gaps, p) in &front {
            prop_assert_eq!(&first[&gaps[0]], p);
        }
        prop_assert_eq!(first.len(), front.len());

        let back = image_law(&ImageLawQuery { sites: sites[1..].to_vec(), n }).unwrap();
        for (gaps, p) in &back {
            prop_assert_eq!(&second[&gaps[0]], p);
        }
        prop_assert_eq!(second.len(), back.len());
    }

    #[test]
    fn averaged_pairs_are_antisymmetric(
        site in -4i64..=4,
        gap in 1i64..=3,
        n in 1u32..=6,
    ) {
        let forward = CarPolynomial::from_monomial(&CarMonomial(vec![
            CarOp::annihilate(site),
            CarOp::create(site + gap),
        ]))
        .unwrap();
        let backward = CarPolynomial::from_monomial(&CarMonomial(vec![
            CarOp::annihilate(site + gap),
            CarOp::create(site),
        ]))
        .unwrap();
        let f = averaged_eval(&forward, n).unwrap();
        let b = averaged_eval(&backward, n).unwrap();
        prop_assert_eq!(f + b, Complex64::ZERO);
    }

    #[test]
    fn averaging_matches_enumeration_on_the_smallest_window(
        ops in proptest::collection::vec((-2i64..=3, any::<bool>()), 0..4),
    ) {
        let m = CarMonomial(ops.into_iter().map(|(site, dagger)| CarOp { site, dagger }).collect());
        let p = match CarPolynomial::from_monomial(&m) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        prop_assume!(m.support().len() <= 4);
        let fast = averaged_eval(&p, 1).unwrap();
        let q = ToeplitzCovariance::certified();
        let mut slow = Complex64::ZERO;
        for h in enumerate_fn(1, Budget::default()).unwrap() {
            slow += eval_quasifree(&p.act_index(&h), &q);
        }
        slow /= 12.0;
        prop_assert!((fast - slow).norm() < 1e-12, "{} vs {}", fast, slow);
    }
}
