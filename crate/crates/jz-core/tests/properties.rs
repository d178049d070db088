//! Property tests pitting the symbolic composition (rewriting on normal
//! forms) against the semantic route (pointwise evaluation of the maps).

use std::collections::BTreeMap;

use jz_core::JElement;
use proptest::prelude::*;

fn arb_element() -> impl Strategy<Value = JElement> {
    let entry = (-8i64..=8, 1u64..=4);
    (proptest::collection::btree_map(entry.0, entry.1, 0..4), -6i64..=6)
        .prop_map(|(exponents, shift): (BTreeMap<i64, u64>, i64)| {
            JElement::from_parts(exponents, shift).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// apply(f ∘ g, k) = apply(f, apply(g, k))
    #[test]
    fn composition_is_sound(f in arb_element(), g in arb_element(), k in -40i64..=40) {
        let fg = f.compose(&g);
        prop_assert_eq!(fg.apply(k), f.apply(g.apply(k)));
    }

    /// (f ∘ g) ∘ h = f ∘ (g ∘ h) on normal forms
    #[test]
    fn composition_is_associative(f in arb_element(), g in arb_element(), h in arb_element()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    /// Distinct normal forms are distinct maps: they separate on the joined window.
    #[test]
    fn normal_form_is_complete(f in arb_element(), g in arb_element()) {
        if f != g {
            let b = f.separation_bound().max(g.separation_bound());
            let separated = (-b..=b).any(|k| f.apply(k) != g.apply(k));
            prop_assert!(separated, "f={f} g={g} agree on [-{b}, {b}]");
        }
    }

    /// Left cancellation: f ∘ g1 = f ∘ g2 implies g1 = g2 (f injective).
    #[test]
    fn composition_left_cancels(f in arb_element(), g1 in arb_element(), g2 in arb_element()) {
        if f.compose(&g1) == f.compose(&g2) {
            prop_assert_eq!(g1, g2);
        }
    }

    /// Every element is strictly increasing.
    #[test]
    fn elements_strictly_increase(f in arb_element()) {
        let b = f.separation_bound();
        for k in -b..b {
            prop_assert!(f.apply(k) < f.apply(k + 1));
        }
    }

    /// Identity laws.
    #[test]
    fn identity_laws(f in arb_element()) {
        let e = JElement::identity();
        prop_assert_eq!(&f.compose(&e), &f);
        prop_assert_eq!(&e.compose(&f), &f);
    }

    /// Render/parse round trip.
    #[test]
    fn render_parse_round_trip(f in arb_element()) {
        prop_assert_eq!(JElement::parse(&f.render()).unwrap(), f);
    }
}
