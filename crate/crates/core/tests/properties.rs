use proptest::prelude::*;

use real_hurwitz_core::cutjoin::{apply, apply_monomial, wplus_terms, OperatorKind};
use real_hurwitz_core::oracle::{all_states, classify, components, invert, Component, GroundSet, Transition};
use real_hurwitz_core::poly::{scalar_product, PolyVector};
use real_hurwitz_core::series::USeries;
use real_hurwitz_core::{Partition, RamificationType, Rational, Sign};

fn parts(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=4, 0..=max_len)
}

fn ramification_type(max_degree: u32) -> impl Strategy<Value = RamificationType> {
    (parts(3), parts(3), prop::collection::vec(1u32..=2, 0..=2))
        .prop_map(|(kp, km, l)| RamificationType::from_parts(&kp, &km, &l))
        .prop_filter("degree cap", move |mu| mu.degree() <= max_degree)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly(max_degree: u32) -> impl Strategy<Value = PolyVector> {
    prop::collection::vec((ramification_type(max_degree), rational()), 0..6).prop_map(PolyVector::from_terms)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn transition() -> impl Strategy<Value = (Transition, Vec<usize>, Vec<usize>)> {
    (0usize..=4, 0usize..=4).prop_flat_map(|(a, b)| {
        let n = GroundSet::new(a, b).state_count();
        (0..n, 0..n, permutation(a), permutation(b)).prop_map(move |(i, j, sp, sm)| {
            let states = all_states(GroundSet::new(a, b));
            (Transition::new(states[i].clone(), states[j].clone()), sp, sm)
        })
    })
}

proptest! {
    #[test]
    fn partition_is_sorted_and_positive(v in prop::collection::vec(1u32..10, 0..8)) {
        let p = Partition::new(v.clone()).unwrap();
        prop_assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(p.weight(), v.iter().sum::<u32>());
        prop_assert_eq!(p.len(), v.len());
    }

    #[test]
    fn bidegree_sums_to_degree(mu in ramification_type(12)) {
        prop_assert_eq!(mu.bidegree().total(), mu.degree());
    }

    #[test]
    fn bidegree_is_additive(a in ramification_type(6), b in ramification_type(6)) {
        prop_assert_eq!(a.times(&b).bidegree(), a.bidegree() + b.bidegree());
    }

    #[test]
    fn chi_drops_by_one_per_step(mu in ramification_type(8), m in 0u32..20) {
        prop_assert_eq!(mu.euler_characteristic(m) - mu.euler_characteristic(m + 1), 1);
    }

    #[test]
    fn operators_preserve_bidegree(mu in ramification_type(8)) {
        for kind in OperatorKind::ALL {
            for (image, _) in apply_monomial(kind, &mu).iter() {
                prop_assert_eq!(image.bidegree(), mu.bidegree());
                prop_assert_eq!(image.degree(), mu.degree());
            }
        }
    }

    #[test]
    fn chi_shift_matches_term_kind(mu in ramification_type(8), m in 0u32..10) {
        for term in wplus_terms(&mu) {
            let shift = term.image.euler_characteristic(m + 1) - mu.euler_characteristic(m);
            prop_assert_eq!(shift, term.kind.chi_shift());
        }
    }

    #[test]
    fn sign_swap_conjugates_operators(p in poly(8)) {
        let lhs = apply(OperatorKind::WPlus, &p.swap_signs()).swap_signs();
        prop_assert_eq!(lhs, apply(OperatorKind::WMinus, &p));
    }

    #[test]
    fn operators_are_linear(p in poly(6), q in poly(6), c in rational()) {
        let lhs = apply(OperatorKind::WPlus, &(&p + &q.scale(&c)));
        let rhs = &apply(OperatorKind::WPlus, &p) + &apply(OperatorKind::WPlus, &q).scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_product_is_symmetric(p in poly(6), q in poly(6)) {
        prop_assert_eq!(scalar_product(&p, &q), scalar_product(&q, &p));
    }

    #[test]
    fn operators_are_self_adjoint(p in poly(6), q in poly(6)) {
        for kind in OperatorKind::ALL {
            prop_assert_eq!(scalar_product(&apply(kind, &p), &q), scalar_product(&p, &apply(kind, &q)));
        }
    }

    #[test]
    fn exp_log_roundtrip(terms in prop::collection::vec(poly(5), 1..4)) {
        let x = USeries::new(
            terms.into_iter().map(|p| p.filter(|mu| !mu.is_empty())).collect(),
            true,
            5,
        );
        let max_m = x.max_m().unwrap();
        let back = x.exp(max_m, 5).unwrap().log(max_m, 5).unwrap();
        prop_assert_eq!(back.coeffs(), x.coeffs());
    }

    #[test]
    fn classify_is_relabelling_invariant((t, sp, sm) in transition()) {
        prop_assert_eq!(classify(&t.relabel(&sp, &sm)), classify(&t));
    }

    #[test]
    fn classify_has_ground_set_bidegree((t, _, _) in transition()) {
        prop_assert_eq!(classify(&t).bidegree(), t.ground_set().bidegree());
    }

    #[test]
    fn inverse_swaps_even_parts((t, _, _) in transition()) {
        prop_assert_eq!(classify(&invert(&t)), classify(&t).swap_even_parts());
        prop_assert_eq!(invert(&invert(&t)), t);
    }

    #[test]
    fn odd_chains_have_equal_end_signs((t, _, _) in transition()) {
        for c in components(&t) {
            if let Component::Chain { len, start, end, .. } = c {
                if len % 2 == 1 {
                    prop_assert_eq!(start, end);
                } else {
                    prop_assert_eq!(start, end.flip());
                }
            }
        }
    }
}

#[test]
fn sign_of_index() {
    assert_eq!(Sign::of_index(2), Sign::Plus);
    assert_eq!(Sign::of_index(3), Sign::Minus);
}
