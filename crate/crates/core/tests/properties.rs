//! Algebraic invariants checked on generated inputs.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use powmon::ambient::{ElementOrder, Subgroup};
use powmon::monoid::{ComplementSpec, MonoidSpec, QuadraticSurd, Window};
use powmon::powmon::{format_set, parse_set_literal, FinSubset1};
use powmon::structure::{is_factorization, is_independent, is_irreducible, Irreducibility};
use powmon::suites::rank4_pair;
use powmon::{GroupElement, GroupSignature};

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn z2_z4() -> GroupSignature {
    GroupSignature::new(2, vec![int(4)]).unwrap()
}

fn mixed_element() -> impl Strategy<Value = GroupElement> {
    (-20i64..=20, -20i64..=20, 0i64..4).prop_map(|(a, b, t)| z2_z4().element_from_i64(&[a, b, t]).unwrap())
}

fn zoo() -> &'static [Arc<MonoidSpec>] {
    static ZOO: OnceLock<Vec<Arc<MonoidSpec>>> = OnceLock::new();
    ZOO.get_or_init(|| {
        let z2 = GroupSignature::free(2);
        let golden = QuadraticSurd::new(int(1), int(1), int(2), int(5)).unwrap();
        let (h, k) = rank4_pair(QuadraticSurd::sqrt(2).unwrap()).unwrap();
        let torsion = GroupSignature::new(1, vec![int(3)]).unwrap();
        let composite_torsion = {
            let sig = GroupSignature::new(3, vec![int(2)]).unwrap();
            let part = MonoidSpec::half_plane_lex(sig.clone(), [0, 1]).unwrap();
            let complement = ComplementSpec {
                base_subgroup: vec![sig.unit_vector(0), sig.unit_vector(1), sig.element_from_i64(&[0, 0, 0, 1]).unwrap()],
                positive_generators: vec![sig.unit_vector(2)],
                grading: None,
            };
            MonoidSpec::composite(part, complement).unwrap()
        };
        vec![
            MonoidSpec::full_n0(),
            MonoidSpec::numerical(&[2, 3]).unwrap(),
            MonoidSpec::numerical(&[4, 6, 9]).unwrap(),
            MonoidSpec::half_plane_lex(z2.clone(), [0, 1]).unwrap(),
            MonoidSpec::irrational_cone(z2.clone(), [0, 1], QuadraticSurd::sqrt(2).unwrap()).unwrap(),
            MonoidSpec::irrational_cone(z2.clone(), [1, 0], golden).unwrap(),
            MonoidSpec::free_generated(
                z2,
                vec![GroupElement::from_free(&[2, 1]), GroupElement::from_free(&[1, 2])],
                None,
            )
            .unwrap(),
            MonoidSpec::free_generated(
                torsion.clone(),
                vec![torsion.element_from_i64(&[1, 0]).unwrap(), torsion.element_from_i64(&[0, 1]).unwrap()],
                None,
            )
            .unwrap(),
            h,
            k,
            composite_torsion,
        ]
        .into_iter()
        .map(Arc::new)
        .collect()
    })
}

/// A monoid from the zoo with a handful of its members in a small window.
fn monoid_with_members(count: usize) -> impl Strategy<Value = (Arc<MonoidSpec>, Vec<GroupElement>)> {
    (0..zoo().len()).prop_flat_map(move |i| {
        let spec = zoo()[i].clone();
        let members = spec.window_elements(Window::new(3));
        let pick = proptest::collection::vec(proptest::sample::select(members), count);
        (Just(spec), pick)
    })
}

fn n0() -> Arc<MonoidSpec> {
    static N0: OnceLock<Arc<MonoidSpec>> = OnceLock::new();
    N0.get_or_init(|| Arc::new(MonoidSpec::full_n0())).clone()
}

fn n0_set() -> impl Strategy<Value = FinSubset1> {
    proptest::collection::vec(0i64..30, 0..6)
        .prop_map(|xs| FinSubset1::new(n0(), xs.into_iter().chain([0]).map(|v| GroupElement::from_free(&[v]))).unwrap())
}

fn planar_set() -> impl Strategy<Value = FinSubset1> {
    static H: OnceLock<Arc<MonoidSpec>> = OnceLock::new();
    let h = H.get_or_init(|| Arc::new(MonoidSpec::half_plane_lex(GroupSignature::free(2), [0, 1]).unwrap())).clone();
    let members = h.window_elements(Window::new(4));
    proptest::collection::vec(proptest::sample::select(members), 0..5)
        .prop_map(move |mut xs| {
            xs.push(h.signature().identity());
            FinSubset1::new(h.clone(), xs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms(a in mixed_element(), b in mixed_element(), c in mixed_element()) {
        let g = z2_z4();
        let ab = g.compose(&a, &b).unwrap();
        prop_assert_eq!(&ab, &g.compose(&b, &a).unwrap());
        prop_assert_eq!(g.compose(&ab, &c).unwrap(), g.compose(&a, &g.compose(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(g.compose(&a, &g.identity()).unwrap(), a.clone());
        prop_assert!(g.compose(&a, &g.inverse(&a)).unwrap().is_identity());
    }

    #[test]
    fn element_order_is_minimal(t in 0i64..4, s in 0i64..6) {
        let g = GroupSignature::new(0, vec![int(4), int(6)]).unwrap();
        let u = g.element_from_i64(&[t, s]).unwrap();
        let ElementOrder::Finite(order) = g.element_order(&u) else { panic!("torsion element has infinite order") };
        let first = (1..=24).find(|&k| g.scale(&u, k).is_identity()).unwrap();
        prop_assert_eq!(order, int(first));
    }

    #[test]
    fn subgroup_basis_is_canonical(gens in proptest::collection::vec(mixed_element(), 1..4), k in -3i64..=3) {
        let g = z2_z4();
        let base = Subgroup::generated_by(&g, &gens);
        // add a combination and reverse the order; the subgroup is the same
        let extra = gens.iter().fold(g.identity(), |acc, u| g.compose(&acc, &g.scale(u, k)).unwrap());
        let mut other: Vec<GroupElement> = gens.iter().rev().cloned().collect();
        other.push(extra);
        let same = Subgroup::generated_by(&g, &other);
        prop_assert_eq!(&base, &same);
        prop_assert_eq!(base.to_string(), same.to_string());
        for u in &gens {
            prop_assert!(base.contains(u));
        }
    }

    #[test]
    fn set_product_laws(x in planar_set(), y in planar_set(), z in planar_set()) {
        let xy = x.product(&y).unwrap();
        prop_assert_eq!(&xy, &y.product(&x).unwrap());
        prop_assert_eq!(xy.product(&z).unwrap(), x.product(&y.product(&z).unwrap()).unwrap());
        prop_assert_eq!(x.product(&FinSubset1::identity(x.monoid().clone())).unwrap(), x.clone());
        prop_assert!(xy.len() <= x.len() * y.len());
        prop_assert!(x.is_subset_of(&xy) && y.is_subset_of(&xy));
    }

    #[test]
    fn powers_are_iterated_products(x in n0_set(), k in 0u32..5) {
        let mut expected = FinSubset1::identity(n0());
        for _ in 0..k {
            expected = expected.product(&x).unwrap();
        }
        prop_assert_eq!(x.power(k), expected);
    }

    #[test]
    fn reversion_is_an_involutive_automorphism(x in n0_set(), y in n0_set()) {
        let rev_xy = x.product(&y).unwrap().reversion().unwrap();
        prop_assert_eq!(rev_xy, x.reversion().unwrap().product(&y.reversion().unwrap()).unwrap());
        prop_assert_eq!(x.reversion().unwrap().reversion().unwrap(), x);
    }

    #[test]
    fn literal_round_trip(elements in proptest::collection::btree_set(mixed_element(), 0..6)) {
        let g = z2_z4();
        let mut elements: BTreeSet<GroupElement> = elements;
        elements.insert(g.identity());
        let elements: Vec<GroupElement> = elements.into_iter().collect();
        let text = format_set(&elements);
        prop_assert_eq!(parse_set_literal(&g, &text).unwrap(), elements);
    }

    #[test]
    fn monoid_json_round_trip(i in 0..zoo().len()) {
        let spec = &zoo()[i];
        let back = MonoidSpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &**spec);
        prop_assert_eq!(back.to_json(), spec.to_json());
    }

    #[test]
    fn membership_is_closed((spec, m) in monoid_with_members(2)) {
        let g = spec.signature();
        prop_assert!(spec.contains(&g.identity()).unwrap());
        prop_assert!(spec.contains(&g.compose(&m[0], &m[1]).unwrap()).unwrap());
    }

    #[test]
    fn reducible_witnesses_recompose((spec, m) in monoid_with_members(1)) {
        let u = &m[0];
        prop_assume!(!spec.units(Window::new(3)).contains(u));
        if let Irreducibility::Reducible { left, right } = is_irreducible(&spec, u, Window::new(3)).unwrap() {
            prop_assert!(is_factorization(&spec, u, &left, &right), "{} = {} + {}", u, left, right);
        }
    }

    #[test]
    fn independence_is_symmetric(a in mixed_element(), b in mixed_element(), k in -3i64..=3) {
        let g = z2_z4();
        prop_assert_eq!(is_independent(&g, &a, &b).unwrap(), is_independent(&g, &b, &a).unwrap());
        prop_assert!(!is_independent(&g, &a, &g.scale(&a, k)).unwrap());
    }
}
