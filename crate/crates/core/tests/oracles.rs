//! Brute-force oracles for the exact algorithms.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use powmon::monoid::{MonoidSpec, QuadraticSurd, Window};
use powmon::powmon::{Divisibility, FinSubset1};
use powmon::structure::{decompose, is_pseudo_unit_witness, pseudo_unit, PseudoUnitStatus};
use powmon::{GroupElement, GroupSignature};

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn n(v: i64) -> GroupElement {
    GroupElement::from_free(&[v])
}

#[test]
fn relation_lattice_matches_scan() {
    let sig = GroupSignature::new(2, vec![int(4), int(6)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random = |rng: &mut ChaCha8Rng| {
        let free = if rng.gen_bool(0.3) { [0, 0] } else { [rng.gen_range(-3..=3), rng.gen_range(-3..=3)] };
        sig.element(vec![int(free[0]), int(free[1])], vec![int(rng.gen_range(0..4)), int(rng.gen_range(0..6))])
            .unwrap()
    };
    for _ in 0..200 {
        let a = random(&mut rng);
        let b = if rng.gen_bool(0.3) { sig.scale(&a, rng.gen_range(-3..=3)) } else { random(&mut rng) };
        let lattice = sig.solve_relations(&a, &b).unwrap();
        for (p, q) in lattice.generators() {
            let sum = sig.compose(&sig.scale(&a, p.clone()), &sig.scale(&b, q.clone())).unwrap();
            assert!(sum.is_identity(), "generator ({p},{q}) is not a relation of {a}, {b}");
        }
        let mut any = false;
        for p in -10i64..=10 {
            for q in -10i64..=10 {
                let holds = sig.compose(&sig.scale(&a, p), &sig.scale(&b, q)).unwrap().is_identity();
                assert_eq!(lattice.contains(&int(p), &int(q)), holds, "({p},{q}) for {a}, {b}");
                any |= holds && (p, q) != (0, 0);
            }
        }
        if lattice.is_trivial() {
            assert!(!any);
        }
    }
}

/// Sign of `(p + q√n)/r · x` against `y` by rational bounds on `√n`, when they decide it.
fn sandwich_sign(alpha: (i64, i64, i64, i64), x: i64, y: i64) -> Option<Ordering> {
    let (p, q, r, n) = alpha;
    let scale = BigInt::from(10u64).pow(12);
    let s = (BigInt::from(n) * &scale * &scale).sqrt();
    // r·(y − αx) = a − b·√n
    let a = int(r) * int(y) - int(p) * int(x);
    let b = int(q) * int(x);
    let (lo, hi) = if b.is_negative() {
        (&a * &scale - &b * &s, &a * &scale - &b * (&s + 1))
    } else {
        (&a * &scale - &b * (&s + 1), &a * &scale - &b * &s)
    };
    let sign = if lo.is_positive() {
        Ordering::Greater
    } else if hi.is_negative() {
        Ordering::Less
    } else if b.is_zero() && a.is_zero() {
        Ordering::Equal
    } else {
        return None;
    };
    Some(if r < 0 { sign.reverse() } else { sign })
}

#[test]
fn surd_sign_matches_rational_bounds() {
    let alphas = [(0, 1, 1, 2), (1, 1, 2, 5), (-3, 2, 7, 3), (2, -1, 3, 11)];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut decided = 0;
    for alpha in alphas {
        let surd = QuadraticSurd::new(int(alpha.0), int(alpha.1), int(alpha.2), int(alpha.3)).unwrap();
        for _ in 0..2500 {
            let x = rng.gen_range(-1000..=1000);
            let y = rng.gen_range(-3000..=3000);
            if let Some(expected) = sandwich_sign(alpha, x, y) {
                decided += 1;
                assert_eq!(surd.sign_of_offset(&int(x), &int(y)), expected, "alpha {alpha:?} at ({x},{y})");
            }
        }
    }
    assert!(decided > 9900, "only {decided} points decided");
}

#[test]
fn surd_sign_near_the_line() {
    // convergents of √2 approach the line from both sides
    let surd = QuadraticSurd::sqrt(2).unwrap();
    let (mut x, mut y) = (1i64, 1i64);
    for _ in 0..20 {
        let expected = (y * y).cmp(&(2 * x * x));
        assert_eq!(surd.sign_of_offset(&int(x), &int(y)), expected);
        (x, y) = (x + y, 2 * x + y);
    }
}

/// Members of the numerical monoid up to `limit` by dynamic programming.
fn numerical_members(generators: &[u64], limit: usize) -> Vec<bool> {
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for k in 1..=limit {
        member[k] = generators.iter().any(|&g| g as usize <= k && member[k - g as usize]);
    }
    member
}

#[test]
fn numerical_membership_and_frobenius() {
    let cases: [&[u64]; 7] = [&[2, 3], &[3, 5], &[3, 4, 5], &[5, 7, 11], &[6, 9, 20], &[4, 6], &[10, 15, 35]];
    for generators in cases {
        let spec = MonoidSpec::numerical(generators).unwrap();
        let limit = 400;
        let member = numerical_members(generators, limit);
        for (k, &m) in member.iter().enumerate() {
            assert_eq!(spec.contains(&n(k as i64)).unwrap(), m, "{k} in {generators:?}");
            assert!(!spec.contains(&n(-(k as i64) - 1)).unwrap());
        }
        let g = generators.iter().copied().fold(0, num_integer::gcd) as usize;
        let frobenius = (0..=limit / g).rev().find(|&k| !member[k * g]).map(|k| k as i64).unwrap();
        assert_eq!(spec.frobenius(), Some(frobenius), "{generators:?}");
    }
}

fn subsets_with_zero(max: i64) -> Vec<Vec<i64>> {
    (0u32..1 << max).map(|mask| std::iter::once(0).chain((1..=max).filter(|i| mask >> (i - 1) & 1 == 1)).collect()).collect()
}

fn set(m: &Arc<MonoidSpec>, xs: &[i64]) -> FinSubset1 {
    FinSubset1::new(m.clone(), xs.iter().map(|&v| n(v))).unwrap()
}

fn sumset(x: &[i64], z: &[i64]) -> BTreeSet<i64> {
    x.iter().flat_map(|a| z.iter().map(move |b| a + b)).collect()
}

#[test]
fn divisibility_matches_subset_search() {
    let m = Arc::new(MonoidSpec::full_n0());
    let all = subsets_with_zero(5);
    for xs in &all {
        for ys in &all {
            let y_set: BTreeSet<i64> = ys.iter().copied().collect();
            let y_rest: Vec<i64> = ys[1..].to_vec();
            let factors: Vec<Vec<i64>> = (0u32..1 << y_rest.len())
                .map(|mask| {
                    std::iter::once(0)
                        .chain(y_rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v))
                        .collect()
                })
                .filter(|z: &Vec<i64>| sumset(xs, z) == y_set)
                .collect();
            let got = set(&m, xs).divides(&set(&m, ys), 16).unwrap();
            match got {
                Divisibility::Yes(z) => {
                    let z: Vec<i64> = z.elements().iter().map(|e| i64::try_from(&e.free()[0]).unwrap()).collect();
                    assert_eq!(sumset(xs, &z), y_set, "{xs:?} | {ys:?} via {z:?}");
                    for f in &factors {
                        assert!(f.iter().all(|v| z.contains(v)), "{f:?} is not inside the maximal {z:?}");
                    }
                }
                Divisibility::No => assert!(factors.is_empty(), "{xs:?} | {ys:?} via {:?}", factors[0]),
            }
        }
    }
}

#[test]
fn numerical_pseudo_units_match_brute_force() {
    for generators in [&[2u64, 3][..], &[3, 5], &[3, 4, 5], &[4, 6, 9], &[2, 4], &[1]] {
        let spec = MonoidSpec::numerical(generators).unwrap();
        let report = decompose(&spec, Window::new(20));
        assert!(report.undecided.is_empty());
        for verdict in &report.verdicts {
            let a = &verdict.element;
            let brute = (0..=40).map(n).find(|b| is_pseudo_unit_witness(&spec, a, b));
            match &verdict.status {
                PseudoUnitStatus::PseudoUnitAnalytic => assert!(brute.is_none(), "{a} in {generators:?}"),
                PseudoUnitStatus::NotPseudoUnit(b) => {
                    assert!(is_pseudo_unit_witness(&spec, a, b));
                    assert!(brute.is_some(), "{a} in {generators:?}");
                }
                PseudoUnitStatus::UnknownUpToWindow => unreachable!(),
            }
        }
    }
}

#[test]
fn numerical_pseudo_units_beyond_window() {
    let spec = MonoidSpec::numerical(&[5, 7]).unwrap();
    for a in [5, 7, 10, 12, 24, 100] {
        let verdict = pseudo_unit(&spec, &n(a), Window::new(2)).unwrap();
        match verdict.status {
            PseudoUnitStatus::NotPseudoUnit(b) => assert!(is_pseudo_unit_witness(&spec, &n(a), &b)),
            other => panic!("{a}: {other:?}"),
        }
    }
}

#[test]
fn free_generated_membership_matches_enumeration() {
    let z2 = GroupSignature::free(2);
    let gens = vec![GroupElement::from_free(&[2, 1]), GroupElement::from_free(&[1, 2]), GroupElement::from_free(&[1, -1])];
    let spec = MonoidSpec::free_generated(z2.clone(), gens.clone(), Some(vec![int(2), int(1)])).unwrap();
    let mut reachable = BTreeSet::new();
    for a in 0..=12i64 {
        for b in 0..=12i64 {
            for c in 0..=30i64 {
                reachable.insert((2 * a + b + c, a + 2 * b - c));
            }
        }
    }
    for x in -6..=6i64 {
        for y in -6..=6i64 {
            let u = GroupElement::from_free(&[x, y]);
            assert_eq!(spec.contains(&u).unwrap(), reachable.contains(&(x, y)), "({x},{y})");
        }
    }

    // Z ⊕ Z/3 with generators (1;0) and (1;1)
    let sig = GroupSignature::new(1, vec![int(3)]).unwrap();
    let gens = vec![sig.element_from_i64(&[1, 0]).unwrap(), sig.element_from_i64(&[1, 1]).unwrap()];
    let spec = MonoidSpec::free_generated(sig.clone(), gens, None).unwrap();
    for k in -5..=5i64 {
        for t in 0..3 {
            let u = sig.element_from_i64(&[k, t]).unwrap();
            // k generators reach torsion 0..=k
            let expected = k >= 0 && t <= k;
            assert_eq!(spec.contains(&u).unwrap(), expected, "({k};{t})");
        }
    }
}
