//! Suite bodies, one per law.

use crate::ambient::{GroupElement, Subgroup};
use crate::iso::Reversal;
use crate::powmon::{format_set, FinSubset1};
use crate::structure::{decompose, has_finite_order, is_independent, pseudo_unit, PseudoUnitStatus};

use super::Run;

type Body = fn(&mut Run);

pub(super) fn lookup(name: &str) -> Option<Body> {
    let body: Body = match name {
        "two_sets" => two_sets,
        "pullback_powers" => pullback_powers,
        "pullback_inverse" => pullback_inverse,
        "cardinality" => cardinality,
        "quotients" => quotients,
        "core" => core,
        "relation" => relation,
        "torsion_nontorsion" => torsion_nontorsion,
        "independent" => independent,
        "powers_independent" => powers_independent,
        "units_not_reversed" => units_not_reversed,
        "onereversed" => onereversed,
        "nothing_reversed" => nothing_reversed,
        "nonreduced_positive" => nonreduced_positive,
        "pseudo" => pseudo,
        "split_monoids" => split_monoids,
        "decomposition" => decomposition,
        "homomorphism" => homomorphism,
        "uniqueness" => uniqueness,
        _ => return None,
    };
    Some(body)
}

fn w(name: &str, value: impl ToString) -> (&str, String) {
    (name, value.to_string())
}

fn infinite_element(run: &mut Run) -> Option<GroupElement> {
    (0..64).map(|_| run.element()).find(|u| !has_finite_order(u))
}

/// `g(a)`, `g(b)` and `g(a + b)`.
fn pullback_triple(run: &mut Run, a: &GroupElement, b: &GroupElement) -> Option<[GroupElement; 3]> {
    let sig = run.f.signature().clone();
    let witness = || vec![w("a", a), w("b", b)];
    let x = run.ok(run.f.pullback(a), witness())?;
    let y = run.ok(run.f.pullback(b), witness())?;
    let z = run.ok(run.f.pullback(&sig.add(a, b)), witness())?;
    Some([x, y, z])
}

fn two_sets(run: &mut Run) {
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let pair = FinSubset1::from_members(run.f.domain().clone(), [run.f.signature().identity(), a.clone()]);
        run.case(true);
        if let Some(image) = run.ok(run.f.apply(&pair), vec![w("a", &a)]) {
            if image.len() != 2 {
                run.report.fail("image of a 2-element set is not a 2-element set", vec![w("a", &a), w("f({1,a})", &image)]);
            }
        }
    }
}

fn pullback_powers(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        run.case(true);
        let Some(x) = run.ok(run.f.pullback(&a), vec![w("a", &a)]) else { continue };
        for n in 0..=10i64 {
            let an = sig.scale(&a, n);
            let Some(g) = run.ok(run.f.pullback(&an), vec![w("a", &a), w("n", n)]) else { break };
            let expected = sig.scale(&x, n);
            if g != expected {
                run.report.fail(
                    "g(a^n) != g(a)^n",
                    vec![w("a", &a), w("n", n), w("g(a^n)", &g), w("g(a)^n", &expected)],
                );
                break;
            }
        }
    }
}

fn pullback_inverse(run: &mut Run) {
    let sig = run.f.signature().clone();
    let units: Vec<GroupElement> =
        run.f.domain().units(run.cfg.window()).into_iter().filter(|u| !u.is_identity()).collect();
    if units.is_empty() {
        run.note("H has no nontrivial units in the window");
        return;
    }
    for _ in 0..run.cfg.sample_count {
        let a = run.pick(&units).clone();
        let inv = sig.inverse(&a);
        run.case(true);
        let witness = vec![w("a", &a)];
        let (Some(x), Some(y)) = (run.ok(run.f.pullback(&a), witness.clone()), run.ok(run.f.pullback(&inv), witness))
        else {
            continue;
        };
        if y != sig.inverse(&x) || !run.f.codomain().is_unit(&x) {
            run.report.fail("g(a^-1) != g(a)^-1", vec![w("a", &a), w("g(a)", &x), w("g(a^-1)", &y)]);
        }
    }
}

fn cardinality(run: &mut Run) {
    for _ in 0..run.cfg.sample_count {
        let x = run.set();
        run.case(x.len() > 1);
        if let Some(image) = run.ok(run.f.apply(&x), vec![w("X", &x)]) {
            if image.len() != x.len() {
                run.report.fail("|f(X)| != |X|", vec![w("X", &x), w("f(X)", &image)]);
            }
        }
    }
}

fn homomorphism(run: &mut Run) {
    for _ in 0..run.cfg.sample_count {
        let x = run.set();
        let y = run.set();
        run.case(x.len() > 1 && y.len() > 1);
        let witness = vec![w("X", &x), w("Y", &y)];
        let xy = x.product_unchecked(&y);
        let (Some(fxy), Some(fx), Some(fy)) = (
            run.ok(run.f.apply(&xy), witness.clone()),
            run.ok(run.f.apply(&x), witness.clone()),
            run.ok(run.f.apply(&y), witness.clone()),
        ) else {
            continue;
        };
        let product = fx.product_unchecked(&fy);
        if fxy != product {
            let mut witness = witness;
            witness.extend([w("f(XY)", &fxy), w("f(X)f(Y)", &product)]);
            run.report.fail("f(XY) != f(X)f(Y)", witness);
        }
    }
}

fn quotients(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let x = run.set();
        let report = x.quotients();
        let a = if !report.entries.is_empty() && run.rng_bool() {
            let keys: Vec<GroupElement> = report.entries.keys().cloned().collect();
            run.pick(&keys).clone()
        } else {
            run.element()
        };
        let n = x.multiplicity(&a);
        run.case(n > 0);
        let pair = FinSubset1::from_members(x.monoid().clone(), [sig.identity(), a.clone()]);
        if pair.product_unchecked(&x).len() != 2 * x.len() - n {
            run.report.fail("multiplicity disagrees with |{1,a}X| = 2|X| - n", vec![w("X", &x), w("a", &a)]);
        }
        let witness = vec![w("X", &x), w("a", &a)];
        let (Some(fx), Some(ga)) = (run.ok(run.f.apply(&x), witness.clone()), run.ok(run.f.pullback(&a), witness))
        else {
            continue;
        };
        let m = fx.multiplicity(&ga);
        if m != n {
            run.report.fail(
                "quotient multiplicity not preserved",
                vec![w("X", &x), w("a", &a), w("n", n), w("g(a)", &ga), w("m", m)],
            );
        }
        // the whole quotient table transports along g
        let mut mapped = Vec::new();
        for (q, k) in &report.entries {
            match run.f.pullback(q) {
                Ok(gq) => mapped.push((gq, *k)),
                Err(e) => {
                    run.report.fail(e.to_string(), vec![w("X", &x), w("q", q)]);
                    continue;
                }
            }
        }
        mapped.sort();
        let image: Vec<(GroupElement, usize)> = fx.quotients().entries.into_iter().collect();
        if mapped != image {
            run.report.fail("quotient table of f(X) is not the image of the table of X", vec![w("X", &x)]);
        }
    }
}

fn core(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let Some(a) = infinite_element(run) else {
            run.case(false);
            continue;
        };
        let b = run.element();
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        let product = sig.add(&x, &y);
        let order_two = has_finite_order(&b) && sig.scale(&b, 2).is_identity();
        if order_two {
            run.case(true);
            if z != product {
                run.report.fail("g(ab) != g(a)g(b) with ord(b) = 2", vec![w("a", &a), w("b", &b)]);
            }
        } else if z != product {
            run.case(true);
            if z != sig.sub(&x, &y) && z != sig.sub(&y, &x) {
                run.report.fail(
                    "g(ab) outside {g(a)g(b)^-1, g(b)g(a)^-1}",
                    vec![w("a", &a), w("b", &b), w("g(ab)", &z), w("g(a)", &x), w("g(b)", &y)],
                );
            }
        } else {
            run.case(false);
        }
    }
}

fn relation(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let Some(c) = infinite_element(run) else {
            run.case(false);
            continue;
        };
        let p: i64 = run.rng_range(1, 3);
        let q: i64 = run.rng_range(1, 3);
        // a^q = b^p
        let (a, b) = (sig.scale(&c, p), sig.scale(&c, q));
        run.case(true);
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        if z != sig.add(&x, &y) {
            run.report.fail("g(ab) != g(a)g(b) for related a, b", vec![w("a", &a), w("b", &b), w("g(ab)", &z)]);
        }
    }
}

fn torsion_nontorsion(run: &mut Run) {
    let sig = run.f.signature().clone();
    let torsion: Vec<GroupElement> = run.elements.iter().filter(|u| has_finite_order(u)).cloned().collect();
    if torsion.is_empty() {
        run.note("H has no nontrivial elements of finite order in the window");
        return;
    }
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let b = run.pick(&torsion).clone();
        run.case(true);
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        if z != sig.add(&x, &y) {
            run.report.fail("g(ab) != g(a)g(b) with b of finite order", vec![w("a", &a), w("b", &b)]);
        }
    }
}

fn independent(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let b = run.element();
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        if z == sig.add(&x, &y) {
            run.case(false);
            continue;
        }
        run.case(true);
        if !is_independent(&sig, &a, &b).expect("same signature") {
            run.report.fail("g(ab) != g(a)g(b) for dependent a, b", vec![w("a", &a), w("b", &b)]);
        }
    }
}

fn powers_independent(run: &mut Run) {
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let b = run.element();
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        if z == sig.add(&x, &y) {
            run.case(false);
            continue;
        }
        run.case(true);
        for n in 1..=3i64 {
            for m in 1..=3i64 {
                let u = sig.add(&sig.scale(&a, n), &sig.scale(&b, m));
                let Some(gu) = run.ok(run.f.pullback(&u), vec![w("a", &a), w("b", &b)]) else { continue };
                if gu == sig.add(&sig.scale(&x, n), &sig.scale(&y, m)) {
                    run.report.fail(
                        "g(a^n b^m) = g(a)^n g(b)^m although g(ab) != g(a)g(b)",
                        vec![w("a", &a), w("b", &b), w("n", n), w("m", m)],
                    );
                }
            }
        }
    }
}

fn nontrivial_units(run: &Run) -> Vec<GroupElement> {
    run.f.domain().units(run.cfg.window()).into_iter().filter(|u| !u.is_identity()).collect()
}

fn units_not_reversed(run: &mut Run) {
    let units: Vec<GroupElement> = nontrivial_units(run).into_iter().filter(|u| !has_finite_order(u)).collect();
    if units.is_empty() {
        run.note("H has no nontrivial units of infinite order in the window");
        return;
    }
    for _ in 0..run.cfg.sample_count {
        let a = run.pick(&units).clone();
        run.case(true);
        if run.ok(run.f.classify_reversed(&a), vec![w("a", &a)]) == Some(Reversal::Reversed) {
            run.report.fail("nontrivial unit is reversed", vec![w("a", &a)]);
        }
    }
}

fn nothing_reversed(run: &mut Run) {
    if nontrivial_units(run).is_empty() {
        run.note("H is reduced, so the hypothesis never holds");
        return;
    }
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        run.case(true);
        if run.ok(run.f.reversal(&a), vec![w("a", &a)]) == Some(Reversal::Reversed) {
            run.report.fail("element reversed although H has nontrivial units", vec![w("a", &a)]);
        }
    }
}

fn nonreduced_positive(run: &mut Run) {
    let window = run.cfg.window();
    let k_units = run.f.codomain().units(window).into_iter().any(|u| !u.is_identity());
    if nontrivial_units(run).is_empty() && !k_units {
        run.note("H and K are reduced, so the hypothesis never holds");
        return;
    }
    let sig = run.f.signature().clone();
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let b = run.element();
        run.case(true);
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        if z != sig.add(&x, &y) {
            run.report.fail("pullback is not a homomorphism although units exist", vec![w("a", &a), w("b", &b)]);
        }
    }
}

fn onereversed(run: &mut Run) {
    let sig = run.f.signature().clone();
    let (mut seen_reversed, mut seen_plain) = (false, false);
    for _ in 0..run.cfg.sample_count {
        let pair = (0..64).find_map(|_| {
            let a = run.element();
            let b = run.element();
            let ok = !has_finite_order(&a) && !has_finite_order(&b) && is_independent(&sig, &a, &b).unwrap_or(false);
            ok.then_some((a, b))
        });
        let Some((a, b)) = pair else {
            run.case(false);
            continue;
        };
        run.case(true);
        let witness = vec![w("a", &a), w("b", &b)];
        let (Some(ra), Some(rb)) =
            (run.ok(run.f.classify_reversed(&a), witness.clone()), run.ok(run.f.classify_reversed(&b), witness))
        else {
            continue;
        };
        for r in [ra, rb] {
            match r {
                Reversal::Reversed => seen_reversed = true,
                Reversal::NotReversed => seen_plain = true,
            }
        }
        let Some([x, y, z]) = pullback_triple(run, &a, &b) else { continue };
        let unequal = z != sig.add(&x, &y);
        if unequal != (ra != rb) {
            run.report.fail(
                "g(ab) != g(a)g(b) does not match 'exactly one reversed'",
                vec![w("a", &a), w("b", &b), w("a reversed", format!("{ra:?}")), w("b reversed", format!("{rb:?}"))],
            );
        } else if unequal && z != sig.sub(&x, &y) && z != sig.sub(&y, &x) {
            run.report.fail("g(ab) outside {g(a)g(b)^-1, g(b)g(a)^-1}", vec![w("a", &a), w("b", &b), w("g(ab)", &z)]);
        }
    }
    if !(seen_reversed && seen_plain) {
        run.coverage_met = false;
        run.note(format!("classes seen: reversed = {seen_reversed}, not reversed = {seen_plain}"));
    }
}

fn split_monoids(run: &mut Run) {
    let sig = run.f.signature().clone();
    let window = run.cfg.window();
    for _ in 0..run.cfg.sample_count {
        let a = run.element();
        let b = run.element();
        let witness = vec![w("a", &a), w("b", &b)];
        let (Some(ra), Some(rb)) = (run.ok(run.f.reversal(&a), witness.clone()), run.ok(run.f.reversal(&b), witness))
        else {
            continue;
        };
        run.case(true);
        let ab = sig.add(&a, &b);
        if !ab.is_identity() && ra == rb {
            if let Some(rab) = run.ok(run.f.reversal(&ab), vec![w("a", &a), w("b", &b)]) {
                if rab != ra {
                    run.report.fail(
                        "H_R or H_N not closed under products",
                        vec![w("a", &a), w("b", &b), w("class", format!("{ra:?}"))],
                    );
                }
            }
        }
        if ra == Reversal::Reversed {
            match pseudo_unit(run.f.domain(), &a, window).map(|v| v.status) {
                Ok(PseudoUnitStatus::NotPseudoUnit(c)) => {
                    run.report.fail("reversed element is not a pseudo-unit", vec![w("a", &a), w("witness", &c)])
                }
                Ok(_) => {}
                Err(e) => run.report.fail(e.to_string(), vec![w("a", &a)]),
            }
        }
    }
}

fn decomposition(run: &mut Run) {
    let sig = run.f.signature().clone();
    let codomain = run.f.codomain().clone();
    for _ in 0..run.cfg.sample_count {
        let pick = |run: &mut Run| {
            let a = run.element();
            match run.f.reversal(&a) {
                Ok(Reversal::Reversed) => Some(sig.inverse(&a)),
                Ok(Reversal::NotReversed) => Some(a),
                Err(e) => {
                    run.report.fail(e.to_string(), vec![w("a", &a)]);
                    None
                }
            }
        };
        let (Some(u), Some(v)) = (pick(run), pick(run)) else { continue };
        run.case(true);
        let uv = sig.add(&u, &v);
        let witness = || vec![w("u", &u), w("v", &v)];
        let (Some(hu), Some(hv), Some(huv)) = (
            run.ok(run.f.decomposition_map(&u), witness()),
            run.ok(run.f.decomposition_map(&v), witness()),
            run.ok(run.f.decomposition_map(&uv), witness()),
        ) else {
            continue;
        };
        if huv != sig.add(&hu, &hv) {
            run.report.fail("h(uv) != h(u)h(v)", vec![w("u", &u), w("v", &v), w("h(uv)", &huv)]);
        }
        if !codomain.holds(&hu) {
            run.report.fail("h(u) not in K", vec![w("u", &u), w("h(u)", &hu)]);
        }
    }
}

fn pseudo(run: &mut Run) {
    let sig = run.f.signature().clone();
    let window = run.cfg.window();
    let h = run.f.domain().clone();
    let report = decompose(&h, window);
    let (hv, hvc) = (report.pseudo_units, report.complement);
    let qhv = Subgroup::generated_by(&sig, &hv);
    let q_points: Vec<GroupElement> = window.all_points(&sig).into_iter().filter(|u| qhv.contains(u)).collect();
    if !report.undecided.is_empty() {
        run.note(format!("{} window elements undecided", report.undecided.len()));
    }
    let status = |run: &mut Run, u: &GroupElement| -> Option<PseudoUnitStatus> {
        match pseudo_unit(&h, u, window) {
            Ok(v) => Some(v.status),
            Err(e) => {
                run.report.fail(e.to_string(), vec![w("u", u)]);
                None
            }
        }
    };
    for i in 0..run.cfg.sample_count {
        match i % 3 {
            0 if !hvc.is_empty() => {
                let a = run.pick(&hvc).clone();
                let b = run.pick(&hvc).clone();
                let ab = sig.add(&a, &b);
                match status(run, &ab) {
                    Some(PseudoUnitStatus::NotPseudoUnit(_)) => run.case(true),
                    Some(PseudoUnitStatus::UnknownUpToWindow) => run.case(false),
                    Some(PseudoUnitStatus::PseudoUnitAnalytic) => {
                        run.case(true);
                        run.report.fail("H_v^c is not closed under products", vec![w("a", &a), w("b", &b)]);
                    }
                    None => run.case(true),
                }
            }
            1 if !hvc.is_empty() => {
                let a = run.pick(&hvc).clone();
                let q = run.pick(&q_points).clone();
                let aq = sig.add(&a, &q);
                match status(run, &aq) {
                    Some(PseudoUnitStatus::NotPseudoUnit(_)) => run.case(true),
                    Some(PseudoUnitStatus::UnknownUpToWindow) => run.case(false),
                    Some(PseudoUnitStatus::PseudoUnitAnalytic) => {
                        run.case(true);
                        run.report.fail("H_v^c q(H_v) leaves H_v^c", vec![w("a", &a), w("q", &q)]);
                    }
                    None => run.case(true),
                }
            }
            2 => {
                let a = run.pick(&hv).clone();
                let b = run.pick(&hv).clone();
                let d = sig.sub(&a, &b);
                let in_hv = |run: &mut Run, u: &GroupElement| {
                    h.holds(u) && matches!(status(run, u), Some(PseudoUnitStatus::PseudoUnitAnalytic))
                };
                run.case(!d.is_identity());
                if !in_hv(run, &d) && !in_hv(run, &sig.inverse(&d)) {
                    run.report.fail("H_v is not a valuation monoid", vec![w("a", &a), w("b", &b)]);
                }
            }
            _ => run.case(false),
        }
    }
}

fn uniqueness(run: &mut Run) {
    let sig = run.f.signature().clone();
    let codomain = run.f.codomain().clone();
    for _ in 0..run.cfg.sample_count {
        let x = run.set();
        run.case(x.len() > 1);
        let Some(used) = run.ok(run.f.translation(&x), vec![w("X", &x)]) else { continue };
        let valid: Vec<GroupElement> = x
            .elements()
            .iter()
            .map(|u| sig.inverse(u))
            .filter(|a| x.translate(a).iter().all(|v| codomain.holds(v)))
            .collect();
        if valid != [used.clone()] {
            run.report.fail(
                "translation into P_fin,1(K) is not unique",
                vec![w("X", &x), w("used", &used), w("valid", format_set(&valid))],
            );
        }
    }
}

impl Run<'_> {
    fn rng_bool(&mut self) -> bool {
        rand::Rng::gen_bool(&mut self.rng, 0.5)
    }

    fn rng_range(&mut self, lo: i64, hi: i64) -> i64 {
        rand::Rng::gen_range(&mut self.rng, lo..=hi)
    }
}
