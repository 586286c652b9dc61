//! Two non-isomorphic, non-valuation monoids in `Z⁴` with isomorphic power
//! monoids: `H = H̃ ⊔ G̃·M` and `K = K̃ ⊔ G̃·M`, where `H̃` is the
//! lexicographic half-plane and `K̃` an irrational cone on the first two
//! coordinates, `G̃ = Z² × 0` and `M` is generated by `e₃` and `e₄`.

use std::sync::Arc;

use crate::ambient::{GroupElement, GroupSignature};
use crate::iso::build_translation_iso;
use crate::monoid::{ComplementSpec, MonoidError, MonoidSpec, QuadraticSurd};
use crate::structure::{decompose, is_factorization, is_irreducible, Irreducibility};

use super::{run_suite, CheckOutcome, SuiteConfig, SuiteReport};

/// `(H, K)` for the given cone slope.
pub fn rank4_pair(alpha: QuadraticSurd) -> Result<(MonoidSpec, MonoidSpec), MonoidError> {
    let sig = GroupSignature::free(4);
    let complement = ComplementSpec {
        base_subgroup: vec![sig.unit_vector(0), sig.unit_vector(1)],
        positive_generators: vec![sig.unit_vector(2), sig.unit_vector(3)],
        grading: None,
    };
    let h_tilde = MonoidSpec::half_plane_lex(sig.clone(), [0, 1])?.with_label("H~");
    let k_tilde = MonoidSpec::irrational_cone(sig, [0, 1], alpha)?.with_label("K~");
    let h = MonoidSpec::composite(h_tilde, complement.clone())?.with_label("H");
    let k = MonoidSpec::composite(k_tilde, complement)?.with_label("K");
    Ok((h, k))
}

pub fn run_example_rank4(cfg: &SuiteConfig) -> SuiteReport {
    run_example_rank4_with(cfg, QuadraticSurd::sqrt(2).expect("2 is not a square"))
}

/// The scenario with an arbitrary slope; a rational slope is a negative control.
pub fn run_example_rank4_with(cfg: &SuiteConfig, alpha: QuadraticSurd) -> SuiteReport {
    let mut report = SuiteReport::new("example_rank4", format!("H~ = half-plane, K~ = cone with slope {alpha}"));
    let (h, k) = match rank4_pair(alpha) {
        Ok(pair) => pair,
        Err(e) => {
            report.fail(format!("construction failed: {e}"), vec![]);
            report.finish(true);
            return report;
        }
    };
    let window = cfg.window();
    let checks = [
        valuation_parts(&h, &k, cfg),
        irreducible_in_h(&h, cfg),
        cone_has_no_irreducibles(&k, cfg),
    ];
    for (outcome, failures) in checks {
        record(&mut report, outcome, failures);
    }
    let h = Arc::new(h);
    let k = Arc::new(k);
    let (outcome, failures) = match build_translation_iso(h, k) {
        Ok(f) => {
            let suites: Vec<SuiteReport> =
                ["homomorphism", "uniqueness"].iter().map(|s| run_suite(s, &f, cfg).expect("known suite")).collect();
            let cases = suites.iter().map(|s| s.cases).sum();
            let bad: Vec<String> = suites
                .iter()
                .filter(|s| !s.verdict.is_success())
                .map(|s| {
                    let first = s.failures.first().map(|f| f.message.clone()).unwrap_or_default();
                    format!("suite {} {:?}: {first}", s.suite, s.verdict)
                })
                .collect();
            let detail = format!("iso certificate {:?}; homomorphism and uniqueness suites", f.certificate());
            (CheckOutcome { name: "(iv) translation isomorphism".into(), cases, passed: bad.is_empty(), detail }, bad)
        }
        Err(e) => (
            CheckOutcome {
                name: "(iv) translation isomorphism".into(),
                cases: 1,
                passed: false,
                detail: e.to_string(),
            },
            vec![e.to_string()],
        ),
    };
    record(&mut report, outcome, failures);
    report.notes.push(format!("window {}", window.bound()));
    report.finish(true);
    report
}

fn record(report: &mut SuiteReport, outcome: CheckOutcome, failures: Vec<String>) {
    report.cases += outcome.cases;
    report.nontrivial_cases += outcome.cases;
    for f in failures {
        report.fail(format!("{}: {f}", outcome.name), vec![]);
    }
    report.checks.push(outcome);
}

/// (i) `H_v = H̃` and `K_v = K̃` on the window.
fn valuation_parts(h: &MonoidSpec, k: &MonoidSpec, cfg: &SuiteConfig) -> (CheckOutcome, Vec<String>) {
    let window = cfg.window();
    let mut failures = Vec::new();
    let mut cases = 0;
    for spec in [h, k] {
        let part = spec.valuation_part().expect("composite");
        let report = decompose(spec, window);
        cases += report.verdicts.len() as u64;
        if report.pseudo_units != part.window_elements(window) {
            failures.push(format!("{}_v differs from {} on the window", spec.label(), part.label()));
        }
        if !report.undecided.is_empty() {
            failures.push(format!("{} undecided elements in {}", report.undecided.len(), spec.label()));
        }
    }
    let passed = failures.is_empty();
    let outcome = CheckOutcome {
        name: "(i) pseudo-units are the valuation parts".into(),
        cases,
        passed,
        detail: "H_v = H~ and K_v = K~ on the window".into(),
    };
    (outcome, failures)
}

/// (ii) `(1,0,0,0)` is irreducible in `H`.
fn irreducible_in_h(h: &MonoidSpec, cfg: &SuiteConfig) -> (CheckOutcome, Vec<String>) {
    let e = h.signature().unit_vector(0);
    let verdict = is_irreducible(h, &e, cfg.window());
    let passed = matches!(verdict, Ok(Irreducibility::IrreducibleAnalytic));
    let detail = match &verdict {
        Ok(v) => format!("{e}: {v:?}"),
        Err(err) => format!("{e}: {err}"),
    };
    let failures = if passed { vec![] } else { vec![detail.clone()] };
    (CheckOutcome { name: "(ii) irreducible element of H".into(), cases: 1, passed, detail }, failures)
}

/// (iii) every non-unit of `K̃ ∩ window` factors in `K`.
fn cone_has_no_irreducibles(k: &MonoidSpec, cfg: &SuiteConfig) -> (CheckOutcome, Vec<String>) {
    let window = cfg.window();
    let part = k.valuation_part().expect("composite");
    let targets: Vec<GroupElement> = part.window_elements(window).into_iter().filter(|u| !k.is_unit(u)).collect();
    let mut failures = Vec::new();
    for u in &targets {
        match is_irreducible(k, u, window) {
            Ok(Irreducibility::Reducible { left, right }) if is_factorization(k, u, &left, &right) => {}
            Ok(v) => failures.push(format!("{u}: {v:?}")),
            Err(e) => failures.push(format!("{u}: {e}")),
        }
    }
    let outcome = CheckOutcome {
        name: "(iii) no irreducibles in K~".into(),
        cases: targets.len() as u64,
        passed: failures.is_empty(),
        detail: format!("{} non-units of K~ in the window, each with a checked factorization", targets.len()),
    };
    (outcome, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::Verdict;

    #[test]
    fn small_window_passes() {
        let cfg = SuiteConfig { window_bound: 2, sample_count: 50, ..SuiteConfig::default() };
        let report = run_example_rank4(&cfg);
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn rational_slope_fails() {
        let cfg = SuiteConfig { window_bound: 2, sample_count: 50, ..SuiteConfig::default() };
        let alpha = QuadraticSurd::new_unchecked(3.into(), 0.into(), 2.into(), 2.into());
        let report = run_example_rank4_with(&cfg, alpha);
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(!report.checks[3].passed);
    }
}
