//! Report assembly and plain-text rendering.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::monoid::{MonoidSpec, ValuationVerdict, Window};
use crate::structure::{decompose, is_irreducible, Irreducibility};
use crate::suites::SuiteReport;

#[derive(Serialize)]
pub(super) struct IrreducibleEntry {
    element: String,
    status: &'static str,
}

#[derive(Serialize)]
pub(super) struct DecompositionSummary {
    pseudo_units: Vec<String>,
    complement_count: usize,
    undecided: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pseudo_units_equal_valuation_part: Option<bool>,
}

#[derive(Serialize)]
pub(super) struct Analysis<'a> {
    monoid: &'a MonoidSpec,
    window: Window,
    reduced: bool,
    quotient_group: String,
    valuation: ValuationVerdict,
    units: Vec<String>,
    irreducibles: Vec<IrreducibleEntry>,
    decomposition: DecompositionSummary,
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

pub(super) fn analyze(spec: &MonoidSpec, window: Window) -> Analysis<'_> {
    let elements = spec.window_elements(window);
    let units: Vec<_> = elements.iter().filter(|u| spec.is_unit(u)).cloned().collect();
    let irreducibles = elements
        .par_iter()
        .filter(|u| !spec.is_unit(u))
        .filter_map(|u| match is_irreducible(spec, u, window) {
            Ok(Irreducibility::IrreducibleAnalytic) => Some((u, "IRREDUCIBLE_ANALYTIC")),
            Ok(Irreducibility::IrreducibleUpToWindow) => Some((u, "IRREDUCIBLE_UP_TO_WINDOW")),
            _ => None,
        })
        .map(|(u, status)| IrreducibleEntry { element: u.to_string(), status })
        .collect();
    let report = decompose(spec, window);
    let equal = spec.valuation_part().map(|part| part.window_elements(window) == report.pseudo_units);
    Analysis {
        monoid: spec,
        window,
        reduced: spec.is_reduced(),
        quotient_group: spec.quotient_group().to_string(),
        valuation: spec.is_valuation(window),
        units: strings(&units),
        irreducibles,
        decomposition: DecompositionSummary {
            pseudo_units: strings(&report.pseudo_units),
            complement_count: report.complement.len(),
            undecided: strings(&report.undecided),
            pseudo_units_equal_valuation_part: equal,
        },
    }
}

/// At most `limit` items, then a count of the rest.
fn abbreviated(items: &[String], limit: usize) -> String {
    if items.len() <= limit {
        format!("{{{}}}", items.join(","))
    } else {
        format!("{{{},...}} ({} elements)", items[..limit].join(","), items.len())
    }
}

pub(super) fn analysis_human(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "monoid          {} in {}", a.monoid.label(), a.monoid.signature());
    let _ = writeln!(s, "window          {}", a.window.bound());
    let _ = writeln!(s, "reduced         {}", a.reduced);
    let _ = writeln!(s, "quotient group  {}", a.quotient_group);
    let _ = writeln!(s, "valuation       {}", a.valuation);
    let _ = writeln!(s, "units           {}", abbreviated(&a.units, 12));
    let irr: Vec<String> = a.irreducibles.iter().map(|e| format!("{} [{}]", e.element, e.status)).collect();
    let _ = writeln!(s, "irreducibles    {}", abbreviated(&irr, 12));
    let d = &a.decomposition;
    let _ = writeln!(s, "H_v             {}", abbreviated(&d.pseudo_units, 24));
    let _ = writeln!(s, "H_v^c           {} elements", d.complement_count);
    let _ = writeln!(s, "undecided       {}", abbreviated(&d.undecided, 12));
    if let Some(eq) = d.pseudo_units_equal_valuation_part {
        let _ = writeln!(s, "H_v = valuation part on window: {eq}");
    }
    s
}

pub(super) fn suites_human(reports: &[SuiteReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<20} {:<15} {:>7} {:>10} {:>8} {:>8}", "suite", "verdict", "cases", "nontrivial", "skipped", "failures");
    for r in reports {
        let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
        let _ = writeln!(
            s,
            "{:<20} {:<15} {:>7} {:>10} {:>8} {:>8}",
            r.suite,
            verdict.as_str().unwrap_or_default(),
            r.cases,
            r.nontrivial_cases,
            r.trivial_skips,
            r.failure_count
        );
    }
    for r in reports {
        for f in r.failures.iter().take(3) {
            let witness: Vec<String> = f.witness.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "  {}: {} [{}]", r.suite, f.message, witness.join(", "));
        }
        for note in &r.notes {
            let _ = writeln!(s, "  {}: {note}", r.suite);
        }
    }
    s
}

pub(super) fn example_human(r: &SuiteReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", r.scope);
    for c in &r.checks {
        let _ = writeln!(s, "{:<48} {:<5} {:>7}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.cases, c.detail);
    }
    for f in &r.failures {
        let _ = writeln!(s, "  {}", f.message);
    }
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let _ = writeln!(s, "verdict: {}", verdict.as_str().unwrap_or_default());
    s
}
