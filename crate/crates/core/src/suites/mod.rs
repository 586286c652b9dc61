//! Seeded property suites for constructed power-monoid isomorphisms.
//!
//! Each suite samples elements and sets from `H ∩ window`, evaluates one
//! structural law of `f` and its pullback `g`, and aggregates the outcome
//! into a [`SuiteReport`]. The sampling stream of a suite depends only on
//! the configured seed and the suite name.

mod checks;
mod example;

use std::collections::BTreeMap;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ambient::GroupElement;
use crate::iso::{Applicability, IsoError, TranslationIso};
use crate::monoid::Window;
use crate::powmon::FinSubset1;

pub use example::{rank4_pair, run_example_rank4, run_example_rank4_with};

/// Default sampling seed.
pub const DEFAULT_SEED: u64 = 1_347_440_721;
/// Failures kept in a report; the total is still counted.
const MAX_RECORDED_FAILURES: usize = 20;

/// Every suite, in canonical order.
pub const SUITE_NAMES: &[&str] = &[
    "two_sets",
    "pullback_powers",
    "pullback_inverse",
    "cardinality",
    "quotients",
    "core",
    "relation",
    "torsion_nontorsion",
    "independent",
    "powers_independent",
    "units_not_reversed",
    "onereversed",
    "nothing_reversed",
    "nonreduced_positive",
    "pseudo",
    "split_monoids",
    "decomposition",
    "homomorphism",
    "uniqueness",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub window_bound: u64,
    pub sample_count: usize,
    pub max_set_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: DEFAULT_SEED, window_bound: 8, sample_count: 1000, max_set_size: 6 }
    }
}

impl SuiteConfig {
    pub fn window(&self) -> Window {
        Window::new(self.window_bound)
    }

    fn rng_for(&self, suite: &str) -> ChaCha8Rng {
        // FNV-1a of the name keeps streams independent of execution order
        let hash = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ hash)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// No failures, but required coverage was not reached.
    Inconclusive,
    /// The hypotheses never hold for this pair.
    NotApplicable,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::NotApplicable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub message: String,
    pub witness: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scope: String,
    pub cases: u64,
    pub nontrivial_cases: u64,
    pub trivial_skips: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn new(suite: &str, scope: String) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            scope,
            cases: 0,
            nontrivial_cases: 0,
            trivial_skips: 0,
            failure_count: 0,
            failures: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, message: impl Into<String>, witness: Vec<(&str, String)>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure {
                message: message.into(),
                witness: witness.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            });
        }
    }

    fn finish(&mut self, coverage_met: bool) {
        self.verdict = if self.failure_count > 0 {
            Verdict::Fail
        } else if self.nontrivial_cases == 0 {
            Verdict::NotApplicable
        } else if !coverage_met {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'; known suites: {}", SUITE_NAMES.join(", "))]
    UnknownSuite(String),
}

/// State of one suite run: the isomorphism, its sampling stream and the report.
pub(crate) struct Run<'a> {
    pub f: &'a TranslationIso,
    pub cfg: &'a SuiteConfig,
    /// Non-identity elements of `H ∩ window`.
    pub elements: &'a [GroupElement],
    pub rng: ChaCha8Rng,
    pub report: SuiteReport,
    /// Set to false by suites whose coverage requirement was missed.
    pub coverage_met: bool,
}

impl Run<'_> {
    pub fn case(&mut self, nontrivial: bool) {
        self.report.cases += 1;
        if nontrivial {
            self.report.nontrivial_cases += 1;
        } else {
            self.report.trivial_skips += 1;
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub fn element(&mut self) -> GroupElement {
        self.elements[self.rng.gen_range(0..self.elements.len())].clone()
    }

    pub fn pick<'b>(&mut self, from: &'b [GroupElement]) -> &'b GroupElement {
        &from[self.rng.gen_range(0..from.len())]
    }

    /// `{1}` together with up to `max_set_size − 1` distinct window elements.
    pub fn set(&mut self) -> FinSubset1 {
        let max = self.cfg.max_set_size.saturating_sub(1).min(self.elements.len());
        let k = self.rng.gen_range(0..=max);
        let picks = index::sample(&mut self.rng, self.elements.len(), k);
        let sig = self.f.signature();
        let members = picks.iter().map(|i| self.elements[i].clone()).chain([sig.identity()]);
        FinSubset1::from_members(self.f.domain().clone(), members)
    }

    /// Records an unexpected error as a failure.
    pub fn ok<T>(&mut self, result: Result<T, IsoError>, witness: Vec<(&str, String)>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.report.fail(e.to_string(), witness);
                None
            }
        }
    }
}

fn scope(f: &TranslationIso) -> String {
    match f.certificate() {
        Applicability::Identical => format!("identity isomorphism of {} (constructed isomorphisms only)", f.domain()),
        _ => format!(
            "translation isomorphism {} -> {} (constructed isomorphisms only)",
            f.domain(),
            f.codomain()
        ),
    }
}

/// Non-identity elements of `H ∩ window`.
pub(crate) fn sample_space(f: &TranslationIso, window: Window) -> Vec<GroupElement> {
    f.domain().window_elements(window).into_iter().filter(|u| !u.is_identity()).collect()
}

pub fn run_suite(name: &str, f: &TranslationIso, cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let elements = sample_space(f, cfg.window());
    run_with_space(name, f, cfg, &elements)
}

fn run_with_space(
    name: &str,
    f: &TranslationIso,
    cfg: &SuiteConfig,
    elements: &[GroupElement],
) -> Result<SuiteReport, SuiteError> {
    let body = checks::lookup(name).ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    let mut run = Run {
        f,
        cfg,
        elements,
        rng: cfg.rng_for(name),
        report: SuiteReport::new(name, scope(f)),
        coverage_met: true,
    };
    if elements.is_empty() {
        run.note("H ∩ window has no non-identity elements");
    } else {
        body(&mut run);
    }
    let coverage_met = run.coverage_met;
    let mut report = run.report;
    report.finish(coverage_met);
    Ok(report)
}

/// Runs several suites concurrently; reports keep the order of `names`.
pub fn run_suites(names: &[&str], f: &TranslationIso, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, SuiteError> {
    if let Some(bad) = names.iter().find(|n| checks::lookup(n).is_none()) {
        return Err(SuiteError::UnknownSuite(bad.to_string()));
    }
    let elements = sample_space(f, cfg.window());
    names.par_iter().map(|name| run_with_space(name, f, cfg, &elements)).collect()
}
