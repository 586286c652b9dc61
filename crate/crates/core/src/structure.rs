//! Irreducibility, pseudo-units and the decomposition `H = H_v ⊔ H_vᶜ`.
//!
//! A pseudo-unit is an `a ∈ H` such that every `b ∈ H` satisfies
//! `a − b ∈ H` or `b − a ∈ H`. Verdicts are either analytic, backed by a
//! checked witness, or explicitly undecided within the search window.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ambient::{AmbientError, GroupElement, GroupSignature};
use crate::monoid::{sort_by_norm, Family, MonoidError, MonoidSpec, Window};

/// Enlargement applied to the query window when searching for factors.
pub const IRREDUCIBILITY_WINDOW_FACTOR: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("{element} is not in monoid {monoid}")]
    NotInMonoid { element: GroupElement, monoid: String },
    #[error("{0} is a unit")]
    Unit(GroupElement),
}

impl From<AmbientError> for StructureError {
    fn from(e: AmbientError) -> Self {
        StructureError::Monoid(e.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Irreducibility {
    IrreducibleAnalytic,
    IrreducibleUpToWindow,
    Reducible {
        #[serde(serialize_with = "crate::report::display")]
        left: GroupElement,
        #[serde(serialize_with = "crate::report::display")]
        right: GroupElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PseudoUnitStatus {
    PseudoUnitAnalytic,
    /// `b ∈ H` with `a − b ∉ H` and `b − a ∉ H`.
    NotPseudoUnit(#[serde(serialize_with = "crate::report::display")] GroupElement),
    UnknownUpToWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoUnitVerdict {
    #[serde(serialize_with = "crate::report::display")]
    pub element: GroupElement,
    #[serde(flatten)]
    pub status: PseudoUnitStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub monoid: String,
    pub window: Window,
    /// `H_v ∩ window`.
    #[serde(serialize_with = "crate::report::display_seq")]
    pub pseudo_units: Vec<GroupElement>,
    /// `H_vᶜ ∩ window`.
    #[serde(serialize_with = "crate::report::display_seq")]
    pub complement: Vec<GroupElement>,
    /// Elements whose status the window search could not settle.
    #[serde(serialize_with = "crate::report::display_seq")]
    pub undecided: Vec<GroupElement>,
    pub verdicts: Vec<PseudoUnitVerdict>,
}

/// Whether `a` and `b` generate a free abelian group of rank 2.
pub fn is_independent(sig: &GroupSignature, a: &GroupElement, b: &GroupElement) -> Result<bool, AmbientError> {
    Ok(sig.solve_relations(a, b)?.is_trivial())
}

fn require_member(spec: &MonoidSpec, u: &GroupElement) -> Result<(), StructureError> {
    if spec.contains(u)? {
        Ok(())
    } else {
        Err(StructureError::NotInMonoid { element: u.clone(), monoid: spec.label().to_string() })
    }
}

fn reducible(sig: &GroupSignature, u: &GroupElement, v: GroupElement) -> Irreducibility {
    let w = sig.sub(u, &v);
    let (left, right) = if v >= w { (v, w) } else { (w, v) };
    Irreducibility::Reducible { left, right }
}

pub fn is_irreducible(spec: &MonoidSpec, u: &GroupElement, window: Window) -> Result<Irreducibility, StructureError> {
    require_member(spec, u)?;
    if spec.is_unit(u) {
        return Err(StructureError::Unit(u.clone()));
    }
    let sig = spec.signature();
    Ok(match spec.family() {
        Family::FullN0 => {
            let one = GroupElement::from_free(&[1]);
            if *u == one {
                Irreducibility::IrreducibleAnalytic
            } else {
                Irreducibility::Reducible { left: sig.sub(u, &one), right: one }
            }
        }
        Family::HalfPlaneLex { embedding: [i, _] } => {
            // every non-unit is (1,0) plus a non-unit, except (1,0) itself
            let e = sig.unit_vector(*i);
            let rest = sig.sub(u, &e);
            if rest.is_identity() {
                Irreducibility::IrreducibleAnalytic
            } else {
                Irreducibility::Reducible { left: rest, right: e }
            }
        }
        Family::FreeGenerated { .. } => {
            let graded = spec.graded().expect("graded data");
            graded
                .positive_generators()
                .map(|p| sig.sub(u, p))
                .find(|rest| graded.degree_of(rest).is_positive() && spec.holds(rest))
                .map(|rest| {
                    let p = sig.sub(u, &rest);
                    Irreducibility::Reducible { left: rest, right: p }
                })
                .unwrap_or(Irreducibility::IrreducibleAnalytic)
        }
        Family::Composite { valuation_part, .. } => {
            if valuation_part.holds(u) {
                // the grading vanishes on the valuation part, so both factors stay there
                return is_irreducible(valuation_part, u, window);
            }
            let v0 = first_non_unit(valuation_part, window)
                .ok_or_else(|| StructureError::Unit(sig.identity()))?;
            Irreducibility::Reducible { left: sig.sub(u, &v0), right: v0 }
        }
        Family::Numerical { .. } | Family::IrrationalCone { .. } => {
            let search = window.covering(u).scaled(IRREDUCIBILITY_WINDOW_FACTOR);
            let mut candidates = spec.window_elements(search);
            sort_by_norm(&mut candidates);
            candidates
                .into_iter()
                .find(|v| {
                    let w = sig.sub(u, v);
                    !spec.is_unit(v) && spec.holds(&w) && !spec.is_unit(&w)
                })
                .map(|v| reducible(sig, u, v))
                .unwrap_or(Irreducibility::IrreducibleUpToWindow)
        }
    })
}

fn first_non_unit(spec: &MonoidSpec, window: Window) -> Option<GroupElement> {
    let limit = window.scaled(2).bound().max(1);
    let mut bound = 1;
    loop {
        let mut elements = spec.window_elements(Window::new(bound));
        sort_by_norm(&mut elements);
        if let Some(u) = elements.into_iter().find(|u| !spec.is_unit(u)) {
            return Some(u);
        }
        if bound >= limit {
            return None;
        }
        bound = (bound * 2).min(limit);
    }
}

/// Checks that `b` certifies that `a` is not a pseudo-unit.
pub fn is_pseudo_unit_witness(spec: &MonoidSpec, a: &GroupElement, b: &GroupElement) -> bool {
    let sig = spec.signature();
    spec.holds(b) && !spec.holds(&sig.sub(a, b)) && !spec.holds(&sig.sub(b, a))
}

fn window_witness(spec: &MonoidSpec, a: &GroupElement, window: Window) -> PseudoUnitStatus {
    let mut candidates = spec.window_elements(window.covering(a));
    sort_by_norm(&mut candidates);
    candidates
        .into_iter()
        .find(|b| is_pseudo_unit_witness(spec, a, b))
        .map(PseudoUnitStatus::NotPseudoUnit)
        .unwrap_or(PseudoUnitStatus::UnknownUpToWindow)
}

pub fn pseudo_unit(spec: &MonoidSpec, a: &GroupElement, window: Window) -> Result<PseudoUnitVerdict, StructureError> {
    require_member(spec, a)?;
    Ok(PseudoUnitVerdict { element: a.clone(), status: pseudo_unit_status(spec, a, window) })
}

fn pseudo_unit_status(spec: &MonoidSpec, a: &GroupElement, window: Window) -> PseudoUnitStatus {
    let sig = spec.signature();
    if a.is_identity() || spec.is_valuation_family() {
        return PseudoUnitStatus::PseudoUnitAnalytic;
    }
    match spec.family() {
        Family::Numerical { .. } => {
            // b = a + g·F lies above the conductor while b − a = g·F is a gap
            let gcd = spec.numerical_gcd().expect("numerical data");
            let frobenius = spec.frobenius().expect("numerical data");
            let b = sig.add(a, &GroupElement::from_free(&[gcd as i64 * frobenius]));
            debug_assert!(is_pseudo_unit_witness(spec, a, &b));
            PseudoUnitStatus::NotPseudoUnit(b)
        }
        Family::Composite { valuation_part, complement } => {
            if valuation_part.holds(a) {
                // b in the complement: b − a stays in the complement
                return PseudoUnitStatus::PseudoUnitAnalytic;
            }
            let gens = &complement.positive_generators;
            let shifted = gens.iter().enumerate().flat_map(|(i, mi)| {
                gens.iter()
                    .enumerate()
                    .filter(move |(j, _)| *j != i)
                    .map(move |(_, mj)| sig.sub(&sig.add(a, mi), mj))
            });
            shifted
                .into_iter()
                .find(|b| is_pseudo_unit_witness(spec, a, b))
                .map(PseudoUnitStatus::NotPseudoUnit)
                .unwrap_or_else(|| window_witness(spec, a, window))
        }
        _ => window_witness(spec, a, window),
    }
}

/// Classifies every element of `H ∩ window`.
pub fn decompose(spec: &MonoidSpec, window: Window) -> DecompositionReport {
    let elements = spec.window_elements(window);
    let verdicts: Vec<PseudoUnitVerdict> = elements
        .par_iter()
        .map(|a| PseudoUnitVerdict { element: a.clone(), status: pseudo_unit_status(spec, a, window) })
        .collect();
    let pick = |keep: fn(&PseudoUnitStatus) -> bool| -> Vec<GroupElement> {
        verdicts.iter().filter(|v| keep(&v.status)).map(|v| v.element.clone()).collect()
    };
    DecompositionReport {
        monoid: spec.label().to_string(),
        window,
        pseudo_units: pick(|s| matches!(s, PseudoUnitStatus::PseudoUnitAnalytic)),
        complement: pick(|s| matches!(s, PseudoUnitStatus::NotPseudoUnit(_))),
        undecided: pick(|s| matches!(s, PseudoUnitStatus::UnknownUpToWindow)),
        verdicts,
    }
}

/// Checks a factorization witness: `v + w = u` with `v`, `w` non-units of `spec`.
pub fn is_factorization(spec: &MonoidSpec, u: &GroupElement, v: &GroupElement, w: &GroupElement) -> bool {
    let sig = spec.signature();
    sig.add(v, w) == *u && spec.holds(v) && spec.holds(w) && !spec.is_unit(v) && !spec.is_unit(w)
}

/// True when the free part is zero, i.e. the element has finite order.
pub(crate) fn has_finite_order(u: &GroupElement) -> bool {
    u.free().iter().all(Zero::is_zero)
}
