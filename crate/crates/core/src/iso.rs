//! Translation isomorphisms `f(X) = aX` between power monoids.
//!
//! For `X ∈ P_fin,1(H)` the translation is `a = −min(X ∩ H_v)`, the minimum
//! taken in the total order of the valuation part of `K`. The pullback `g`
//! and the reversed/non-reversed split are read off from `f`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;
use thiserror::Error;

use crate::ambient::{GroupElement, GroupSignature};
use crate::monoid::{MonoidError, MonoidSpec};
use crate::powmon::{format_set, FinSubset1, PowmonError};
use crate::structure::has_finite_order;

/// Structural condition checked by [`build_translation_iso`], in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    SameSignature,
    Reduced,
    ValuationOrComposite,
    EqualQuotientGroups,
    SharedComplement,
    ComplementPseudoUnitFree,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::SameSignature => "same_signature",
            Condition::Reduced => "reduced",
            Condition::ValuationOrComposite => "valuation_or_composite",
            Condition::EqualQuotientGroups => "equal_quotient_groups",
            Condition::SharedComplement => "shared_complement",
            Condition::ComplementPseudoUnitFree => "complement_pseudo_unit_free",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("APPLICABILITY_FAILED: {condition}: {detail}")]
    ApplicabilityFailed { condition: Condition, detail: String },
    #[error("{0} is not a valuation monoid")]
    NotValuation(String),
    #[error("empty set has no minimum")]
    EmptySet,
    #[error("{0} is not comparable in the valuation order")]
    Incomparable(GroupElement),
    #[error("set belongs to {found}, isomorphism domain is {expected}")]
    WrongDomain { expected: String, found: String },
    #[error("{element} is not in {monoid}")]
    NotInDomain { element: GroupElement, monoid: String },
    #[error("reversal is undefined for the identity")]
    Identity,
    #[error("reversal is undefined for {0}, which has finite order")]
    FiniteOrder(GroupElement),
    #[error("INTERNAL_DICHOTOMY_VIOLATION: f({{1,a,a^3}}) = {image} for a = {element}")]
    DichotomyViolation { element: GroupElement, image: String },
    #[error("{0} lies in neither H_N nor the inverse of H_R")]
    OutsideDecompositionDomain(GroupElement),
    #[error("translated set violates the codomain: {0}")]
    Postcondition(PowmonError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// Why the translation construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    /// `H = K`; `f` is the identity.
    Identical,
    /// Reduced valuation monoids with the same quotient group.
    ValuationPair,
    /// `H̃ ⊔ G̃·M` and `K̃ ⊔ G̃·M` with a shared complement.
    CompositePair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reversal {
    Reversed,
    NotReversed,
}

/// `f(X) = aX` with its pullback cache.
#[derive(Debug)]
pub struct TranslationIso {
    domain: Arc<MonoidSpec>,
    codomain: Arc<MonoidSpec>,
    certificate: Applicability,
    pullbacks: RwLock<HashMap<GroupElement, GroupElement>>,
}

/// The unique `m ∈ S` with `s − m ∈ K` for every `s ∈ S`.
pub fn valuation_min<'a>(
    k: &MonoidSpec,
    s: impl IntoIterator<Item = &'a GroupElement>,
) -> Result<GroupElement, IsoError> {
    if !k.is_valuation_family() {
        return Err(IsoError::NotValuation(k.label().to_string()));
    }
    let sig = k.signature();
    let elements: Vec<&GroupElement> = s.into_iter().collect();
    let mut min = *elements.first().ok_or(IsoError::EmptySet)?;
    for &u in &elements[1..] {
        if k.holds(&sig.sub(min, u)) {
            min = u;
        }
    }
    if let Some(&bad) = elements.iter().find(|u| !k.holds(&sig.sub(u, min))) {
        return Err(IsoError::Incomparable(bad.clone()));
    }
    Ok(min.clone())
}

fn fail(condition: Condition, detail: impl Into<String>) -> IsoError {
    IsoError::ApplicabilityFailed { condition, detail: detail.into() }
}

/// Checks the structural conditions and builds `f`.
pub fn build_translation_iso(h: Arc<MonoidSpec>, k: Arc<MonoidSpec>) -> Result<TranslationIso, IsoError> {
    let certificate = applicability(&h, &k)?;
    Ok(TranslationIso { domain: h, codomain: k, certificate, pullbacks: RwLock::default() })
}

fn applicability(h: &MonoidSpec, k: &MonoidSpec) -> Result<Applicability, IsoError> {
    if h.signature() != k.signature() {
        return Err(fail(
            Condition::SameSignature,
            format!("{} lives in {}, {} in {}", h.label(), h.signature(), k.label(), k.signature()),
        ));
    }
    if h == k {
        return Ok(Applicability::Identical);
    }
    for m in [h, k] {
        if !m.is_reduced() {
            return Err(fail(Condition::Reduced, format!("{} has nontrivial units", m.label())));
        }
    }
    if h.is_valuation_family() && k.is_valuation_family() {
        if h.quotient_group() != k.quotient_group() {
            return Err(fail(
                Condition::EqualQuotientGroups,
                format!("q({}) = {} but q({}) = {}", h.label(), h.quotient_group(), k.label(), k.quotient_group()),
            ));
        }
        return Ok(Applicability::ValuationPair);
    }
    let (Some(hv), Some(kv)) = (h.valuation_part(), k.valuation_part()) else {
        let odd = if h.is_valuation_family() || h.valuation_part().is_some() { k } else { h };
        return Err(fail(
            Condition::ValuationOrComposite,
            format!("{} is neither a valuation monoid nor a composite; both sides must be the same kind", odd.label()),
        ));
    };
    if hv.quotient_group() != kv.quotient_group() {
        return Err(fail(
            Condition::EqualQuotientGroups,
            format!("q({}) = {} but q({}) = {}", hv.label(), hv.quotient_group(), kv.label(), kv.quotient_group()),
        ));
    }
    if h.complement() != k.complement() {
        return Err(fail(Condition::SharedComplement, "complement descriptions differ"));
    }
    complement_pseudo_unit_free(h)?;
    complement_pseudo_unit_free(k)?;
    Ok(Applicability::CompositePair)
}

/// Every complement element `a` has the witness `a + m_i − m_j`, provided
/// `±(m_i − m_j)` avoids the monoid, so `H_v` is exactly the valuation part.
fn complement_pseudo_unit_free(spec: &MonoidSpec) -> Result<(), IsoError> {
    let sig = spec.signature();
    let gens = &spec.complement().expect("composite").positive_generators;
    for (j, mj) in gens.iter().enumerate() {
        let ok = gens.iter().enumerate().any(|(i, mi)| {
            let d = sig.sub(mi, mj);
            i != j && !spec.holds(&d) && !spec.holds(&sig.inverse(&d))
        });
        if !ok {
            return Err(fail(
                Condition::ComplementPseudoUnitFree,
                format!("positive generator {mj} of {} has no incomparable partner", spec.label()),
            ));
        }
    }
    Ok(())
}

impl TranslationIso {
    pub fn domain(&self) -> &Arc<MonoidSpec> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<MonoidSpec> {
        &self.codomain
    }

    pub fn certificate(&self) -> Applicability {
        self.certificate
    }

    pub fn signature(&self) -> &GroupSignature {
        self.domain.signature()
    }

    /// `H_v` of the domain and `K_v` of the codomain.
    fn valuation_parts(&self) -> (&MonoidSpec, &MonoidSpec) {
        match self.certificate {
            Applicability::Identical | Applicability::ValuationPair => (&self.domain, &self.codomain),
            Applicability::CompositePair => (
                self.domain.valuation_part().expect("composite"),
                self.codomain.valuation_part().expect("composite"),
            ),
        }
    }

    /// The translation `a` used for `X`.
    pub fn translation(&self, x: &FinSubset1) -> Result<GroupElement, IsoError> {
        self.check_domain(x)?;
        Ok(self.translation_unchecked(x))
    }

    fn translation_unchecked(&self, x: &FinSubset1) -> GroupElement {
        let sig = self.signature();
        if self.certificate == Applicability::Identical {
            return sig.identity();
        }
        let (hv, kv) = self.valuation_parts();
        let min = valuation_min(kv, x.elements().iter().filter(|u| hv.holds(u)))
            .expect("identity lies in X ∩ H_v and q(H_v) = q(K_v)");
        sig.inverse(&min)
    }

    fn check_domain(&self, x: &FinSubset1) -> Result<(), IsoError> {
        if Arc::ptr_eq(x.monoid(), &self.domain) || **x.monoid() == *self.domain {
            Ok(())
        } else {
            Err(IsoError::WrongDomain {
                expected: self.domain.label().to_string(),
                found: x.monoid().label().to_string(),
            })
        }
    }

    /// `f(X) = aX`, checked to be an identity-containing subset of `K`.
    pub fn apply(&self, x: &FinSubset1) -> Result<FinSubset1, IsoError> {
        self.check_domain(x)?;
        let a = self.translation_unchecked(x);
        FinSubset1::new(self.codomain.clone(), x.translate(&a)).map_err(IsoError::Postcondition)
    }

    fn require_domain_member(&self, a: &GroupElement) -> Result<(), IsoError> {
        if self.domain.contains(a)? {
            Ok(())
        } else {
            Err(IsoError::NotInDomain { element: a.clone(), monoid: self.domain.label().to_string() })
        }
    }

    /// `g(a)`: the non-identity element of `f({1, a})`.
    pub fn pullback(&self, a: &GroupElement) -> Result<GroupElement, IsoError> {
        self.require_domain_member(a)?;
        if a.is_identity() {
            return Ok(a.clone());
        }
        if let Some(g) = self.pullbacks.read().expect("pullback cache").get(a) {
            return Ok(g.clone());
        }
        let pair = FinSubset1::new(self.domain.clone(), [self.signature().identity(), a.clone()])
            .expect("identity and member");
        let image = self.apply(&pair)?;
        let g = image.elements().iter().find(|u| !u.is_identity()).expect("two-element image").clone();
        self.pullbacks.write().expect("pullback cache").insert(a.clone(), g.clone());
        Ok(g)
    }

    /// Whether `f({1,a,a³})` is `{1,x²,x³}` (reversed) or `{1,x,x³}`, with `x = g(a)`.
    pub fn classify_reversed(&self, a: &GroupElement) -> Result<Reversal, IsoError> {
        self.require_domain_member(a)?;
        if a.is_identity() {
            return Err(IsoError::Identity);
        }
        if has_finite_order(a) {
            return Err(IsoError::FiniteOrder(a.clone()));
        }
        let sig = self.signature();
        let x = self.pullback(a)?;
        let set = FinSubset1::new(self.domain.clone(), [sig.identity(), a.clone(), sig.scale(a, 3)])
            .expect("powers of a member");
        let image = self.apply(&set)?;
        let expect = |p: i64| {
            let mut v = vec![sig.identity(), sig.scale(&x, p), sig.scale(&x, 3)];
            v.sort();
            v
        };
        if image.elements() == expect(1) {
            Ok(Reversal::NotReversed)
        } else if image.elements() == expect(2) {
            Ok(Reversal::Reversed)
        } else {
            Err(IsoError::DichotomyViolation { element: a.clone(), image: format_set(image.elements()) })
        }
    }

    /// Reversal status, with finite-order elements and the identity counted as not reversed.
    pub fn reversal(&self, a: &GroupElement) -> Result<Reversal, IsoError> {
        if a.is_identity() || has_finite_order(a) {
            self.require_domain_member(a)?;
            return Ok(Reversal::NotReversed);
        }
        self.classify_reversed(a)
    }

    /// `h` on `H_N ⊔ H_R⁻¹`: `h(u) = g(u)` for `u ∈ H_N`, `h(u) = g(u⁻¹)` for `u⁻¹ ∈ H_R`.
    pub fn decomposition_map(&self, u: &GroupElement) -> Result<GroupElement, IsoError> {
        let sig = self.signature();
        sig.check(u).map_err(MonoidError::from)?;
        if u.is_identity() {
            return Ok(u.clone());
        }
        if self.domain.holds(u) && self.reversal(u)? == Reversal::NotReversed {
            return self.pullback(u);
        }
        let inv = sig.inverse(u);
        if self.domain.holds(&inv) && !has_finite_order(&inv) && self.classify_reversed(&inv)? == Reversal::Reversed {
            return self.pullback(&inv);
        }
        Err(IsoError::OutsideDecompositionDomain(u.clone()))
    }
}
