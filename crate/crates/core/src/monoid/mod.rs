//! Membership-decidable monoid families embedded in the ambient group.

mod file;
mod graded;
mod numerical;
mod surd;
mod window;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ambient::{AmbientError, GroupElement, GroupSignature, Subgroup};

pub(crate) use graded::Graded;
use numerical::Numerical;
pub use surd::QuadraticSurd;
pub(crate) use window::sort_by_norm;
pub use window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error("invalid quadratic surd: {0}")]
    InvalidSurd(String),
    #[error("invalid numerical monoid: {0}")]
    InvalidNumerical(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid free-generated monoid: {0}")]
    InvalidFreeGenerated(String),
    #[error("invalid composite monoid: {0}")]
    InvalidComposite(String),
    #[error("invalid monoid file: {0}")]
    File(String),
}

/// `G̃·M`: a base subgroup translated by the nonzero combinations of the
/// positive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSpec {
    pub base_subgroup: Vec<GroupElement>,
    pub positive_generators: Vec<GroupElement>,
    /// Functional vanishing on the base and positive on the generators;
    /// searched for when absent.
    pub grading: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `N₀` inside `Z`.
    FullN0,
    /// Submonoid of `N₀` generated by positive integers.
    Numerical { generators: Vec<u64> },
    /// `(Z×N) ∪ (N₀×{0})` on the coordinates `embedding = [x, y]`.
    HalfPlaneLex { embedding: [usize; 2] },
    /// `{(x, y) : y ≤ αx}` on the coordinates `embedding = [x, y]`.
    IrrationalCone { embedding: [usize; 2], alpha: QuadraticSurd },
    /// Monoid generated by finitely many elements.
    FreeGenerated { generators: Vec<GroupElement>, grading: Option<Vec<BigInt>> },
    /// `H̃ ⊔ G̃·M`.
    Composite { valuation_part: Box<MonoidSpec>, complement: ComplementSpec },
}

#[derive(Clone, Debug)]
enum Derived {
    Plain,
    Numerical(Numerical),
    Graded(Graded),
}

/// A validated monoid description with exact membership.
#[derive(Clone, Debug)]
pub struct MonoidSpec {
    label: String,
    signature: GroupSignature,
    family: Family,
    derived: Derived,
}

impl PartialEq for MonoidSpec {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.signature == other.signature && self.family == other.family
    }
}

impl Eq for MonoidSpec {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ValuationVerdict {
    TrueAnalytic,
    /// `x ∈ q(H)` with neither `x` nor `x⁻¹` in `H`.
    FalseWitness(#[serde(serialize_with = "crate::report::display")] GroupElement),
    UnknownUpToWindow,
}

impl fmt::Display for ValuationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationVerdict::TrueAnalytic => f.write_str("TRUE_ANALYTIC"),
            ValuationVerdict::FalseWitness(x) => write!(f, "FALSE_WITNESS({x})"),
            ValuationVerdict::UnknownUpToWindow => f.write_str("UNKNOWN_UP_TO_WINDOW"),
        }
    }
}

fn check_embedding(sig: &GroupSignature, embedding: [usize; 2]) -> Result<(), MonoidError> {
    let [x, y] = embedding;
    if x == y || x >= sig.free_rank() || y >= sig.free_rank() {
        return Err(MonoidError::InvalidEmbedding(format!(
            "coordinates {embedding:?} must be distinct free coordinates of {sig}"
        )));
    }
    Ok(())
}

impl MonoidSpec {
    pub fn full_n0() -> Self {
        MonoidSpec {
            label: "N0".into(),
            signature: GroupSignature::free(1),
            family: Family::FullN0,
            derived: Derived::Plain,
        }
    }

    pub fn numerical(generators: &[u64]) -> Result<Self, MonoidError> {
        let data = Numerical::new(generators)?;
        let names: Vec<String> = generators.iter().map(ToString::to_string).collect();
        Ok(MonoidSpec {
            label: format!("<{}>", names.join(",")),
            signature: GroupSignature::free(1),
            family: Family::Numerical { generators: generators.to_vec() },
            derived: Derived::Numerical(data),
        })
    }

    pub fn half_plane_lex(signature: GroupSignature, embedding: [usize; 2]) -> Result<Self, MonoidError> {
        check_embedding(&signature, embedding)?;
        Ok(MonoidSpec {
            label: "half-plane-lex".into(),
            signature,
            family: Family::HalfPlaneLex { embedding },
            derived: Derived::Plain,
        })
    }

    pub fn irrational_cone(
        signature: GroupSignature,
        embedding: [usize; 2],
        alpha: QuadraticSurd,
    ) -> Result<Self, MonoidError> {
        check_embedding(&signature, embedding)?;
        Ok(MonoidSpec {
            label: format!("cone[{alpha}]"),
            signature,
            family: Family::IrrationalCone { embedding, alpha },
            derived: Derived::Plain,
        })
    }

    pub fn free_generated(
        signature: GroupSignature,
        generators: Vec<GroupElement>,
        grading: Option<Vec<BigInt>>,
    ) -> Result<Self, MonoidError> {
        for g in &generators {
            signature.check(g)?;
        }
        let graded = Graded::for_monoid(&signature, &generators, grading.as_deref())
            .map_err(MonoidError::InvalidFreeGenerated)?;
        Ok(MonoidSpec {
            label: "free-generated".into(),
            signature,
            family: Family::FreeGenerated { generators, grading },
            derived: Derived::Graded(graded),
        })
    }

    pub fn composite(valuation_part: MonoidSpec, complement: ComplementSpec) -> Result<Self, MonoidError> {
        let signature = valuation_part.signature.clone();
        if !valuation_part.is_valuation_family() {
            return Err(MonoidError::InvalidComposite(format!(
                "valuation part {} is not a valuation monoid",
                valuation_part.label
            )));
        }
        for g in complement.base_subgroup.iter().chain(&complement.positive_generators) {
            signature.check(g)?;
        }
        let graded = Graded::for_complement(
            &signature,
            &complement.base_subgroup,
            &complement.positive_generators,
            complement.grading.as_deref(),
        )
        .map_err(MonoidError::InvalidComposite)?;
        // G̃·M is stable under q(valuation part) iff q(valuation part) ⊆ G̃
        if !valuation_part.quotient_group().is_subgroup_of(graded.zero_subgroup()) {
            return Err(MonoidError::InvalidComposite(
                "quotient group of the valuation part is not contained in the base subgroup".into(),
            ));
        }
        Ok(MonoidSpec {
            label: format!("{} + complement", valuation_part.label),
            signature,
            family: Family::Composite { valuation_part: Box::new(valuation_part), complement },
            derived: Derived::Graded(graded),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.signature
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn valuation_part(&self) -> Option<&MonoidSpec> {
        match &self.family {
            Family::Composite { valuation_part, .. } => Some(valuation_part),
            _ => None,
        }
    }

    pub fn complement(&self) -> Option<&ComplementSpec> {
        match &self.family {
            Family::Composite { complement, .. } => Some(complement),
            _ => None,
        }
    }

    pub(crate) fn graded(&self) -> Option<&Graded> {
        match &self.derived {
            Derived::Graded(g) => Some(g),
            _ => None,
        }
    }

    /// Frobenius number of the gcd-normalized numerical monoid.
    pub fn frobenius(&self) -> Option<i64> {
        match &self.derived {
            Derived::Numerical(n) => Some(n.frobenius()),
            _ => None,
        }
    }

    pub(crate) fn numerical_gcd(&self) -> Option<u64> {
        match &self.derived {
            Derived::Numerical(n) => Some(n.gcd()),
            _ => None,
        }
    }

    fn embedded<'a>(&self, u: &'a GroupElement, [i, j]: [usize; 2]) -> Option<(&'a BigInt, &'a BigInt)> {
        let others_zero = u.free().iter().enumerate().all(|(k, c)| k == i || k == j || c.is_zero())
            && u.torsion().iter().all(Zero::is_zero);
        others_zero.then(|| (&u.free()[i], &u.free()[j]))
    }

    pub fn contains(&self, u: &GroupElement) -> Result<bool, MonoidError> {
        self.signature.check(u)?;
        Ok(self.holds(u))
    }

    /// Membership for elements already known to have the right signature.
    pub(crate) fn holds(&self, u: &GroupElement) -> bool {
        match (&self.family, &self.derived) {
            (Family::FullN0, _) => !u.free()[0].is_negative(),
            (Family::Numerical { .. }, Derived::Numerical(n)) => n.contains(&u.free()[0]),
            (Family::HalfPlaneLex { embedding }, _) => match self.embedded(u, *embedding) {
                Some((x, y)) => y.is_positive() || (y.is_zero() && !x.is_negative()),
                None => false,
            },
            (Family::IrrationalCone { embedding, alpha }, _) => match self.embedded(u, *embedding) {
                Some((x, y)) => alpha.sign_of_offset(x, y) != Ordering::Greater,
                None => false,
            },
            (Family::FreeGenerated { .. }, Derived::Graded(g)) => g.contains(&self.signature, u),
            (Family::Composite { valuation_part, .. }, Derived::Graded(g)) => {
                valuation_part.holds(u) || g.contains(&self.signature, u)
            }
            _ => unreachable!("derived data does not match family"),
        }
    }

    pub(crate) fn is_unit(&self, u: &GroupElement) -> bool {
        self.holds(u) && self.holds(&self.signature.inverse(u))
    }

    /// Whether the family is a valuation monoid by construction.
    pub fn is_valuation_family(&self) -> bool {
        match &self.family {
            Family::FullN0 | Family::HalfPlaneLex { .. } | Family::IrrationalCone { .. } => true,
            Family::Numerical { .. } => self.frobenius() == Some(-1),
            _ => false,
        }
    }

    /// Whether the only unit is the identity.
    pub fn is_reduced(&self) -> bool {
        match &self.family {
            Family::FullN0 | Family::Numerical { .. } | Family::HalfPlaneLex { .. } => true,
            Family::IrrationalCone { alpha, .. } => alpha.is_irrational(),
            Family::FreeGenerated { .. } => self.graded().unwrap().zero_subgroup().is_trivial(),
            Family::Composite { valuation_part, .. } => valuation_part.is_reduced(),
        }
    }

    pub fn is_valuation(&self, window: Window) -> ValuationVerdict {
        if self.is_valuation_family() {
            return ValuationVerdict::TrueAnalytic;
        }
        let q = self.quotient_group();
        let mut candidates: Vec<GroupElement> =
            window.all_points(&self.signature).into_iter().filter(|x| q.contains(x)).collect();
        sort_by_norm(&mut candidates);
        candidates
            .into_iter()
            .find(|x| !self.holds(x) && !self.holds(&self.signature.inverse(x)))
            .map(|x| {
                let inv = self.signature.inverse(&x);
                ValuationVerdict::FalseWitness(x.max(inv))
            })
            .unwrap_or(ValuationVerdict::UnknownUpToWindow)
    }

    pub fn quotient_group(&self) -> Subgroup {
        let sig = &self.signature;
        match &self.family {
            Family::FullN0 => Subgroup::generated_by(sig, &[sig.unit_vector(0)]),
            Family::Numerical { .. } => {
                let g = self.numerical_gcd().unwrap();
                Subgroup::generated_by(sig, &[sig.scale(&sig.unit_vector(0), g)])
            }
            Family::HalfPlaneLex { embedding: [i, j] } | Family::IrrationalCone { embedding: [i, j], .. } => {
                Subgroup::generated_by(sig, &[sig.unit_vector(*i), sig.unit_vector(*j)])
            }
            Family::FreeGenerated { generators, .. } => Subgroup::generated_by(sig, generators),
            Family::Composite { valuation_part, complement } => {
                let mut gens = valuation_part.quotient_group().generators();
                gens.extend(complement.base_subgroup.iter().cloned());
                gens.extend(complement.positive_generators.iter().cloned());
                Subgroup::generated_by(sig, &gens)
            }
        }
    }

    /// `H ∩ window`, in lexicographic order.
    pub fn window_elements(&self, window: Window) -> Vec<GroupElement> {
        let sig = &self.signature;
        let candidates = match &self.family {
            Family::FullN0 | Family::Numerical { .. } => (0..=window.bound())
                .map(|n| GroupElement::new(vec![BigInt::from(n)], Vec::new()))
                .collect(),
            Family::HalfPlaneLex { embedding } | Family::IrrationalCone { embedding, .. } => {
                window.points(sig, embedding, false)
            }
            Family::FreeGenerated { .. } => window.all_points(sig),
            Family::Composite { valuation_part, .. } => {
                let graded = self.graded().unwrap();
                let mut out = valuation_part.window_elements(window);
                out.extend(
                    window
                        .all_points(sig)
                        .into_iter()
                        .filter(|u| graded.degree_of(u).is_positive() && graded.contains(sig, u)),
                );
                out.sort();
                return out;
            }
        };
        candidates.into_iter().filter(|u| self.holds(u)).collect()
    }

    /// Units of `H` inside the window.
    pub fn units(&self, window: Window) -> Vec<GroupElement> {
        self.window_elements(window).into_iter().filter(|u| self.is_unit(u)).collect()
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[i64]) -> GroupElement {
        GroupElement::from_free(c)
    }

    pub(crate) fn half_plane() -> MonoidSpec {
        MonoidSpec::half_plane_lex(GroupSignature::free(2), [0, 1]).unwrap()
    }

    pub(crate) fn cone() -> MonoidSpec {
        MonoidSpec::irrational_cone(GroupSignature::free(2), [0, 1], QuadraticSurd::sqrt(2).unwrap()).unwrap()
    }

    #[test]
    fn half_plane_membership() {
        let h = half_plane();
        assert!(h.contains(&el(&[-5, 3])).unwrap());
        assert!(!h.contains(&el(&[-1, 0])).unwrap());
        assert!(h.contains(&el(&[0, 0])).unwrap());
        assert!(h.contains(&el(&[4, 0])).unwrap());
        assert!(!h.contains(&el(&[4, -1])).unwrap());
    }

    #[test]
    fn cone_membership() {
        let k = cone();
        assert!(!k.contains(&el(&[2, 3])).unwrap());
        assert!(k.contains(&el(&[1, 1])).unwrap());
        assert!(k.contains(&el(&[-2, -3])).unwrap());
    }

    #[test]
    fn numerical_membership() {
        let h = MonoidSpec::numerical(&[2, 3]).unwrap();
        assert!(!h.contains(&el(&[1])).unwrap());
        assert!(h.contains(&el(&[5])).unwrap());
    }

    #[test]
    fn signature_mismatch_is_error() {
        assert!(half_plane().contains(&el(&[1])).is_err());
    }

    #[test]
    fn valuation_verdicts() {
        let w = Window::new(5);
        assert_eq!(half_plane().is_valuation(w), ValuationVerdict::TrueAnalytic);
        assert_eq!(MonoidSpec::full_n0().is_valuation(w), ValuationVerdict::TrueAnalytic);
        assert_eq!(
            MonoidSpec::numerical(&[2, 3]).unwrap().is_valuation(w),
            ValuationVerdict::FalseWitness(el(&[1]))
        );
        assert_eq!(MonoidSpec::numerical(&[3]).unwrap().is_valuation(w), ValuationVerdict::TrueAnalytic);
    }

    #[test]
    fn quotient_groups() {
        let z = GroupSignature::free(1);
        let q = MonoidSpec::numerical(&[2, 3]).unwrap().quotient_group();
        assert_eq!(q.generators(), vec![el(&[1])]);
        assert_eq!(q, Subgroup::generated_by(&z, &[el(&[1])]));
        let z2 = GroupSignature::free(2);
        let full = Subgroup::generated_by(&z2, &[el(&[1, 0]), el(&[0, 1])]);
        assert_eq!(half_plane().quotient_group(), full);
        assert_eq!(cone().quotient_group(), full);
        // cone elements (1,1) and (1,0) already generate Z²
        assert_eq!(Subgroup::generated_by(&z2, &[el(&[1, 1]), el(&[1, 0])]), full);
        assert_eq!(MonoidSpec::numerical(&[4, 6]).unwrap().quotient_group().generators(), vec![el(&[2])]);
    }

    #[test]
    fn units_examples() {
        let w = Window::new(3);
        assert_eq!(MonoidSpec::numerical(&[2, 3]).unwrap().units(w), vec![el(&[0])]);
        assert_eq!(half_plane().units(w), vec![el(&[0, 0])]);
        let g = MonoidSpec::free_generated(
            GroupSignature::free(2),
            vec![el(&[1, 0]), el(&[0, 1]), el(&[-1, -1])],
            None,
        )
        .unwrap();
        assert_eq!(g.units(w).len(), 49);
        assert!(!g.is_reduced());
    }

    #[test]
    fn identity_always_member() {
        for spec in [MonoidSpec::full_n0(), MonoidSpec::numerical(&[3, 7]).unwrap(), half_plane(), cone()] {
            assert!(spec.holds(&spec.signature().identity()));
        }
    }

    #[test]
    fn composite_rejects_open_complement() {
        let sig = GroupSignature::free(3);
        let valuation = MonoidSpec::half_plane_lex(sig.clone(), [0, 1]).unwrap();
        let complement = ComplementSpec {
            base_subgroup: vec![el(&[1, 0, 0])],
            positive_generators: vec![el(&[0, 0, 1])],
            grading: None,
        };
        assert!(matches!(
            MonoidSpec::composite(valuation, complement),
            Err(MonoidError::InvalidComposite(_))
        ));
    }
}
