//! The power monoid `P_fin,1(H)`: finite subsets of `H` containing the
//! identity under setwise multiplication.

mod literal;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::ambient::GroupElement;
use crate::monoid::{Family, MonoidError, MonoidSpec};

pub use literal::{format_set, parse_element, parse_set_literal, ParseError};
pub(crate) use literal::Cursor;

/// Default bound on `|Y|` accepted by [`FinSubset1::divides`].
pub const DEFAULT_DIVISIBILITY_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowmonError {
    #[error("sets live in different monoids ({0} and {1})")]
    MonoidMismatch(String, String),
    #[error("set does not contain the identity")]
    MissingIdentity,
    #[error("element {element} is not in monoid {monoid}")]
    NotInMonoid { element: GroupElement, monoid: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("divisibility search refuses |Y| = {size} above the cap {cap}")]
    DivisibilityCapExceeded { size: usize, cap: usize },
    #[error("reversion is only defined over N0, not over {0}")]
    ReversionRequiresN0(String),
}

/// Finite subset of a monoid containing the identity, stored sorted and
/// duplicate-free.
#[derive(Clone, Debug)]
pub struct FinSubset1 {
    monoid: Arc<MonoidSpec>,
    elements: Vec<GroupElement>,
}

impl PartialEq for FinSubset1 {
    fn eq(&self, other: &Self) -> bool {
        same_monoid(&self.monoid, &other.monoid) && self.elements == other.elements
    }
}

impl Eq for FinSubset1 {}

fn same_monoid(a: &Arc<MonoidSpec>, b: &Arc<MonoidSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    /// The largest `Z` with `X·Z = Y`.
    Yes(FinSubset1),
    No,
}

/// Quotients of a set with their multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<GroupElement, usize>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<GroupElement, usize>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_map(entries.iter().map(|(k, v)| (k.to_string(), v)))
}

impl FinSubset1 {
    pub fn new(monoid: Arc<MonoidSpec>, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self, PowmonError> {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        for u in &set {
            if !monoid.contains(u)? {
                return Err(PowmonError::NotInMonoid { element: u.clone(), monoid: monoid.label().to_string() });
            }
        }
        if !set.contains(&monoid.signature().identity()) {
            return Err(PowmonError::MissingIdentity);
        }
        Ok(FinSubset1 { monoid, elements: set.into_iter().collect() })
    }

    /// `{1}`.
    pub fn identity(monoid: Arc<MonoidSpec>) -> Self {
        let elements = vec![monoid.signature().identity()];
        FinSubset1 { monoid, elements }
    }

    /// Parses a set literal and validates it against `monoid`.
    pub fn parse(monoid: Arc<MonoidSpec>, text: &str) -> Result<Self, SetLiteralError> {
        let elements = parse_set_literal(monoid.signature(), text)?;
        Ok(Self::new(monoid, elements)?)
    }

    /// Caller guarantees membership and the identity; duplicates allowed.
    pub(crate) fn from_members(monoid: Arc<MonoidSpec>, elements: impl IntoIterator<Item = GroupElement>) -> Self {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        FinSubset1 { monoid, elements: set.into_iter().collect() }
    }

    pub fn monoid(&self) -> &Arc<MonoidSpec> {
        &self.monoid
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: the identity is always present.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &GroupElement) -> bool {
        self.elements.binary_search(u).is_ok()
    }

    pub fn is_subset_of(&self, other: &FinSubset1) -> bool {
        self.elements.iter().all(|u| other.contains(u))
    }

    fn check_same(&self, other: &FinSubset1) -> Result<(), PowmonError> {
        if same_monoid(&self.monoid, &other.monoid) {
            Ok(())
        } else {
            Err(PowmonError::MonoidMismatch(self.monoid.label().into(), other.monoid.label().into()))
        }
    }

    /// `{u + v : u ∈ self, v ∈ other}`.
    pub fn product(&self, other: &FinSubset1) -> Result<FinSubset1, PowmonError> {
        self.check_same(other)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &FinSubset1) -> FinSubset1 {
        let sig = self.monoid.signature();
        let sums = self.elements.iter().flat_map(|u| other.elements.iter().map(move |v| sig.add(u, v)));
        FinSubset1::from_members(self.monoid.clone(), sums)
    }

    pub fn power(&self, n: u32) -> FinSubset1 {
        (0..n).fold(FinSubset1::identity(self.monoid.clone()), |acc, _| acc.product_unchecked(self))
    }

    /// `{u + a : u ∈ self}` as a plain list; `a` need not be in the monoid.
    pub fn translate(&self, a: &GroupElement) -> Vec<GroupElement> {
        let sig = self.monoid.signature();
        let mut out: Vec<GroupElement> = self.elements.iter().map(|u| sig.add(u, a)).collect();
        out.sort();
        out
    }

    /// Whether `self · Z = y` for some `Z`. Every such `Z` lies inside
    /// `{z ∈ Y : X·z ⊆ Y}`, so that set decides the question.
    pub fn divides(&self, y: &FinSubset1, cap: usize) -> Result<Divisibility, PowmonError> {
        self.check_same(y)?;
        if y.len() > cap {
            return Err(PowmonError::DivisibilityCapExceeded { size: y.len(), cap });
        }
        if !self.is_subset_of(y) {
            return Ok(Divisibility::No);
        }
        let sig = self.monoid.signature();
        let witness: Vec<GroupElement> = y
            .elements
            .iter()
            .filter(|z| self.elements.iter().all(|x| y.contains(&sig.add(x, z))))
            .cloned()
            .collect();
        let z = FinSubset1 { monoid: self.monoid.clone(), elements: witness };
        if self.product_unchecked(&z).elements == y.elements {
            Ok(Divisibility::Yes(z))
        } else {
            Ok(Divisibility::No)
        }
    }

    /// Number of `b ∈ self` with `a + b ∈ self`.
    pub fn multiplicity(&self, a: &GroupElement) -> usize {
        let sig = self.monoid.signature();
        self.elements.iter().filter(|b| self.contains(&sig.add(a, b))).count()
    }

    /// Every quotient: non-identity `a ∈ H` with `a + b ∈ X` for some `b ∈ X`.
    pub fn quotients(&self) -> QuotientReport {
        let sig = self.monoid.signature();
        let mut entries = BTreeMap::new();
        for u in &self.elements {
            for v in &self.elements {
                if u == v {
                    continue;
                }
                let a = sig.sub(u, v);
                if entries.contains_key(&a) || !self.monoid.holds(&a) {
                    continue;
                }
                let n = self.multiplicity(&a);
                entries.insert(a, n);
            }
        }
        QuotientReport { entries }
    }

    /// `max X − X` over `N₀`.
    pub fn reversion(&self) -> Result<FinSubset1, PowmonError> {
        if !matches!(self.monoid.family(), Family::FullN0) {
            return Err(PowmonError::ReversionRequiresN0(self.monoid.label().into()));
        }
        let sig = self.monoid.signature();
        let max = self.elements.last().expect("identity present");
        debug_assert!(!max.free()[0].is_negative());
        Ok(FinSubset1::from_members(self.monoid.clone(), self.elements.iter().map(|x| sig.sub(max, x))))
    }
}

impl fmt::Display for FinSubset1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_set(&self.elements))
    }
}

impl Serialize for FinSubset1 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetLiteralError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] PowmonError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::GroupSignature;

    fn n0() -> Arc<MonoidSpec> {
        Arc::new(MonoidSpec::full_n0())
    }

    fn set(m: &Arc<MonoidSpec>, text: &str) -> FinSubset1 {
        FinSubset1::parse(m.clone(), text).unwrap()
    }

    #[test]
    fn products_and_powers() {
        let m = n0();
        assert_eq!(set(&m, "{0,1}").product(&set(&m, "{0,2}")).unwrap(), set(&m, "{0,1,2,3}"));
        assert_eq!(set(&m, "{0,1}").power(3), set(&m, "{0,1,2,3}"));
        assert_eq!(set(&m, "{0,4}").power(0), FinSubset1::identity(m.clone()));
        let x = set(&m, "{0,3,7}");
        assert_eq!(FinSubset1::identity(m.clone()).product(&x).unwrap(), x);
    }

    #[test]
    fn cyclic_power_in_torsion() {
        let sig = GroupSignature::new(0, vec![3.into()]).unwrap();
        let g = Arc::new(
            MonoidSpec::free_generated(sig.clone(), vec![sig.element(vec![], vec![1.into()]).unwrap()], None).unwrap(),
        );
        let x = FinSubset1::parse(g.clone(), "{(;0),(;1)}").unwrap();
        assert_eq!(x.power(3).len(), 3);
    }

    #[test]
    fn validation() {
        let m = n0();
        assert!(matches!(FinSubset1::parse(m.clone(), "{1,2}"), Err(SetLiteralError::Invalid(PowmonError::MissingIdentity))));
        assert!(matches!(
            FinSubset1::parse(m.clone(), "{0,-1}"),
            Err(SetLiteralError::Invalid(PowmonError::NotInMonoid { .. }))
        ));
        assert_eq!(set(&m, "{3,0,3,1}").to_string(), "{0,1,3}");
    }

    #[test]
    fn divisibility() {
        let m = n0();
        assert_eq!(set(&m, "{0,1}").divides(&set(&m, "{0,1,2}"), 16).unwrap(), Divisibility::Yes(set(&m, "{0,1}")));
        assert_eq!(set(&m, "{0,2}").divides(&set(&m, "{0,1,2,3}"), 16).unwrap(), Divisibility::Yes(set(&m, "{0,1}")));
        assert_eq!(set(&m, "{0,5}").divides(&set(&m, "{0,1,2}"), 16).unwrap(), Divisibility::No);
        assert_eq!(set(&m, "{0,2}").divides(&set(&m, "{0,1,2}"), 16).unwrap(), Divisibility::No);
        assert!(matches!(
            set(&m, "{0}").divides(&set(&m, "{0,1,2}"), 2),
            Err(PowmonError::DivisibilityCapExceeded { size: 3, cap: 2 })
        ));
    }

    #[test]
    fn quotient_multiplicities() {
        let m = n0();
        let report = set(&m, "{0,1,3}").quotients();
        let expected: BTreeMap<GroupElement, usize> =
            [(1, 1), (2, 1), (3, 1)].into_iter().map(|(a, n)| (GroupElement::from_free(&[a]), n)).collect();
        assert_eq!(report.entries, expected);
        assert!(set(&m, "{0}").quotients().entries.is_empty());
        let x = set(&m, "{0,1,3}");
        let two = set(&m, "{0,2}");
        assert_eq!(two.product(&x).unwrap().len(), 2 * x.len() - x.multiplicity(&GroupElement::from_free(&[2])));
    }

    #[test]
    fn reversion_examples() {
        let m = n0();
        assert_eq!(set(&m, "{0,1,3}").reversion().unwrap(), set(&m, "{0,2,3}"));
        assert_eq!(set(&m, "{0}").reversion().unwrap(), set(&m, "{0}"));
        let x = set(&m, "{0,2,5,6}");
        assert_eq!(x.reversion().unwrap().reversion().unwrap(), x);
        let h = Arc::new(MonoidSpec::numerical(&[2, 3]).unwrap());
        assert!(set(&h, "{0,2}").reversion().is_err());
    }
}
