//! Exact arithmetic in the ambient group `Z^d ⊕ Z/n₁ ⊕ … ⊕ Z/nₖ`.
//!
//! Every monoid handled by this crate is a submonoid of such a group, and so
//! is its quotient group. Elements are plain values; the [`GroupSignature`]
//! carries the torsion orders and performs all arithmetic.

mod element;
pub mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::GroupElement;
pub use lattice::{RelationLattice, Subgroup};

use crate::json::JsonInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbientError {
    #[error("torsion order {0} is smaller than 2")]
    InvalidTorsionOrder(BigInt),
    #[error("element {element} does not belong to {signature}")]
    SignatureMismatch { element: String, signature: String },
}

/// Shape of the ambient group: free rank `d` and the list of torsion orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct GroupSignature {
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    free_rank: usize,
    torsion_orders: Vec<JsonInt>,
}

impl TryFrom<RawSignature> for GroupSignature {
    type Error = AmbientError;

    fn try_from(raw: RawSignature) -> Result<Self, Self::Error> {
        GroupSignature::new(raw.free_rank, raw.torsion_orders.into_iter().map(|n| n.0).collect())
    }
}

impl From<GroupSignature> for RawSignature {
    fn from(sig: GroupSignature) -> Self {
        RawSignature {
            free_rank: sig.free_rank,
            torsion_orders: sig.torsion_orders.into_iter().map(JsonInt).collect(),
        }
    }
}

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

impl ElementOrder {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ElementOrder::Infinite)
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => f.write_str("infinite"),
        }
    }
}

impl GroupSignature {
    pub fn new(free_rank: usize, torsion_orders: Vec<BigInt>) -> Result<Self, AmbientError> {
        let two = BigInt::from(2);
        if let Some(bad) = torsion_orders.iter().find(|n| **n < two) {
            return Err(AmbientError::InvalidTorsionOrder(bad.clone()));
        }
        Ok(GroupSignature { free_rank, torsion_orders })
    }

    /// The free group `Z^d`.
    pub fn free(free_rank: usize) -> Self {
        GroupSignature { free_rank, torsion_orders: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    /// Total number of coordinates, free and torsion.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    pub fn is_integers(&self) -> bool {
        self.free_rank == 1 && self.torsion_orders.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(
            vec![BigInt::zero(); self.free_rank],
            vec![BigInt::zero(); self.torsion_orders.len()],
        )
    }

    /// Builds an element, reducing torsion coordinates into `[0, nᵢ)`.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, AmbientError> {
        let candidate = GroupElement::new(free, torsion);
        if candidate.free().len() != self.free_rank || candidate.torsion().len() != self.torsion_orders.len() {
            return Err(self.mismatch(&candidate));
        }
        let (free, torsion) = candidate.into_parts();
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion_orders)
            .map(|(t, n)| t.mod_floor(n))
            .collect();
        Ok(GroupElement::new(free, torsion))
    }

    /// Element with integer coordinates, free part first.
    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement, AmbientError> {
        if coords.len() != self.dim() {
            let shown = GroupElement::new(coords.iter().map(|&c| BigInt::from(c)).collect(), Vec::new());
            return Err(self.mismatch(&shown));
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        self.element(
            free.iter().map(|&c| BigInt::from(c)).collect(),
            torsion.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// `i`-th free basis vector.
    pub fn unit_vector(&self, i: usize) -> GroupElement {
        let mut u = self.identity();
        u.free_mut()[i] = BigInt::one();
        u
    }

    fn mismatch(&self, u: &GroupElement) -> AmbientError {
        AmbientError::SignatureMismatch { element: u.to_string(), signature: self.to_string() }
    }

    /// Checks that `u` has this shape and canonical torsion residues.
    pub fn check(&self, u: &GroupElement) -> Result<(), AmbientError> {
        let shape_ok = u.free().len() == self.free_rank && u.torsion().len() == self.torsion_orders.len();
        let reduced = shape_ok
            && u
                .torsion()
                .iter()
                .zip(&self.torsion_orders)
                .all(|(t, n)| !t.is_negative() && t < n);
        if reduced {
            Ok(())
        } else {
            Err(self.mismatch(u))
        }
    }

    pub fn compose(&self, u: &GroupElement, v: &GroupElement) -> Result<GroupElement, AmbientError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.add(u, v))
    }

    /// Group law without shape checks; callers guarantee matching signatures.
    pub(crate) fn add(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        debug_assert!(self.check(u).is_ok() && self.check(v).is_ok());
        let free = u.free().iter().zip(v.free()).map(|(a, b)| a + b).collect();
        let torsion = u
            .torsion()
            .iter()
            .zip(v.torsion())
            .zip(&self.torsion_orders)
            .map(|((a, b), n)| {
                let s = a + b;
                if &s >= n {
                    s - n
                } else {
                    s
                }
            })
            .collect();
        GroupElement::new(free, torsion)
    }

    pub(crate) fn sub(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        self.add(u, &self.inverse(v))
    }

    pub fn inverse(&self, u: &GroupElement) -> GroupElement {
        let free = u.free().iter().map(|a| -a).collect();
        let torsion = u
            .torsion()
            .iter()
            .zip(&self.torsion_orders)
            .map(|(t, n)| if t.is_zero() { BigInt::zero() } else { n - t })
            .collect();
        GroupElement::new(free, torsion)
    }

    /// `n`-fold composition of `u`; negative `n` scales the inverse.
    pub fn scale(&self, u: &GroupElement, n: impl Into<BigInt>) -> GroupElement {
        let n = n.into();
        let free = u.free().iter().map(|a| a * &n).collect();
        let torsion = u
            .torsion()
            .iter()
            .zip(&self.torsion_orders)
            .map(|(t, m)| (t * &n).mod_floor(m))
            .collect();
        GroupElement::new(free, torsion)
    }

    pub fn element_order(&self, u: &GroupElement) -> ElementOrder {
        if u.free().iter().any(|a| !a.is_zero()) {
            return ElementOrder::Infinite;
        }
        let order = u
            .torsion()
            .iter()
            .zip(&self.torsion_orders)
            .fold(BigInt::one(), |acc, (t, n)| acc.lcm(&(n / t.gcd(n))));
        ElementOrder::Finite(order)
    }

    /// Coordinates in `Z^{d+k}`, forgetting the torsion reduction.
    pub(crate) fn lift(&self, u: &GroupElement) -> Vec<BigInt> {
        u.free().iter().chain(u.torsion()).cloned().collect()
    }

    pub(crate) fn unlift(&self, coords: &[BigInt]) -> GroupElement {
        let (free, torsion) = coords.split_at(self.free_rank);
        let torsion = torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(t, n)| t.mod_floor(n))
            .collect();
        GroupElement::new(free.to_vec(), torsion)
    }

    /// Rows `nᵢ·e_{d+i}` generating the kernel of the lift `Z^{d+k} → group`.
    pub(crate) fn torsion_relations(&self) -> Vec<Vec<BigInt>> {
        self.torsion_orders
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut row = vec![BigInt::zero(); self.dim()];
                row[self.free_rank + i] = n.clone();
                row
            })
            .collect()
    }

    /// Lattice of integer pairs `(n, m)` with `n·a + m·b = 0`.
    pub fn solve_relations(&self, a: &GroupElement, b: &GroupElement) -> Result<RelationLattice, AmbientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(lattice::relation_lattice(self, a, b))
    }
}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for n in &self.torsion_orders {
            write!(f, " + Z/{n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> GroupSignature {
        GroupSignature::free(2)
    }

    fn z_z3() -> GroupSignature {
        GroupSignature::new(1, vec![BigInt::from(3)]).unwrap()
    }

    #[test]
    fn compose_free() {
        let g = z2();
        let u = g.element_from_i64(&[1, 2]).unwrap();
        let v = g.element_from_i64(&[3, 4]).unwrap();
        assert_eq!(g.compose(&u, &v).unwrap(), g.element_from_i64(&[4, 6]).unwrap());
    }

    #[test]
    fn compose_reduces_torsion() {
        let g = z_z3();
        let u = g.element_from_i64(&[1, 2]).unwrap();
        let v = g.element_from_i64(&[0, 2]).unwrap();
        assert_eq!(g.compose(&u, &v).unwrap(), g.element_from_i64(&[1, 1]).unwrap());
    }

    #[test]
    fn compose_rejects_mismatch() {
        let u = z2().element_from_i64(&[1, 2]).unwrap();
        let v = z_z3().element_from_i64(&[1, 2]).unwrap();
        assert!(z2().compose(&u, &v).is_err());
    }

    #[test]
    fn inverse_cancels() {
        let g = z_z3();
        let u = g.element_from_i64(&[-7, 1]).unwrap();
        assert_eq!(g.compose(&u, &g.inverse(&u)).unwrap(), g.identity());
    }

    #[test]
    fn scale_examples() {
        let g = z2();
        let u = g.element_from_i64(&[1, 1]).unwrap();
        assert_eq!(g.scale(&u, 3), g.element_from_i64(&[3, 3]).unwrap());
        assert_eq!(g.scale(&u, 0), g.identity());
        assert_eq!(g.scale(&u, -2), g.element_from_i64(&[-2, -2]).unwrap());

        let z6 = GroupSignature::new(0, vec![BigInt::from(6)]).unwrap();
        let two = z6.element_from_i64(&[2]).unwrap();
        assert_eq!(z6.scale(&two, 4), two);
    }

    #[test]
    fn orders() {
        let z6 = GroupSignature::new(0, vec![BigInt::from(6)]).unwrap();
        assert_eq!(z6.element_order(&z6.identity()), ElementOrder::Finite(BigInt::one()));
        // multiples of 2 in Z/6: 2, 4, 0
        let two = z6.element_from_i64(&[2]).unwrap();
        assert_eq!(z6.element_order(&two), ElementOrder::Finite(BigInt::from(3)));
        let g = GroupSignature::new(1, vec![BigInt::from(2)]).unwrap();
        assert_eq!(g.element_order(&g.element_from_i64(&[1, 0]).unwrap()), ElementOrder::Infinite);
    }

    #[test]
    fn mixed_order_is_lcm() {
        let g = GroupSignature::new(0, vec![BigInt::from(4), BigInt::from(6)]).unwrap();
        let u = g.element_from_i64(&[1, 2]).unwrap();
        assert_eq!(g.element_order(&u), ElementOrder::Finite(BigInt::from(12)));
    }

    #[test]
    fn torsion_order_validated() {
        assert!(GroupSignature::new(1, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn element_canonicalizes_residues() {
        let g = z_z3();
        let u = g.element(vec![BigInt::from(2)], vec![BigInt::from(-1)]).unwrap();
        assert_eq!(u.torsion(), &[BigInt::from(2)]);
        assert!(g.check(&GroupElement::new(vec![BigInt::zero()], vec![BigInt::from(3)])).is_err());
    }
}
