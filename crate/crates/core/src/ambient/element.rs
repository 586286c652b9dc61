use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Element of `Z^d ⊕ Z/n₁ ⊕ … ⊕ Z/nₖ`.
///
/// The derived ordering is lexicographic on the free part, then on the
/// torsion part; it is the canonical order used for sorted subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    /// Raw constructor; use [`super::GroupSignature::element`] to reduce torsion.
    pub fn new(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        GroupElement { free, torsion }
    }

    /// Element of a free group `Z^d`.
    pub fn from_free(coords: &[i64]) -> Self {
        GroupElement { free: coords.iter().map(|&c| BigInt::from(c)).collect(), torsion: Vec::new() }
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub(crate) fn free_mut(&mut self) -> &mut Vec<BigInt> {
        &mut self.free
    }

    pub fn into_parts(self) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.free, self.torsion)
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    /// Sup norm of the free part.
    pub fn norm(&self) -> BigInt {
        self.free.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for GroupElement {
    /// Literal syntax: a bare integer inside `Z`, otherwise `(x,y;t)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free.len() == 1 && self.torsion.is_empty() {
            return write!(f, "{}", self.free[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.free.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        if !self.torsion.is_empty() {
            f.write_str(";")?;
            for (i, c) in self.torsion.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
        }
        f.write_str(")")
    }
}
