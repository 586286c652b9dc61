//! Numerical monoids via their Apéry set with respect to the smallest
//! (gcd-normalized) generator.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::MonoidError;

/// Largest normalized multiplicity for which the Apéry table is built.
const MAX_MULTIPLICITY: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub(crate) struct Numerical {
    gcd: u64,
    multiplicity: u64,
    /// `apery[r]` is the least element of the normalized monoid congruent to `r`.
    apery: Vec<u64>,
}

impl Numerical {
    pub(crate) fn new(generators: &[u64]) -> Result<Self, MonoidError> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(MonoidError::InvalidNumerical("generators must be positive and nonempty".into()));
        }
        let gcd = generators.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        let normalized: Vec<u64> = generators.iter().map(|g| g / gcd).collect();
        let multiplicity = *normalized.iter().min().unwrap();
        if multiplicity > MAX_MULTIPLICITY {
            return Err(MonoidError::InvalidNumerical(format!(
                "smallest normalized generator {multiplicity} exceeds {MAX_MULTIPLICITY}"
            )));
        }
        let m = multiplicity as usize;
        // shortest paths on residues mod m
        let mut apery = vec![u64::MAX; m];
        apery[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > apery[r] {
                continue;
            }
            for &g in &normalized {
                let nd = d + g;
                let nr = (r + (g % multiplicity) as usize) % m;
                if nd < apery[nr] {
                    apery[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(Numerical { gcd, multiplicity, apery })
    }

    pub(crate) fn gcd(&self) -> u64 {
        self.gcd
    }

    /// Frobenius number of the normalized monoid; `-1` when it is all of `N₀`.
    pub(crate) fn frobenius(&self) -> i64 {
        *self.apery.iter().max().unwrap() as i64 - self.multiplicity as i64
    }

    pub(crate) fn contains(&self, n: &BigInt) -> bool {
        if n.is_negative() {
            return false;
        }
        let (k, rem) = n.div_rem(&BigInt::from(self.gcd));
        if !rem.is_zero() {
            return false;
        }
        let r = (&k % self.multiplicity).to_usize().unwrap();
        k >= BigInt::from(self.apery[r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_numbers() {
        assert_eq!(Numerical::new(&[2, 3]).unwrap().frobenius(), 1);
        assert_eq!(Numerical::new(&[3, 5]).unwrap().frobenius(), 7);
        assert_eq!(Numerical::new(&[6, 9, 20]).unwrap().frobenius(), 43);
        assert_eq!(Numerical::new(&[1]).unwrap().frobenius(), -1);
        assert_eq!(Numerical::new(&[4, 6]).unwrap().frobenius(), 1);
    }

    #[test]
    fn membership_matches_enumeration() {
        let h = Numerical::new(&[2, 3]).unwrap();
        assert!(!h.contains(&BigInt::from(1)));
        assert!(h.contains(&BigInt::from(5)));
        assert!(h.contains(&BigInt::from(0)));
        assert!(!h.contains(&BigInt::from(-2)));
        let h = Numerical::new(&[4, 6]).unwrap();
        assert!(!h.contains(&BigInt::from(2)));
        assert!(!h.contains(&BigInt::from(5)));
        assert!(h.contains(&BigInt::from(10)));
    }
}
