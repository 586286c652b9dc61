use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::ambient::{GroupElement, GroupSignature};

/// Finite truncation `{u : ‖free_part(u)‖∞ ≤ bound}` × full torsion, used by
/// every bounded search and by sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    bound: u64,
}

impl Window {
    pub fn new(bound: u64) -> Self {
        Window { bound }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn scaled(&self, factor: u64) -> Window {
        Window { bound: self.bound.saturating_mul(factor) }
    }

    /// Smallest window containing both `self` and `u`.
    pub fn covering(&self, u: &GroupElement) -> Window {
        let norm = u.norm().to_u64().unwrap_or(u64::MAX);
        Window { bound: self.bound.max(norm) }
    }

    pub fn contains(&self, u: &GroupElement) -> bool {
        u.norm() <= BigInt::from(self.bound)
    }

    /// Points varying only the free coordinates `coords` (others zero),
    /// optionally with every torsion value, in lexicographic order.
    pub fn points(&self, sig: &GroupSignature, coords: &[usize], with_torsion: bool) -> Vec<GroupElement> {
        let b = self.bound as i64;
        let mut free_parts: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); sig.free_rank()]];
        for &c in coords {
            free_parts = free_parts
                .into_iter()
                .flat_map(|p| {
                    (-b..=b).map(move |v| {
                        let mut q = p.clone();
                        q[c] = BigInt::from(v);
                        q
                    })
                })
                .collect();
        }
        let mut torsion_parts: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); sig.torsion_orders().len()]];
        if with_torsion {
            for (i, n) in sig.torsion_orders().iter().enumerate() {
                let n = n.to_u64().expect("torsion order too large to enumerate");
                torsion_parts = torsion_parts
                    .into_iter()
                    .flat_map(|p| {
                        (0..n).map(move |v| {
                            let mut q = p.clone();
                            q[i] = BigInt::from(v);
                            q
                        })
                    })
                    .collect();
            }
        }
        let mut out: Vec<GroupElement> = free_parts
            .iter()
            .flat_map(|f| torsion_parts.iter().map(move |t| GroupElement::new(f.clone(), t.clone())))
            .collect();
        out.sort();
        out
    }

    /// The whole box of the ambient group.
    pub fn all_points(&self, sig: &GroupSignature) -> Vec<GroupElement> {
        let coords: Vec<usize> = (0..sig.free_rank()).collect();
        self.points(sig, &coords, true)
    }
}

/// Orders by sup norm, then lexicographically; searches visit small elements first.
pub(crate) fn sort_by_norm(elements: &mut [GroupElement]) {
    elements.sort_by_cached_key(|u| (u.norm(), u.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sizes() {
        let sig = GroupSignature::new(2, vec![BigInt::from(3)]).unwrap();
        let w = Window::new(2);
        assert_eq!(w.all_points(&sig).len(), 25 * 3);
        assert_eq!(w.points(&sig, &[1], false).len(), 5);
        let pts = w.points(&GroupSignature::free(1), &[0], false);
        assert_eq!(pts.first().unwrap(), &GroupElement::from_free(&[-2]));
        assert_eq!(pts.last().unwrap(), &GroupElement::from_free(&[2]));
    }

    #[test]
    fn norm_order() {
        let mut pts = Window::new(1).points(&GroupSignature::free(1), &[0], false);
        sort_by_norm(&mut pts);
        assert_eq!(pts, vec![GroupElement::from_free(&[0]), GroupElement::from_free(&[-1]), GroupElement::from_free(&[1])]);
    }
}
