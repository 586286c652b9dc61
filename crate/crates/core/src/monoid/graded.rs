//! Membership in finitely generated monoids through a grading.
//!
//! A grading is an integer functional `φ` on the free coordinates. Generators
//! of positive degree are combined by a bounded search (the degree of the
//! target fixes the total), while degree-zero generators must generate a
//! group and are handled by subgroup membership.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ambient::{GroupElement, GroupSignature, Subgroup};

/// Largest coefficient tried when looking for a strictly positive relation.
const RELATION_COEFFICIENT_BOUND: i64 = 4;
/// Largest number of degree-zero generators with nonzero free part.
const MAX_ZERO_DEGREE_GENERATORS: usize = 5;

#[derive(Clone, Debug)]
pub(crate) struct Graded {
    grading: Vec<BigInt>,
    /// Positive-degree generators, largest degree first.
    positive: Vec<(GroupElement, BigInt)>,
    zero: Subgroup,
    /// Reject the empty combination (subsemigroup instead of submonoid).
    nonzero_combination: bool,
}

pub(crate) fn degree(grading: &[BigInt], u: &GroupElement) -> BigInt {
    grading.iter().zip(u.free()).map(|(w, c)| w * c).sum()
}

/// Candidate functionals in `[-3, 3]^d` (`[-1, 1]^d` beyond rank 6), by sup norm then lexicographically.
fn candidate_gradings(d: usize) -> Vec<Vec<BigInt>> {
    let bound: i64 = if d <= 6 { 3 } else { 1 };
    let side = (2 * bound + 1) as usize;
    let total = side.pow(d as u32);
    let mut out: Vec<Vec<i64>> = (0..total)
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let c = (idx % side) as i64 - bound;
                    idx /= side;
                    c
                })
                .collect()
        })
        .collect();
    out.sort_by_key(|v| (v.iter().map(|c| c.abs()).max().unwrap_or(0), v.clone()));
    out.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect()
}

/// Whether some combination with all coefficients in `1..=bound` vanishes.
fn has_positive_relation(vectors: &[Vec<BigInt>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let dim = vectors[0].len();
    let mut coeffs = vec![1i64; vectors.len()];
    loop {
        let vanishes = (0..dim).all(|c| {
            vectors
                .iter()
                .zip(&coeffs)
                .map(|(v, &k)| &v[c] * k)
                .sum::<BigInt>()
                .is_zero()
        });
        if vanishes {
            return true;
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return false;
            }
            if coeffs[i] < RELATION_COEFFICIENT_BOUND {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 1;
            i += 1;
        }
    }
}

impl Graded {
    /// Grading for the monoid generated by `generators`: non-negative on all
    /// of them, with the degree-zero ones generating a group.
    pub(crate) fn for_monoid(
        sig: &GroupSignature,
        generators: &[GroupElement],
        grading: Option<&[BigInt]>,
    ) -> Result<Self, String> {
        if let Some(phi) = grading {
            if phi.len() != sig.free_rank() {
                return Err(format!("grading has {} entries, expected {}", phi.len(), sig.free_rank()));
            }
            let mut memo = HashMap::new();
            return Self::try_monoid(sig, generators, phi, &mut memo)
                .ok_or_else(|| "supplied grading is negative on a generator or its degree-zero generators do not form a group".into());
        }
        let mut memo = HashMap::new();
        candidate_gradings(sig.free_rank())
            .iter()
            .find_map(|phi| Self::try_monoid(sig, generators, phi, &mut memo))
            .ok_or_else(|| "no valid grading found; supply one explicitly".into())
    }

    fn try_monoid(
        sig: &GroupSignature,
        generators: &[GroupElement],
        phi: &[BigInt],
        memo: &mut HashMap<Vec<usize>, bool>,
    ) -> Option<Self> {
        let degrees: Vec<BigInt> = generators.iter().map(|g| degree(phi, g)).collect();
        if degrees.iter().any(Signed::is_negative) {
            return None;
        }
        let zero_idx: Vec<usize> = (0..generators.len()).filter(|&i| degrees[i].is_zero()).collect();
        let free_zero: Vec<usize> = zero_idx
            .iter()
            .copied()
            .filter(|&i| generators[i].free().iter().any(|c| !c.is_zero()))
            .collect();
        if free_zero.len() > MAX_ZERO_DEGREE_GENERATORS {
            return None;
        }
        let is_group = *memo.entry(free_zero.clone()).or_insert_with(|| {
            let vectors: Vec<Vec<BigInt>> = free_zero.iter().map(|&i| generators[i].free().to_vec()).collect();
            has_positive_relation(&vectors)
        });
        if !is_group {
            return None;
        }
        let zero = Subgroup::generated_by(sig, zero_idx.iter().map(|&i| &generators[i]));
        Some(Self::assemble(phi, generators, &degrees, zero, false))
    }

    /// Grading for `⟨base⟩ + (N₀-span of positive \ {0})`: vanishing on
    /// `base`, positive on every element of `positive`.
    pub(crate) fn for_complement(
        sig: &GroupSignature,
        base: &[GroupElement],
        positive: &[GroupElement],
        grading: Option<&[BigInt]>,
    ) -> Result<Self, String> {
        if positive.is_empty() {
            return Err("complement needs at least one positive generator".into());
        }
        let valid = |phi: &[BigInt]| {
            base.iter().all(|g| degree(phi, g).is_zero()) && positive.iter().all(|g| degree(phi, g).is_positive())
        };
        let phi = match grading {
            Some(phi) => {
                if phi.len() != sig.free_rank() || !valid(phi) {
                    return Err("supplied grading must vanish on the base subgroup and be positive on positive generators".into());
                }
                phi.to_vec()
            }
            None => candidate_gradings(sig.free_rank())
                .into_iter()
                .find(|phi| valid(phi))
                .ok_or_else(|| "no grading separates the positive generators from the base subgroup".to_string())?,
        };
        let degrees: Vec<BigInt> = positive.iter().map(|g| degree(&phi, g)).collect();
        let zero = Subgroup::generated_by(sig, base);
        Ok(Self::assemble(&phi, positive, &degrees, zero, true))
    }

    fn assemble(
        phi: &[BigInt],
        generators: &[GroupElement],
        degrees: &[BigInt],
        zero: Subgroup,
        nonzero_combination: bool,
    ) -> Self {
        let mut positive: Vec<(GroupElement, BigInt)> = generators
            .iter()
            .zip(degrees)
            .filter(|(_, d)| d.is_positive())
            .map(|(g, d)| (g.clone(), d.clone()))
            .collect();
        positive.sort_by(|a, b| b.1.cmp(&a.1));
        Graded { grading: phi.to_vec(), positive, zero, nonzero_combination }
    }

    pub(crate) fn degree_of(&self, u: &GroupElement) -> BigInt {
        degree(&self.grading, u)
    }

    pub(crate) fn zero_subgroup(&self) -> &Subgroup {
        &self.zero
    }

    pub(crate) fn positive_generators(&self) -> impl Iterator<Item = &GroupElement> {
        self.positive.iter().map(|(g, _)| g)
    }

    pub(crate) fn contains(&self, sig: &GroupSignature, u: &GroupElement) -> bool {
        let t = self.degree_of(u);
        if t.is_negative() || (self.nonzero_combination && t.is_zero()) {
            return false;
        }
        self.search(sig, 0, &t, u.clone())
    }

    fn search(&self, sig: &GroupSignature, idx: usize, remaining: &BigInt, residual: GroupElement) -> bool {
        if remaining.is_zero() {
            return self.zero.contains(&residual);
        }
        let Some((g, d)) = self.positive.get(idx) else {
            return false;
        };
        if idx + 1 == self.positive.len() {
            let (k, r) = remaining.div_rem(d);
            return r.is_zero() && self.zero.contains(&sig.sub(&residual, &sig.scale(g, k)));
        }
        let max = (remaining / d).to_u64().unwrap_or(u64::MAX);
        let mut residual = residual;
        let mut left = remaining.clone();
        for _ in 0..=max {
            if self.search(sig, idx + 1, &left, residual.clone()) {
                return true;
            }
            residual = sig.sub(&residual, g);
            left -= d;
        }
        false
    }
}
