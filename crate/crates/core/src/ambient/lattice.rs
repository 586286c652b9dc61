//! Integer lattices: Hermite normal form, integer kernels and subgroups of
//! the ambient group.
//!
//! Subgroups of `Z^d ⊕ Z/n₁ ⊕ … ⊕ Z/nₖ` are represented by their preimage
//! under the lift from `Z^{d+k}`, i.e. a full lattice containing the torsion
//! relations `nᵢ·e_{d+i}`. The preimage is stored in row Hermite normal form,
//! so two subgroups are equal exactly when their bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};


use super::{GroupElement, GroupSignature};

pub type IntRow = Vec<BigInt>;

struct Echelon {
    rows: Vec<IntRow>,
    transform: Vec<IntRow>,
    rank: usize,
}

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-reduces `rows` by unimodular operations into Hermite normal form:
/// echelon shape, positive pivots, entries above each pivot in `[0, pivot)`.
/// The accumulated transform satisfies `transform · input = rows`.
fn echelon(mut rows: Vec<IntRow>, ncols: usize) -> Echelon {
    let m = rows.len();
    let mut transform: Vec<IntRow> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == m {
            break;
        }
        loop {
            let pivot = (rank..m)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            transform.swap(rank, p);
            let mut cleared = true;
            for i in rank + 1..m {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[rank][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[rank], &q);
                let (head, tail) = transform.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[rank], &q);
                if !rows[i][c].is_zero() {
                    cleared = false;
                }
            }
            if !cleared {
                continue;
            }
            if rows[rank][c].is_negative() {
                rows[rank].iter_mut().for_each(|x| *x = -&*x);
                transform[rank].iter_mut().for_each(|x| *x = -&*x);
            }
            for i in 0..rank {
                let q = rows[i][c].div_floor(&rows[rank][c]);
                let (head, tail) = rows.split_at_mut(rank);
                sub_multiple(&mut head[i], &tail[0], &q);
                let (head, tail) = transform.split_at_mut(rank);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
            rank += 1;
            break;
        }
    }
    Echelon { rows, transform, rank }
}

/// Hermite normal form basis (nonzero rows only) of the row lattice.
pub fn hermite_normal_form(rows: &[IntRow], ncols: usize) -> Vec<IntRow> {
    let e = echelon(rows.to_vec(), ncols);
    e.rows.into_iter().take(e.rank).collect()
}

/// Basis of `{x ∈ Z^m : Σ xᵢ·rowᵢ = 0}`.
pub fn integer_kernel(rows: &[IntRow], ncols: usize) -> Vec<IntRow> {
    let e = echelon(rows.to_vec(), ncols);
    e.transform.into_iter().skip(e.rank).collect()
}

/// Reduces `v` against an HNF basis; `Some(coefficients)` iff `v` is in the lattice.
fn reduce_in_basis(basis: &[IntRow], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    let mut row = 0;
    for c in 0..v.len() {
        let is_pivot = row < basis.len() && !basis[row][c].is_zero() && basis[row][..c].iter().all(Zero::is_zero);
        if is_pivot {
            let (q, r) = v[c].div_mod_floor(&basis[row][c]);
            if !r.is_zero() {
                return false;
            }
            sub_multiple(&mut v, &basis[row], &q);
            row += 1;
        } else if !v[c].is_zero() {
            return false;
        }
    }
    true
}

/// Subgroup of the ambient group, stored canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    signature: GroupSignature,
    basis: Vec<IntRow>,
}

impl Subgroup {
    pub fn generated_by<'a>(signature: &GroupSignature, generators: impl IntoIterator<Item = &'a GroupElement>) -> Self {
        let mut rows: Vec<IntRow> = generators.into_iter().map(|g| signature.lift(g)).collect();
        rows.extend(signature.torsion_relations());
        Subgroup { basis: hermite_normal_form(&rows, signature.dim()), signature: signature.clone() }
    }

    pub fn trivial(signature: &GroupSignature) -> Self {
        Self::generated_by(signature, std::iter::empty())
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.signature
    }

    pub fn contains(&self, u: &GroupElement) -> bool {
        reduce_in_basis(&self.basis, &self.signature.lift(u))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|row| reduce_in_basis(&other.basis, row))
    }

    /// Canonical generators: the HNF rows mapped back into the group, with
    /// rows that vanish there (pure torsion relations) dropped.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.basis
            .iter()
            .map(|row| self.signature.unlift(row))
            .filter(|g| !g.is_identity())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

/// Lattice of relations `(n, m)` with `n·a + m·b = 0`, in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationLattice {
    generators: Vec<(BigInt, BigInt)>,
}

impl RelationLattice {
    pub fn generators(&self) -> &[(BigInt, BigInt)] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, n: &BigInt, m: &BigInt) -> bool {
        let basis: Vec<IntRow> = self.generators.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        reduce_in_basis(&basis, &[n.clone(), m.clone()])
    }
}

pub(super) fn relation_lattice(sig: &GroupSignature, a: &GroupElement, b: &GroupElement) -> RelationLattice {
    // kernel of (n, m, t) ↦ n·a + m·b + Σ tᵢ·nᵢ·e_{d+i} in Z^{d+k}, projected onto (n, m)
    let mut rows = vec![sig.lift(a), sig.lift(b)];
    rows.extend(sig.torsion_relations());
    let projected: Vec<IntRow> = integer_kernel(&rows, sig.dim())
        .into_iter()
        .map(|k| vec![k[0].clone(), k[1].clone()])
        .collect();
    let generators = hermite_normal_form(&projected, 2)
        .into_iter()
        .map(|row| {
            let mut it = row.into_iter();
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    RelationLattice { generators }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> IntRow {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_shape() {
        let h = hermite_normal_form(&[row(&[2, 4]), row(&[3, 6])], 2);
        assert_eq!(h, vec![row(&[1, 2])]);
        let h = hermite_normal_form(&[row(&[4, 1]), row(&[6, 3])], 2);
        // lattice spanned by (4,1),(6,3) has determinant 6
        assert_eq!(h, vec![row(&[2, 2]), row(&[0, 3])]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = vec![row(&[2, 4, 1]), row(&[3, 6, 0]), row(&[1, 2, 5])];
        for k in integer_kernel(&rows, 3) {
            for c in 0..3 {
                let s: BigInt = k.iter().zip(&rows).map(|(x, r)| x * &r[c]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn relations_free() {
        let g = GroupSignature::free(2);
        let a = g.element_from_i64(&[1, 0]).unwrap();
        let b = g.element_from_i64(&[0, 1]).unwrap();
        assert!(g.solve_relations(&a, &b).unwrap().is_trivial());

        let a = g.element_from_i64(&[2, 4]).unwrap();
        let b = g.element_from_i64(&[3, 6]).unwrap();
        let lat = g.solve_relations(&a, &b).unwrap();
        assert_eq!(lat.generators(), &[(BigInt::from(3), BigInt::from(-2))]);
    }

    #[test]
    fn relations_torsion() {
        let g = GroupSignature::new(0, vec![BigInt::from(6)]).unwrap();
        let a = g.element_from_i64(&[2]).unwrap();
        let b = g.element_from_i64(&[3]).unwrap();
        let lat = g.solve_relations(&a, &b).unwrap();
        assert_eq!(
            lat.generators(),
            &[(BigInt::from(3), BigInt::zero()), (BigInt::zero(), BigInt::from(2))]
        );
    }

    #[test]
    fn subgroup_membership() {
        let g = GroupSignature::new(1, vec![BigInt::from(4)]).unwrap();
        let s = Subgroup::generated_by(&g, &[g.element_from_i64(&[2, 2]).unwrap()]);
        assert!(s.contains(&g.element_from_i64(&[4, 0]).unwrap()));
        assert!(s.contains(&g.element_from_i64(&[-2, 2]).unwrap()));
        assert!(!s.contains(&g.element_from_i64(&[2, 0]).unwrap()));
        assert!(!s.contains(&g.element_from_i64(&[1, 1]).unwrap()));
    }

    #[test]
    fn subgroup_equality_is_canonical() {
        let g = GroupSignature::free(2);
        let a = Subgroup::generated_by(
            &g,
            &[g.element_from_i64(&[1, 1]).unwrap(), g.element_from_i64(&[1, 0]).unwrap()],
        );
        let b = Subgroup::generated_by(
            &g,
            &[g.element_from_i64(&[0, 1]).unwrap(), g.element_from_i64(&[1, 0]).unwrap()],
        );
        assert_eq!(a, b);
        assert!(Subgroup::trivial(&g).is_trivial());
    }
}
