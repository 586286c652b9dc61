use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::MonoidError;

/// Quadratic irrational `(p + q·√n) / r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    n: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, n: BigInt) -> Result<Self, MonoidError> {
        if !r.is_positive() {
            return Err(MonoidError::InvalidSurd("denominator r must be positive".into()));
        }
        if !n.is_positive() {
            return Err(MonoidError::InvalidSurd("radicand n must be positive".into()));
        }
        if is_square(&n) {
            return Err(MonoidError::InvalidSurd(format!("radicand {n} is a perfect square")));
        }
        if q.is_zero() {
            return Err(MonoidError::InvalidSurd("coefficient q must be nonzero".into()));
        }
        Ok(QuadraticSurd { p, q, r, n })
    }

    /// Skips the irrationality checks. Only meant for negative controls,
    /// e.g. replacing an irrational slope by a rational one; `r > 0` and
    /// `n ≥ 0` are still required for the sign test to be meaningful.
    pub fn new_unchecked(p: BigInt, q: BigInt, r: BigInt, n: BigInt) -> Self {
        assert!(r.is_positive() && !n.is_negative());
        QuadraticSurd { p, q, r, n }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Result<Self, MonoidError> {
        Self::new(BigInt::zero(), BigInt::from(1), BigInt::from(1), BigInt::from(n))
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.p, &self.q, &self.r, &self.n)
    }

    pub fn is_irrational(&self) -> bool {
        !self.q.is_zero() && !is_square(&self.n)
    }

    /// Exact sign of `y − α·x`.
    pub fn sign_of_offset(&self, x: &BigInt, y: &BigInt) -> Ordering {
        // r·(y − αx) = (r·y − p·x) − (q·x)·√n
        let rational = &self.r * y - &self.p * x;
        let radical = &self.q * x;
        sign_of_linear_surd(&rational, &radical, &self.n)
    }
}

/// Sign of `a − b·√n` for `n ≥ 0`.
fn sign_of_linear_surd(a: &BigInt, b: &BigInt, n: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    match (a.cmp(&zero), b.cmp(&zero)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (_, Ordering::Equal) => a.cmp(&zero),
        (Ordering::Greater | Ordering::Equal, Ordering::Less) => Ordering::Greater,
        (Ordering::Less | Ordering::Equal, Ordering::Greater) => Ordering::Less,
        // same signs: compare squares
        (Ordering::Greater, Ordering::Greater) => (a * a).cmp(&(n * b * b)),
        (Ordering::Less, Ordering::Less) => (n * b * b).cmp(&(a * a)),
    }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})/{}", self.p, self.q, self.n, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sqrt2_cone_points() {
        let a = QuadraticSurd::sqrt(2).unwrap();
        // 3 − 2√2 > 0 since 9 > 8
        assert_eq!(a.sign_of_offset(&b(2), &b(3)), Ordering::Greater);
        assert_eq!(a.sign_of_offset(&b(1), &b(1)), Ordering::Less);
        assert_eq!(a.sign_of_offset(&b(-2), &b(-3)), Ordering::Less);
        assert_eq!(a.sign_of_offset(&b(0), &b(0)), Ordering::Equal);
        assert_eq!(a.sign_of_offset(&b(0), &b(-1)), Ordering::Less);
    }

    #[test]
    fn general_surd() {
        // α = (1 + √5)/2 ≈ 1.618
        let a = QuadraticSurd::new(b(1), b(1), b(2), b(5)).unwrap();
        assert_eq!(a.sign_of_offset(&b(5), &b(8)), Ordering::Less);
        assert_eq!(a.sign_of_offset(&b(5), &b(9)), Ordering::Greater);
        assert_eq!(a.sign_of_offset(&b(-5), &b(-8)), Ordering::Greater);
    }

    #[test]
    fn rejects_rationals() {
        assert!(QuadraticSurd::sqrt(4).is_err());
        assert!(QuadraticSurd::new(b(3), b(0), b(2), b(2)).is_err());
        assert!(QuadraticSurd::new(b(0), b(1), b(0), b(2)).is_err());
        let rational = QuadraticSurd::new_unchecked(b(3), b(0), b(2), b(2));
        assert!(!rational.is_irrational());
        assert_eq!(rational.sign_of_offset(&b(2), &b(3)), Ordering::Equal);
    }
}
