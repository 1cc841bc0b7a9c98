//! Exact arithmetic in Q[sqrt(q)].
//!
//! Every error bound in this crate is a finite product/sum of rationals and
//! powers of sqrt(q) (the binomial coefficients with real upper argument all
//! have an integer lower index, so they reduce to falling factorials). Values
//! therefore live exactly in the quadratic extension Q[sqrt(q)], and bound
//! comparisons against exact rationals can be decided with integer sign
//! logic — no rounding enters the verdicts. Rounding (always upward) happens
//! only when a bound is rendered as a decimal for reports.

use crate::binom::decimal_sci_up;
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `rat + surd * sqrt(radicand)`. When the radicand is a perfect square the
/// surd part is folded into the rational part, so `surd != 0` implies the
/// radicand is irrational.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad {
    rat: BigRational,
    surd: BigRational,
    radicand: u64,
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl Quad {
    pub fn new(radicand: u64) -> Self {
        Quad {
            rat: BigRational::zero(),
            surd: BigRational::zero(),
            radicand,
        }
    }

    pub fn from_rational(radicand: u64, rat: BigRational) -> Self {
        Quad {
            rat,
            surd: BigRational::zero(),
            radicand,
        }
    }

    pub fn from_int(radicand: u64, n: impl Into<BigInt>) -> Self {
        Self::from_rational(radicand, BigRational::from_integer(n.into()))
    }

    /// `a + b*sqrt(radicand)`, folding perfect squares into the rational part.
    pub fn with_parts(radicand: u64, rat: BigRational, surd: BigRational) -> Self {
        if let Some(root) = isqrt_exact(radicand) {
            Quad {
                rat: rat + surd * BigRational::from_integer(BigInt::from(root)),
                surd: BigRational::zero(),
                radicand,
            }
        } else {
            Quad { rat, surd, radicand }
        }
    }

    /// sqrt(radicand)^exp.
    pub fn sqrt_pow(radicand: u64, exp: u64) -> Self {
        let half = BigRational::from_integer(BigInt::from(radicand).pow((exp / 2) as u32));
        if exp % 2 == 0 {
            Self::from_rational(radicand, half)
        } else {
            Self::with_parts(radicand, BigRational::zero(), half)
        }
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    fn assert_same(&self, other: &Quad) {
        assert_eq!(
            self.radicand, other.radicand,
            "mixed radicands in Quad arithmetic"
        );
    }

    pub fn add(&self, other: &Quad) -> Quad {
        self.assert_same(other);
        Quad {
            rat: &self.rat + &other.rat,
            surd: &self.surd + &other.surd,
            radicand: self.radicand,
        }
    }

    pub fn sub(&self, other: &Quad) -> Quad {
        self.assert_same(other);
        Quad {
            rat: &self.rat - &other.rat,
            surd: &self.surd - &other.surd,
            radicand: self.radicand,
        }
    }

    pub fn mul(&self, other: &Quad) -> Quad {
        self.assert_same(other);
        let q = BigRational::from_integer(BigInt::from(self.radicand));
        Quad {
            rat: &self.rat * &other.rat + &self.surd * &other.surd * &q,
            surd: &self.rat * &other.surd + &self.surd * &other.rat,
            radicand: self.radicand,
        }
    }

    pub fn mul_rational(&self, c: &BigRational) -> Quad {
        Quad {
            rat: &self.rat * c,
            surd: &self.surd * c,
            radicand: self.radicand,
        }
    }

    pub fn neg(&self) -> Quad {
        Quad {
            rat: -self.rat.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Quad {
        assert!(!self.is_zero(), "division by zero in Quad");
        let q = BigRational::from_integer(BigInt::from(self.radicand));
        // (a + b s)^-1 = (a - b s) / (a^2 - b^2 q)
        let norm = &self.rat * &self.rat - &self.surd * &self.surd * &q;
        assert!(!norm.is_zero(), "zero norm for nonzero Quad");
        let inv = norm.recip();
        Quad {
            rat: &self.rat * &inv,
            surd: -(&self.surd * &inv),
            radicand: self.radicand,
        }
    }

    pub fn div(&self, other: &Quad) -> Quad {
        self.mul(&other.recip())
    }

    /// Exact sign of `a + b*sqrt(q)`.
    pub fn sign(&self) -> Ordering {
        let sa = if self.rat.is_zero() {
            Ordering::Equal
        } else if self.rat.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        let sb = if self.surd.is_zero() {
            Ordering::Equal
        } else if self.surd.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: compare a^2 with b^2 q; the radicand is
                // irrational here so equality is impossible.
                let q = BigRational::from_integer(BigInt::from(self.radicand));
                let lhs = &self.rat * &self.rat;
                let rhs = &self.surd * &self.surd * &q;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("sqrt of non-square is irrational"),
                }
            }
        }
    }

    pub fn cmp_quad(&self, other: &Quad) -> Ordering {
        self.sub(other).sign()
    }

    pub fn cmp_rational(&self, other: &BigRational) -> Ordering {
        self.sub(&Quad::from_rational(self.radicand, other.clone()))
            .sign()
    }

    /// Smallest-terms rational upper bound within `2^-(2*extra_digits)` of
    /// the true value (directed: never below it).
    pub fn upper_rational(&self, digits: usize) -> BigRational {
        if self.surd.is_zero() {
            return self.rat.clone();
        }
        let scale = BigInt::from(10).pow((digits + 2) as u32);
        let scaled = BigInt::from(self.radicand) * &scale * &scale;
        let root = scaled.sqrt(); // floor
        let (lo, hi) = (
            BigRational::new(root.clone(), scale.clone()),
            BigRational::new(root + BigInt::one(), scale),
        );
        if self.surd.is_positive() {
            &self.rat + &self.surd * hi
        } else {
            &self.rat + &self.surd * lo
        }
    }

    /// Upward-rounded scientific rendering for non-negative values.
    pub fn decimal_up(&self, digits: usize) -> String {
        debug_assert!(self.sign() != Ordering::Less);
        decimal_sci_up(&self.upper_rational(digits + 2), digits)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::INFINITY);
        if self.surd.is_zero() {
            r
        } else {
            r + self.surd.to_f64().unwrap_or(f64::INFINITY) * (self.radicand as f64).sqrt()
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt({})", self.surd, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.surd, self.radicand)
        }
    }
}

/// Falling factorial (x)_r = x (x-1) ... (x-r+1) in Q[sqrt(q)].
pub fn falling_quad(x: &Quad, r: u64) -> Quad {
    let mut acc = Quad::from_int(x.radicand(), 1);
    let mut term = x.clone();
    for i in 0..r {
        if i > 0 {
            term = term.sub(&Quad::from_int(x.radicand(), 1));
        }
        acc = acc.mul(&term);
    }
    acc
}

/// Binomial with real upper argument and integer lower index:
/// C(x, r) = (x)_r / r!.
pub fn binomial_quad(x: &Quad, r: u64) -> Quad {
    let fact = BigRational::from_integer(crate::binom::factorial(r));
    falling_quad(x, r).mul_rational(&fact.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom::rat_int;

    fn q5(a: i64, b: i64) -> Quad {
        Quad::with_parts(5, rat_int(a), rat_int(b))
    }

    #[test]
    fn perfect_square_folds() {
        let x = Quad::with_parts(9, rat_int(1), rat_int(2));
        assert!(x.is_rational());
        assert_eq!(x.rational_part(), &rat_int(7));
        assert_eq!(Quad::sqrt_pow(4, 3).rational_part(), &rat_int(8));
    }

    #[test]
    fn sign_logic() {
        assert_eq!(q5(0, 0).sign(), Ordering::Equal);
        assert_eq!(q5(-2, 1).sign(), Ordering::Greater); // sqrt5 > 2
        assert_eq!(q5(-3, 1).sign(), Ordering::Less); // sqrt5 < 3
        assert_eq!(q5(3, -1).sign(), Ordering::Greater);
        assert_eq!(q5(2, -1).sign(), Ordering::Less);
        assert_eq!(q5(-1, -1).sign(), Ordering::Less);
    }

    #[test]
    fn field_ops() {
        let x = q5(2, 3); // 2 + 3 sqrt5
        let y = q5(-1, 1);
        let prod = x.mul(&y);
        // (2 + 3s)(-1 + s) = -2 + 2s - 3s + 3*5 = 13 - s
        assert_eq!(prod, q5(13, -1));
        let back = prod.div(&y);
        assert_eq!(back, x);
    }

    #[test]
    fn falling_and_binomial() {
        // (sqrt5 + 2)_2 = (sqrt5+2)(sqrt5+1) = 5 + 3 sqrt5 + 2 = 7 + 3 sqrt5
        let x = q5(2, 1);
        assert_eq!(falling_quad(&x, 2), q5(7, 3));
        // integer case agrees with integer binomials
        let n = Quad::from_int(5, 7);
        let b = binomial_quad(&n, 3);
        assert_eq!(b.rational_part(), &rat_int(35));
    }

    #[test]
    fn upper_rational_is_upper() {
        let x = q5(0, 1); // sqrt5
        let up = x.upper_rational(12);
        assert_eq!(x.cmp_rational(&up), Ordering::Less);
        let down = q5(0, -1).upper_rational(12);
        assert_eq!(q5(0, -1).cmp_rational(&down), Ordering::Less);
    }
}
