//! Exact integer and rational combinatorics used by every closed form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// C(n, k) with the convention C(n, k) = 0 for k > n or k < 0.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial (n)_r = n (n-1) ... (n-r+1) over the integers.
pub fn falling(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= BigInt::from(n - i);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// q^t as a BigInt.
pub fn pow_u(base: u64, exp: u64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// q^t for possibly negative t, as an exact rational.
pub fn pow_i(base: u64, exp: i64) -> BigRational {
    let mag = BigRational::from_integer(pow_u(base, exp.unsigned_abs()));
    if exp >= 0 {
        mag
    } else {
        mag.recip()
    }
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Demotes an exact rational to BigInt, failing loudly if it is not integral.
pub fn expect_integer(x: &BigRational, what: &str) -> crate::error::Result<BigInt> {
    if x.denom().is_one() {
        Ok(x.numer().clone())
    } else {
        Err(crate::error::Error::NonIntegralResult(format!(
            "{what} = {x}"
        )))
    }
}

/// Renders a non-negative rational in scientific notation with `digits`
/// significant digits, rounding the magnitude upward (never under-reports).
/// Exact zeros render as "0".
pub fn decimal_sci_up(x: &BigRational, digits: usize) -> String {
    assert!(!x.is_negative(), "upward rendering expects non-negative input");
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    // exponent = floor(log10 x), found by digit counts then corrected.
    let num_digits = x.numer().to_string().len() as i64;
    let den_digits = x.denom().to_string().len() as i64;
    let mut exponent = num_digits - den_digits;
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> BigRational {
        let mag = BigRational::from_integer(ten.clone().pow(e.unsigned_abs() as u32));
        if e >= 0 {
            mag
        } else {
            mag.recip()
        }
    };
    if *x >= pow10(exponent + 1) {
        exponent += 1;
    }
    while *x < pow10(exponent) {
        exponent -= 1;
    }
    // mantissa = ceil(x / 10^(exponent - digits + 1))
    let scaled = x / pow10(exponent - digits as i64 + 1);
    let mut mant = scaled.ceil().to_integer();
    let cap = ten.pow(digits as u32);
    if mant >= cap {
        mant = &mant / &ten;
        exponent += 1;
    }
    let s = mant.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{head}e{exponent}")
    } else {
        format!("{head}.{tail}e{exponent}")
    }
}

/// Exact rendering for report columns: integers plainly, other rationals as
/// `num/den`.
pub fn exact_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn falling_small() {
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(falling(5, 0), BigInt::one());
        assert_eq!(falling(3, 5), BigInt::zero());
    }

    #[test]
    fn sci_up_rounds_outward() {
        let x = BigRational::new(BigInt::from(1), BigInt::from(3));
        let s = decimal_sci_up(&x, 4);
        assert_eq!(s, "3.334e-1");
        let y = BigRational::from_integer(BigInt::from(1000));
        assert_eq!(decimal_sci_up(&y, 3), "1.00e3");
        let z = BigRational::new(BigInt::from(999951), BigInt::from(1000));
        // 999.951 -> three significant digits rounded up crosses into 1.00e3
        assert_eq!(decimal_sci_up(&z, 3), "1.00e3");
    }

    #[test]
    fn exact_strings() {
        assert_eq!(exact_string(&rat_int(42)), "42");
        let x = BigRational::new(BigInt::from(2), BigInt::from(5));
        assert_eq!(exact_string(&x), "2/5");
    }
}
