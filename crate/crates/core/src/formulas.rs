//! Closed-form main terms and exact error bounds for the counting problems.
//!
//! Main terms are exact rationals. Error bounds live in Q[sqrt(q)] (see
//! `quad`), so "oracle within bound" is decided by exact sign tests; decimal
//! output is rounded upward only at the rendering step.

use crate::binom::{binomial, exact_string, expect_integer, falling, pow_i, pow_u, rat_int};
use crate::error::{Error, Result};
use crate::quad::{binomial_quad, falling_quad, Quad};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// mu_s = sum_{j=0}^{s} (-1)^j C(q-r, j) q^{-j}, the truncated alternating
/// series whose value multiplies the main term C(q, r) q^{k-r}.
pub fn mu(s: usize, q: u64, r: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 0..=s {
        let term = rat_int(binomial(q - r, j as i64)) * pow_i(q, -(j as i64));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Count of degree-(<= k-1) polynomials at Hamming-root-count r from the
/// zero polynomial: the MacWilliams weight-distribution value for an MDS
/// code, valid for 0 <= r <= k-1.
pub fn macwilliams_n0(q: u64, k: usize, r: usize) -> Result<BigInt> {
    assert!(r < k, "MacWilliams form needs 0 <= r <= k-1");
    let mut inner = BigRational::zero();
    for j in 0..=(k - 1 - r) {
        let term = rat_int(binomial(q - r as u64 - 1, j as i64)) * pow_i(q, -(j as i64));
        if j % 2 == 0 {
            inner += term;
        } else {
            inner -= term;
        }
    }
    let value = rat_int(binomial(q, r as i64))
        * pow_i(q, (k - r) as i64 - 1)
        * rat_int(q as i64 - 1)
        * inner;
    expect_integer(&value, "MacWilliams count")
}

/// N(x^k, r) in closed form: C(q, r) q^{k-r} mu_{k-r}, valid for
/// 0 <= r <= k. Always an integer.
pub fn knopfmacher_nxk(q: u64, k: usize, r: usize) -> Result<BigInt> {
    assert!(r <= k);
    let value = rat_int(binomial(q, r as i64)) * pow_i(q, (k - r) as i64) * mu(k - r, q, r as u64);
    expect_integer(&value, "deep-hole count")
}

/// Main term of the headline bound: mu_{k+m-r} C(q, r) q^{k-r}, exact.
pub fn count_main_term(q: u64, k: usize, m: usize, r: usize) -> BigRational {
    assert!(r <= k + m);
    mu(k + m - r, q, r as u64) * rat_int(binomial(q, r as i64)) * pow_i(q, k as i64 - r as i64)
}

/// Error bound of the headline count bound:
/// sum_{j=k+1}^{k+m} C(j, r) C(q/p + m sqrt(q) + j, j) C(m-1, k+m-j)
/// sqrt(q)^{k+m-j}, exact in Q[sqrt(q)]. Empty (zero) when m = 0.
pub fn count_error_bound(q: u64, p: u64, k: usize, m: usize, r: usize) -> Quad {
    let mut acc = Quad::new(q);
    if m == 0 {
        return acc;
    }
    let q_over_p = q / p; // q = p^e, exact
    for j in (k + 1)..=(k + m) {
        let cjr = binomial(j as u64, r as i64);
        if cjr.is_zero() {
            continue;
        }
        let top = Quad::with_parts(q, rat_int(BigInt::from(q_over_p + j as u64)), rat_int(m as i64));
        let mid = binomial_quad(&top, j as u64);
        let tail = binomial(m as u64 - 1, (k + m - j) as i64);
        if tail.is_zero() {
            continue;
        }
        let term = mid
            .mul_rational(&rat_int(cjr))
            .mul_rational(&rat_int(tail))
            .mul(&Quad::sqrt_pow(q, (k + m - j) as u64));
        acc = acc.add(&term);
    }
    acc
}

/// Bound on |M(f, r) - C(q, r) q^{k-r}| for k+1 <= r <= d = k+m:
/// C(q/p + m sqrt(q) + r, r) C(m-1, d-r) sqrt(q)^{d-r}.
pub fn pair_error_bound(q: u64, p: u64, k: usize, m: usize, r: usize) -> Quad {
    let d = k + m;
    assert!(r >= k + 1 && r <= d);
    let top = Quad::with_parts(q, rat_int(BigInt::from(q / p + r as u64)), rat_int(m as i64));
    binomial_quad(&top, r as u64)
        .mul_rational(&rat_int(binomial(m as u64 - 1, (d - r) as i64)))
        .mul(&Quad::sqrt_pow(q, (d - r) as u64))
}

/// Main term C(q, r) q^{k-r} for the pair count, exact (rational when r > k).
pub fn pair_main_term(q: u64, k: usize, r: usize) -> BigRational {
    rat_int(binomial(q, r as i64)) * pow_i(q, k as i64 - r as i64)
}

/// Single-term form of the error bound at r = k+m:
/// C(q/p + m sqrt(q) + k + m, k + m).
pub fn top_r_error_bound(q: u64, p: u64, k: usize, m: usize) -> Quad {
    let top = Quad::with_parts(
        q,
        rat_int(BigInt::from(q / p + (k + m) as u64)),
        rat_int(m as i64),
    );
    binomial_quad(&top, (k + m) as u64)
}

/// Combined two-term form at r = k+m-1:
/// C(q/p + m sqrt(q) + k + m, k + m) ((m-1) sqrt(q) + k + m).
pub fn next_r_combined_bound(q: u64, p: u64, k: usize, m: usize) -> Quad {
    let factor = Quad::with_parts(
        q,
        rat_int((k + m) as i64),
        rat_int(m as i64 - 1),
    );
    top_r_error_bound(q, p, k, m).mul(&factor)
}

/// Main term (q)_r q^{k-r} (or (q-1)_r q^{k-r} over nonzero tuples) for the
/// ordered-tuple congruence count.
pub fn tuple_main_term(q: u64, k: i64, r: usize, nonzero: bool) -> BigRational {
    let base = if nonzero { q - 1 } else { q };
    rat_int(falling(base, r as u64)) * pow_i(q, k - r as i64)
}

/// Bound on the ordered-tuple congruence count:
/// (q/p + m sqrt(q) + r - 1)_r C(m-1, d-r) sqrt(q)^{d-r}; over nonzero
/// tuples the leading rational becomes (q-1)/p.
pub fn tuple_error_bound(q: u64, p: u64, d: usize, m: usize, r: usize, nonzero: bool) -> Quad {
    let lead = if nonzero {
        BigRational::new(BigInt::from(q - 1), BigInt::from(p))
    } else {
        rat_int(BigInt::from(q / p))
    };
    // m = 0 leaves only the trivial character and a degenerate zero bound
    let c = if m == 0 {
        BigInt::zero()
    } else {
        binomial(m as u64 - 1, (d - r) as i64)
    };
    if c.is_zero() {
        return Quad::new(q);
    }
    let top = Quad::with_parts(q, lead + rat_int(r as i64 - 1), rat_int(m as i64));
    falling_quad(&top, r as u64)
        .mul_rational(&rat_int(c))
        .mul(&Quad::sqrt_pow(q, (d - r) as u64))
}

/// The two-tier diagnostic weight
/// w(S) = ((q^m - S)/q^m) ((m-1) sqrt(q) + r - 1)_r
///      + (S/q^m) (q/p + (m-1) sqrt(q) + r - 1)_r,
/// where S counts the nontrivial characters of order at most r.
pub fn ws_diagnostic(q: u64, p: u64, m: usize, r: usize, s_count: u64) -> Quad {
    let qm = pow_u(q, m as u64);
    let s = BigInt::from(s_count);
    let frac_rest = BigRational::new(&qm - &s, qm.clone());
    let frac_s = BigRational::new(s, qm);
    let a = Quad::with_parts(q, rat_int(r as i64 - 1), rat_int(m as i64 - 1));
    let b = Quad::with_parts(
        q,
        rat_int(BigInt::from(q / p)) + rat_int(r as i64 - 1),
        rat_int(m as i64 - 1),
    );
    falling_quad(&a, r as u64)
        .mul_rational(&frac_rest)
        .add(&falling_quad(&b, r as u64).mul_rational(&frac_s))
}

/// Reconstructs N(f, r) from the pair counts via the weighted
/// inclusion-exclusion identity:
/// sum_{j=r}^{k} (-1)^{j-r} C(j,r) C(q,j) q^{k-j}
/// + sum_{j=k+1}^{d} (-1)^{j-r} C(j,r) M(f, j).
pub fn reconstruct_count_n(q: u64, k: usize, d: usize, r: usize, pair_counts: &[u64]) -> BigInt {
    // pair_counts[j] = M(f, j) for j in 0..=d (only j > k are consulted)
    let mut acc = BigInt::zero();
    for j in r..=k.min(d) {
        let term = binomial(j as u64, r as i64) * binomial(q, j as i64) * pow_u(q, (k - j) as u64);
        if (j - r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    for j in (k + 1).max(r)..=d {
        let term = binomial(j as u64, r as i64) * BigInt::from(pair_counts[j]);
        if (j - r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// One verified bound instance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub p: u64,
    pub k: usize,
    /// None marks the codeword (zero-polynomial) route.
    pub m: Option<usize>,
    pub r: usize,
    pub f: String,
    /// exact rational main term, as an exact string
    pub main_term: String,
    /// upward-rounded decimal of the exact bound
    pub error_bound: String,
    pub oracle_value: Option<String>,
    pub holds: Option<bool>,
    pub relative_gap: Option<f64>,
}

/// Display digits used for bound rendering, from the precision-bits knob.
pub fn digits_for_bits(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(6.0) as usize
}

/// Assembles main term, error bound, oracle value, and the pass flag for one
/// (f, k, r) instance. Routes the codeword case (f normalizing to zero) to
/// the exact MacWilliams formula with a zero bound.
pub fn verify_bound(
    f: &crate::poly::Poly,
    k: usize,
    r: usize,
    budget: u64,
    digits: usize,
) -> Result<BoundReport> {
    let field = f.field().clone();
    let q = field.q();
    let p = field.p();
    let norm = crate::counts::normalize(f, k);
    let oracle = crate::counts::count_n(&norm, k, r, budget)?;
    let (m, main, bound) = match norm.degree() {
        None => {
            // codeword: exact histogram is MacWilliams below k, 1 at r = q
            let main = if r < k {
                rat_int(macwilliams_n0(q, k, r)?)
            } else if r as u64 == q {
                rat_int(1)
            } else {
                rat_int(0)
            };
            (None, main, Quad::new(q))
        }
        Some(d) => {
            let m = d - k;
            let main = count_main_term(q, k, m, r);
            let bound = count_error_bound(q, p, k, m, r);
            (Some(m), main, bound)
        }
    };
    let gap = (rat_int(BigInt::from(oracle)) - &main).abs();
    let holds = match bound.cmp_rational(&gap) {
        Ordering::Less => false,
        _ => true,
    };
    let relative_gap = if bound.is_zero() {
        None
    } else {
        let b = bound.to_f64();
        let g = gap.to_f64().unwrap_or(f64::INFINITY);
        Some(g / b)
    };
    Ok(BoundReport {
        q,
        p,
        k,
        m,
        r,
        f: norm.compact_string(),
        main_term: exact_string(&main),
        error_bound: format!("~{}", bound.decimal_up(digits)),
        oracle_value: Some(oracle.to_string()),
        holds: Some(holds),
        relative_gap,
    })
}

/// Exact comparison |oracle - main| <= bound.
pub fn bound_holds(oracle: u64, main: &BigRational, bound: &Quad) -> bool {
    let gap = (rat_int(BigInt::from(oracle)) - main).abs();
    bound.cmp_rational(&gap) != Ordering::Less
}

// ---------------------------------------------------------------------------
// asymptotic-regime diagnostics
// ---------------------------------------------------------------------------

/// Scaling exponents for the asymptotic regime k = floor(c p),
/// m = floor(p^delta), r = k + floor(p^lambda).
#[derive(Debug, Clone)]
pub struct RegimeParams {
    pub c: BigRational,
    pub delta: BigRational,
    pub lambda: BigRational,
}

impl RegimeParams {
    pub fn new(c: BigRational, delta: BigRational, lambda: BigRational) -> Result<Self> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        if c <= zero || c >= one {
            return Err(Error::Range("c must lie in (0, 1)".into()));
        }
        if delta <= zero || delta >= quarter {
            return Err(Error::Range("delta must lie in (0, 1/4)".into()));
        }
        if lambda <= zero || lambda >= delta {
            return Err(Error::Range("lambda must lie in (0, delta)".into()));
        }
        Ok(RegimeParams { c, delta, lambda })
    }

    /// floor(p^x) for rational x = num/den via exact integer comparisons.
    fn floor_pow(p: u64, x: &BigRational) -> u64 {
        let num = x.numer().to_u32().expect("small exponent numerator");
        let den = x.denom().to_u32().expect("small exponent denominator");
        let target = BigInt::from(p).pow(num);
        let mut t = 1u64;
        while BigInt::from(t + 1).pow(den) <= target {
            t += 1;
        }
        t
    }

    pub fn derive(&self, p: u64) -> (usize, usize, usize) {
        let k = (self.c.clone() * rat_int(BigInt::from(p))).floor().to_integer();
        let k = k.to_u64().unwrap() as usize;
        let m = Self::floor_pow(p, &self.delta) as usize;
        let r = k + Self::floor_pow(p, &self.lambda) as usize;
        (k, m, r)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegimeRow {
    pub p: u64,
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub main_term: String,
    pub error_bound: String,
    /// bound / main, upward-rounded
    pub ratio: String,
    pub ratio_f64: f64,
    /// E_{j+1} > E_j for all emitted j
    pub e_increasing: bool,
    /// index attaining max E_j
    pub e_max_at: usize,
}

/// j-th error term E_j in the prime-field regime (q = p).
pub fn regime_e_term(p: u64, k: usize, m: usize, r: usize, j: usize) -> Quad {
    let cjr = binomial(j as u64, r as i64);
    if cjr.is_zero() {
        return Quad::new(p);
    }
    let top = Quad::with_parts(p, rat_int(1 + j as i64), rat_int(m as i64));
    binomial_quad(&top, j as u64)
        .mul_rational(&rat_int(cjr))
        .mul_rational(&rat_int(binomial(m as u64 - 1, (k + m - j) as i64)))
        .mul(&Quad::sqrt_pow(p, (k + m - j) as u64))
}

/// Closed-form ratio E_{j+1}/E_j =
/// ((j+1)/(j+1-r)) ((m sqrt(p) + j + 2)/(j+1)) ((k+m-j)/((j-k) sqrt(p)))
/// for max(r, k+1) <= j < k+m.
pub fn regime_e_ratio(p: u64, k: usize, m: usize, r: usize, j: usize) -> Quad {
    let f1 = Quad::from_rational(
        p,
        BigRational::new(BigInt::from(j as i64 + 1), BigInt::from((j + 1 - r) as i64)),
    );
    let f2 = Quad::with_parts(p, rat_int(j as i64 + 2), rat_int(m as i64)).mul_rational(
        &BigRational::new(BigInt::one(), BigInt::from(j as i64 + 1)),
    );
    let denom = Quad::with_parts(p, BigRational::zero(), rat_int((j - k) as i64));
    let f3 = Quad::from_int(p, (k + m - j) as i64).div(&denom);
    f1.mul(&f2).mul(&f3)
}

/// Diagnostic table for the asymptotic regime: per-prime main term, bound,
/// ratio, and the monotonicity of the error terms. Reports trends only;
/// nothing here asserts a limit.
pub fn regime_report(params: &RegimeParams, primes: &[u64], digits: usize) -> Result<Vec<RegimeRow>> {
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        if !crate::field::factor_prime_power(p).map(|(pp, e)| pp == p && e == 1).unwrap_or(false) {
            return Err(Error::Range(format!("{p} is not prime")));
        }
        let (k, m, r) = params.derive(p);
        if k + m > (p - 1) as usize || r > k + m || m == 0 {
            return Err(Error::Range(format!(
                "derived (k, m, r) = ({k}, {m}, {r}) out of range for p = {p}"
            )));
        }
        let main = count_main_term(p, k, m, r);
        let mut bound = Quad::new(p);
        let mut terms = vec![];
        for j in r..=(k + m) {
            let e = regime_e_term(p, k, m, r, j);
            bound = bound.add(&e);
            terms.push(e);
        }
        let e_increasing = terms
            .windows(2)
            .all(|w| w[1].cmp_quad(&w[0]) == Ordering::Greater);
        let e_max_at = terms
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp_quad(b.1).then(Ordering::Less))
            .map(|(i, _)| r + i)
            .unwrap_or(r);
        let ratio = bound.mul_rational(&main.recip());
        rows.push(RegimeRow {
            p,
            k,
            m,
            r,
            main_term: exact_string(&main),
            error_bound: format!("~{}", bound.decimal_up(digits)),
            ratio: format!("~{}", ratio.decimal_up(digits)),
            ratio_f64: ratio.to_f64(),
            e_increasing,
            e_max_at,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{count_m, count_n, root_histogram};
    use crate::field::FiniteField;
    use crate::poly::Poly;

    const B: u64 = 10_000_000;

    #[test]
    fn mu_values() {
        assert_eq!(mu(0, 7, 3), rat_int(1));
        // r = q: C(0, j) = 0 for j >= 1
        assert_eq!(mu(4, 5, 5), rat_int(1));
        // s=1, q=5, r=2: 1 - 3/5
        assert_eq!(mu(1, 5, 2), BigRational::new(BigInt::from(2), BigInt::from(5)));
    }

    #[test]
    fn mu_bounds_hold() {
        for q in [3u64, 5, 8, 9] {
            for r in 1..=q {
                for s in 0..=12usize {
                    let v = mu(s, q, r);
                    assert!(v <= rat_int(1), "mu > 1 at q={q} r={r} s={s}");
                    let low = BigRational::new(BigInt::from(r), BigInt::from(q));
                    assert!(v >= low, "mu < r/q at q={q} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn knopfmacher_matches_oracle() {
        let f5 = FiniteField::with_q(5).unwrap();
        let hist = root_histogram(&Poly::x_pow(&f5, 2), 2, B).unwrap();
        for r in 0..=2usize {
            assert_eq!(BigInt::from(hist[r]), knopfmacher_nxk(5, 2, r).unwrap());
        }
        // frozen independent values
        assert_eq!(knopfmacher_nxk(5, 2, 0).unwrap(), BigInt::from(10));
        assert_eq!(knopfmacher_nxk(5, 2, 1).unwrap(), BigInt::from(5));
        assert_eq!(knopfmacher_nxk(5, 2, 2).unwrap(), BigInt::from(10));
        let f7 = FiniteField::with_q(7).unwrap();
        let hist7 = root_histogram(&Poly::x_pow(&f7, 3), 3, B).unwrap();
        for r in 0..=3usize {
            assert_eq!(BigInt::from(hist7[r]), knopfmacher_nxk(7, 3, r).unwrap());
        }
        // r = k reduces to the subset count
        assert_eq!(knopfmacher_nxk(9, 4, 4).unwrap(), binomial(9, 4));
    }

    #[test]
    fn macwilliams_matches_oracle() {
        let f5 = FiniteField::with_q(5).unwrap();
        let hist = root_histogram(&Poly::zero(&f5), 2, B).unwrap();
        assert_eq!(macwilliams_n0(5, 2, 0).unwrap(), BigInt::from(hist[0]));
        assert_eq!(macwilliams_n0(5, 2, 1).unwrap(), BigInt::from(hist[1]));
        assert_eq!(macwilliams_n0(5, 2, 0).unwrap(), BigInt::from(4));
        let f4 = FiniteField::with_q(4).unwrap();
        let hist4 = root_histogram(&Poly::zero(&f4), 3, B).unwrap();
        assert_eq!(macwilliams_n0(4, 3, 1).unwrap(), BigInt::from(24));
        assert_eq!(macwilliams_n0(4, 3, 1).unwrap(), BigInt::from(hist4[1]));
        // r = k-1 collapses to C(q, k-1)(q-1)
        assert_eq!(
            macwilliams_n0(7, 3, 2).unwrap(),
            binomial(7, 2) * BigInt::from(6)
        );
    }

    #[test]
    fn main_term_specials() {
        // m = 0 reproduces the exact formula
        for r in 0..=3usize {
            let main = count_main_term(7, 3, 0, r);
            assert_eq!(main, rat_int(knopfmacher_nxk(7, 3, r).unwrap()));
        }
        // r = k+m: C(q, k+m)/q^m
        let main = count_main_term(7, 2, 2, 4);
        assert_eq!(main, rat_int(binomial(7, 4)) * pow_i(7, -2));
        // r = k+m-1: (k+m-1) C(q, k+m-1)/q^m
        let main = count_main_term(7, 2, 2, 3);
        assert_eq!(main, rat_int(3 * binomial(7, 3)) * pow_i(7, -2));
    }

    #[test]
    fn error_bound_specials() {
        // m = 0: empty sum
        assert!(count_error_bound(5, 5, 3, 0, 1).is_zero());
        // r = k+m: the sum collapses to its single top term
        let b = count_error_bound(5, 5, 2, 2, 4);
        assert_eq!(b, top_r_error_bound(5, 5, 2, 2));
        // r = k+m-1: the two-term sum is at most the combined closed form
        let b2 = count_error_bound(5, 5, 2, 2, 3);
        let combined = next_r_combined_bound(5, 5, 2, 2);
        assert_ne!(b2.cmp_quad(&combined), Ordering::Greater);
    }

    #[test]
    fn headline_bound_small_sweep() {
        for q in [5u64, 7] {
            let fq = FiniteField::with_q(q).unwrap();
            for k in 1..=2usize {
                for m in 0..=2usize {
                    if k + m > (q - 1) as usize {
                        continue;
                    }
                    // f = x^{k+m} + x^k (normalized already)
                    let mut coeffs = vec![0u64; k + m + 1];
                    coeffs[k + m] = 1;
                    if m > 0 {
                        coeffs[k] = 1;
                    }
                    let f = Poly::from_indices(&fq, &coeffs);
                    for r in 0..=(k + m) {
                        let oracle = count_n(&f, k, r, B).unwrap();
                        let main = count_main_term(q, k, m, r);
                        let bound = count_error_bound(q, fq.p(), k, m, r);
                        assert!(
                            bound_holds(oracle, &main, &bound),
                            "q={q} k={k} m={m} r={r}: |{oracle} - {main}| > {bound}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pair_bound_and_exact_region() {
        let f7 = FiniteField::with_q(7).unwrap();
        let x4 = Poly::x_pow(&f7, 4);
        // exact region r <= k
        for r in 0..=2usize {
            let m = count_m(&x4, 2, r, B).unwrap();
            assert_eq!(rat_int(BigInt::from(m)), pair_main_term(7, 2, r));
        }
        // bounded region
        for r in 3..=4usize {
            let m = count_m(&x4, 2, r, B).unwrap();
            let main = pair_main_term(7, 2, r);
            let bound = pair_error_bound(7, 7, 2, 2, r);
            assert!(bound_holds(m, &main, &bound), "r={r}");
        }
    }

    #[test]
    fn reconstruction_identity() {
        let f7 = FiniteField::with_q(7).unwrap();
        let f = Poly::parse("x^5+x^4", &f7).unwrap();
        let (k, d) = (3usize, 5usize);
        let hist = root_histogram(&f, k, B).unwrap();
        let mut pair_counts = vec![0u64; d + 1];
        for (j, slot) in pair_counts.iter_mut().enumerate() {
            *slot = crate::counts::count_m_from_histogram(&hist, j);
        }
        for r in 0..=d {
            let recon = reconstruct_count_n(7, k, d, r, &pair_counts);
            assert_eq!(recon, BigInt::from(hist[r]), "r={r}");
        }
    }

    #[test]
    fn verify_bound_routes() {
        let f5 = FiniteField::with_q(5).unwrap();
        // exact case: x^k
        let rep = verify_bound(&Poly::x_pow(&f5, 2), 2, 1, B, 12).unwrap();
        assert_eq!(rep.holds, Some(true));
        assert_eq!(rep.relative_gap, None); // m = 0: zero bound
        assert_eq!(rep.oracle_value.as_deref(), Some("5"));
        // codeword route
        let low = Poly::parse("1 + x", &f5).unwrap();
        let rep0 = verify_bound(&low, 2, 1, B, 12).unwrap();
        assert_eq!(rep0.m, None);
        assert_eq!(rep0.holds, Some(true));
        assert_eq!(rep0.main_term, "20");
        let repq = verify_bound(&low, 2, 5, B, 12).unwrap();
        assert_eq!(repq.main_term, "1");
        assert_eq!(repq.holds, Some(true));
    }

    #[test]
    fn regime_params_validation() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert!(RegimeParams::new(r(3, 10), r(1, 4), r(1, 10)).is_err());
        assert!(RegimeParams::new(r(3, 10), r(1, 5), r(1, 5)).is_err());
        assert!(RegimeParams::new(r(1, 1), r(1, 5), r(1, 10)).is_err());
        let ok = RegimeParams::new(r(3, 10), r(1, 5), r(1, 10)).unwrap();
        let (k, m, rr) = ok.derive(101);
        assert_eq!((k, m, rr), (30, 2, 31));
        let (k4, m4, r4) = ok.derive(401);
        assert_eq!((k4, m4, r4), (120, 3, 121));
    }

    #[test]
    fn regime_ratio_formula_agrees() {
        // exact identity between consecutive-term quotient and closed form
        let (p, k, m) = (101u64, 30usize, 2usize);
        let r = 31usize;
        for j in r..(k + m) {
            let ej = regime_e_term(p, k, m, r, j);
            let ej1 = regime_e_term(p, k, m, r, j + 1);
            let lhs = ej1.div(&ej);
            let rhs = regime_e_ratio(p, k, m, r, j);
            assert_eq!(lhs.cmp_quad(&rhs), Ordering::Equal, "j={j}");
        }
    }

    #[test]
    fn regime_rows_trend() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let params = RegimeParams::new(r(3, 10), r(1, 5), r(1, 10)).unwrap();
        let rows = regime_report(&params, &[101, 211, 401], 12).unwrap();
        assert_eq!(rows.len(), 3);
        for row in &rows {
            if row.e_increasing {
                assert_eq!(row.e_max_at, row.k + row.m);
            }
            assert!(row.ratio_f64.is_finite());
        }
        assert!(
            rows[0].ratio_f64 > rows[1].ratio_f64 && rows[1].ratio_f64 > rows[2].ratio_f64,
            "ratio should descend over the prime list: {:?}",
            rows.iter().map(|r| r.ratio_f64).collect::<Vec<_>>()
        );
        assert!(regime_report(&params, &[100], 12).is_err());
    }
}
