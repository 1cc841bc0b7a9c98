//! Exact arithmetic with finite sums of roots of unity.
//!
//! A value is stored as an integer vector over the powers of a fixed
//! primitive N-th root of unity (that is, in Z[x]/(x^N - 1)). Equality with
//! zero in Z[zeta_N] is decided exactly by reduction modulo the N-th
//! cyclotomic polynomial; the complex embedding is used only for magnitudes.

use crate::dd::CDd;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![0; order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = 1;
        c
    }

    pub fn root(order: u32, exponent: u64) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[(exponent % order as u64) as usize] = 1;
        c
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_root(&mut self, exponent: u64) {
        self.coeffs[(exponent % self.order as u64) as usize] += 1;
    }

    pub fn add_root_times(&mut self, exponent: u64, times: i64) {
        self.coeffs[(exponent % self.order as u64) as usize] += times;
    }

    pub fn add_assign(&mut self, other: &Cyclotomic) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_scalar(&mut self, v: i64) {
        self.coeffs[0] -= v;
    }

    /// Trivially zero as a vector (sufficient but not necessary for zero in
    /// Z[zeta_N]); the exact test lives on `CycCtx`.
    pub fn is_zero_vector(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Shared context for one root order: the cyclotomic polynomial for exact
/// zero tests and the embedding table for complex evaluation. The table is
/// kept in double-double precision; clustered L-roots are sensitive to
/// coefficient error, so the embedding must carry more than f64 digits.
pub struct CycCtx {
    order: u32,
    /// Phi_N, monic, ascending integer coefficients.
    phi: Vec<BigInt>,
    emb: Vec<CDd>,
}

impl CycCtx {
    pub fn new(order: u32) -> Arc<CycCtx> {
        assert!(order >= 1);
        let mut memo = HashMap::new();
        let phi = cyclotomic_polynomial(order, &mut memo);
        let root = crate::dd::primitive_root_of_unity(order);
        let mut emb = Vec::with_capacity(order as usize);
        let mut acc = CDd::from_f64(1.0, 0.0);
        for _ in 0..order {
            emb.push(acc);
            acc = acc.mul(root);
        }
        Arc::new(CycCtx { order, phi, emb })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Exact zero test in Z[zeta_N].
    pub fn is_zero(&self, v: &Cyclotomic) -> bool {
        assert_eq!(v.order, self.order);
        if v.is_zero_vector() {
            return true;
        }
        // remainder of the coefficient polynomial modulo Phi_N
        let mut rem: Vec<BigInt> = v.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let d = self.phi.len() - 1;
        while rem.len() > d {
            let lead = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - d;
            if !lead.is_zero() {
                for (i, pc) in self.phi.iter().enumerate() {
                    let delta = &lead * pc;
                    rem[shift + i] -= delta;
                }
            }
            rem.pop();
        }
        rem.iter().all(|c| c.is_zero())
    }

    pub fn embed_dd(&self, v: &Cyclotomic) -> CDd {
        assert_eq!(v.order, self.order);
        let mut acc = CDd::ZERO;
        for (j, &c) in v.coeffs.iter().enumerate() {
            if c != 0 {
                let scale = CDd::from_f64(c as f64, 0.0);
                acc = acc.add(self.emb[j].mul(scale));
            }
        }
        acc
    }

    pub fn embed(&self, v: &Cyclotomic) -> Complex64 {
        let z = self.embed_dd(v);
        Complex64::new(z.re.to_f64(), z.im.to_f64())
    }
}

/// Phi_n by the recursive quotient Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
fn cyclotomic_polynomial(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d, memo);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (monic divisor, zero remainder).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dd;
        if !lead.is_zero() {
            quot[shift] = lead.clone();
            for (i, dc) in den.iter().enumerate() {
                let delta = &lead * dc;
                rem[shift + i] -= delta;
            }
        }
        rem.pop();
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}
