//! Finite fields F_q, q = p^e, with a canonical total element order.
//!
//! Elements are stored as indices `0..q`. The index encodes the coefficient
//! vector of the residue representative in base p, least significant digit
//! first: index = c_0 + c_1 p + ... + c_{e-1} p^{e-1}. This makes the
//! canonical order start 0, 1, ... and agree with the usual integer order on
//! prime fields.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A field element, meaningful only together with its field.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(pub u32);

pub type Field = Arc<FiniteField>;

const ADD_TABLE_MAX_Q: u64 = 1024;
pub const MAX_Q: u64 = 1 << 20;

pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus over F_p as base-p digits, length e+1;
    /// empty for prime fields.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g, i in 0..q-1.
    exp: Vec<u32>,
    /// log[a] for a in 1..q (log[0] unused).
    log: Vec<u32>,
    /// q*q addition table when q is small enough, else empty.
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Digit-vector polynomial arithmetic over F_p, used only at construction
/// time (modulus checks, exp-table building).
mod raw {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of a by the monic modulus m.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for i in 0..m.len() {
                let idx = shift + i;
                let sub = (lead as u64 * m[i] as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn divides(d: &[u32], a: &[u32], p: u32) -> bool {
        rem(a, d, p).is_empty()
    }
}

impl FiniteField {
    /// Builds F_{p^e}. For e > 1 the modulus may be given as base-p digits
    /// (ascending, length e+1, monic); otherwise the lexicographically least
    /// monic irreducible of degree e is selected.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::Range("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(e).filter(|&q| q <= MAX_Q as u128);
        let q = q.ok_or_else(|| Error::Range(format!("q = {p}^{e} exceeds {MAX_Q}")))? as u64;
        let p = p as u32;

        let modulus = if e == 1 {
            if modulus.is_some() {
                return Err(Error::Parse("prime fields take no modulus".into()));
            }
            vec![]
        } else {
            match modulus {
                Some(m) => {
                    if m.len() != e as usize + 1
                        || m.last() != Some(&1)
                        || m.iter().any(|&c| c >= p)
                    {
                        return Err(Error::Parse(format!(
                            "modulus must be monic of degree {e} with coefficients below {p}"
                        )));
                    }
                    if !Self::irreducible(&m, p) {
                        return Err(Error::ReducibleModulus(p as u64));
                    }
                    m
                }
                None => Self::least_irreducible(p, e),
            }
        };

        let mut field = FiniteField {
            p,
            e,
            q: q as u32,
            modulus,
            exp: vec![],
            log: vec![],
            add_table: vec![],
            neg_table: vec![],
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    /// Builds a field from a prime power q.
    pub fn with_q(q: u64) -> Result<Field> {
        let (p, e) = factor_prime_power(q)?;
        FiniteField::new(p, e, None)
    }

    /// Parses a field spec string: `q=5`, `q=2^3`, `q=9 mod=[1,0,1]`,
    /// `q=3^2 mod=x^2+1` (modulus coefficients are over F_p).
    pub fn parse_spec(s: &str) -> Result<Field> {
        let mut q_part = None;
        let mut mod_part = None;
        for token in s.split_whitespace() {
            if let Some(v) = token.strip_prefix("q=") {
                q_part = Some(v);
            } else if let Some(v) = token.strip_prefix("mod=") {
                mod_part = Some(v);
            } else {
                return Err(Error::Parse(format!("unexpected field-spec token `{token}`")));
            }
        }
        let q_str = q_part.ok_or_else(|| Error::Parse("field spec needs q=...".into()))?;
        let (p, e) = if let Some((base, exp)) = q_str.split_once('^') {
            let p: u64 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime `{base}`")))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{exp}`")))?;
            (p, e)
        } else {
            let q: u64 = q_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad field size `{q_str}`")))?;
            factor_prime_power(q)?
        };
        let modulus = match mod_part {
            None => None,
            Some(text) => Some(parse_fp_poly(text, p as u32)?),
        };
        FiniteField::new(p, e, modulus)
    }

    /// Canonical spec string, re-parsable by `parse_spec`.
    pub fn spec_string(&self) -> String {
        if self.e == 1 {
            format!("q={}", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("q={}^{} mod=[{}]", self.p, self.e, coeffs.join(","))
        }
    }

    fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
        let total = (p as u64).pow(e);
        for low in 0..total {
            let mut m = Vec::with_capacity(e as usize + 1);
            let mut t = low;
            for _ in 0..e {
                m.push((t % p as u64) as u32);
                t /= p as u64;
            }
            m.push(1);
            if Self::irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    /// Trial division by all monic polynomials of degree 1..=e/2.
    fn irreducible(m: &[u32], p: u32) -> bool {
        let e = m.len() - 1;
        if m[0] == 0 {
            return e == 1;
        }
        for d in 1..=(e / 2) {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut t = low;
                for _ in 0..d {
                    div.push((t % p as u64) as u32);
                    t /= p as u64;
                }
                div.push(1);
                if raw::divides(&div, m, p) {
                    return false;
                }
            }
        }
        true
    }

    fn digits(&self, idx: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut t = idx;
        for _ in 0..self.e {
            v.push(t % self.p);
            t /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        let mut idx = 0u64;
        for &c in d.iter().rev() {
            idx = idx * self.p as u64 + c as u64;
        }
        idx as u32
    }

    fn raw_add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da
            .iter()
            .zip(db.iter())
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_digits(&sum)
    }

    fn raw_neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let neg: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| if x == 0 { 0 } else { self.p - x })
            .collect();
        self.from_digits(&neg)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let mut da = self.digits(a);
        let mut db = self.digits(b);
        raw::trim(&mut da);
        raw::trim(&mut db);
        let prod = raw::mul(&da, &db, self.p);
        let red = raw::rem(&prod, &self.modulus, self.p);
        self.from_digits(&red)
    }

    fn build_tables(&mut self) {
        let q = self.q as u64;
        // negation
        self.neg_table = (0..self.q).map(|a| self.raw_neg(a)).collect();
        // primitive element by trial
        let factors = prime_factors(q - 1);
        let mut gen = 0u32;
        'outer: for cand in 2..self.q.max(3) {
            if cand >= self.q {
                break;
            }
            for &f in &factors {
                if self.raw_pow(cand, (q - 1) / f) == 1 {
                    continue 'outer;
                }
            }
            gen = cand;
            break;
        }
        if self.q == 2 {
            gen = 1;
        }
        assert!(gen != 0, "no primitive element found");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut acc = 1u32;
        for i in 0..(q - 1) {
            exp.push(acc);
            log[acc as usize] = i as u32;
            acc = self.raw_mul(acc, gen);
        }
        debug_assert_eq!(acc, 1);
        self.exp = exp;
        self.log = log;
        if q <= ADD_TABLE_MAX_Q {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..self.q {
                for b in a..self.q {
                    let s = self.raw_add(a, b);
                    table[(a as u64 * q + b as u64) as usize] = s;
                    table[(b as u64 * q + a as u64) as usize] = s;
                }
            }
            self.add_table = table;
        }
    }

    fn raw_pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Modulus digits over F_p (ascending), empty for prime fields.
    pub fn modulus_digits(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn elem(&self, idx: u64) -> Elem {
        assert!(idx < self.q as u64, "element index out of range");
        Elem(idx as u32)
    }

    /// All elements in canonical order: 0, 1, then the rest.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.add_table.is_empty() {
            Elem(self.raw_add(a.0, b.0))
        } else {
            Elem(self.add_table[(a.0 as u64 * self.q as u64 + b.0 as u64) as usize])
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg_table[a.0 as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let n = self.q as u64 - 1;
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        Elem(self.exp[s as usize])
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a.0 != 0, "inverse of zero");
        let n = self.q as u64 - 1;
        let s = (n - self.log[a.0 as usize] as u64) % n;
        Elem(self.exp[s as usize])
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        if a.0 == 0 {
            return if exp == 0 { Elem(1) } else { Elem(0) };
        }
        exp %= self.q as u64 - 1;
        let s = (self.log[a.0 as usize] as u64 * exp) % (self.q as u64 - 1);
        Elem(self.exp[s as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u64 {
        assert!(a.0 != 0);
        let n = self.q as u64 - 1;
        let l = self.log[a.0 as usize] as u64;
        if l == 0 {
            1
        } else {
            n / num_integer::gcd(n, l)
        }
    }

    /// Structural equality: same (p, e, modulus).
    pub fn same_field(&self, other: &FiniteField) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec_string())
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Range("field size must be at least 2".into()));
    }
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return Err(Error::NotPrime(q));
    }
    let p = fs[0];
    let mut e = 0u32;
    let mut t = q;
    while t > 1 {
        t /= p;
        e += 1;
    }
    if p.pow(e) != q {
        return Err(Error::NotPrime(q));
    }
    Ok((p, e))
}

/// Parses a polynomial over F_p in either grammar (`x^2+x+1` or `[1,1,1]`)
/// into ascending base-p digits.
fn parse_fp_poly(text: &str, p: u32) -> Result<Vec<u32>> {
    let terms = crate::poly::parse_terms(text)?;
    let deg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut out = vec![0u32; deg + 1];
    for (c, e) in terms {
        if c >= p as u64 {
            return Err(Error::Parse(format!(
                "coefficient {c} out of range for F_{p}"
            )));
        }
        out[e] = ((out[e] as u64 + c) % p as u64) as u32;
    }
    raw::trim(&mut out);
    if out.is_empty() {
        return Err(Error::Parse("modulus must be nonzero".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FiniteField::new(5, 1, None).unwrap();
        assert_eq!(f.q(), 5);
        let els: Vec<u32> = f.elements().map(|e| e.0).collect();
        assert_eq!(els, vec![0, 1, 2, 3, 4]);
        assert_eq!(f.add(Elem(3), Elem(4)), Elem(2));
        assert_eq!(f.mul(Elem(3), Elem(4)), Elem(2));
        assert_eq!(f.inv(Elem(3)), Elem(2));
    }

    #[test]
    fn four_is_not_prime() {
        assert!(matches!(FiniteField::new(4, 1, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn f4_auto_modulus() {
        let f = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(f.q(), 4);
        // x^2 + x + 1 is the unique irreducible quadratic over F_2
        assert_eq!(f.modulus_digits(), &[1, 1, 1]);
        // (x)(x+1) = x^2 + x = x + 1 + x... check via indices: x = 2, x+1 = 3
        assert_eq!(f.mul(Elem(2), Elem(3)), Elem(1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2
        let r = FiniteField::new(2, 2, Some(vec![1, 0, 1]));
        assert!(matches!(r, Err(Error::ReducibleModulus(2))));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::with_q(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
                assert_eq!(f.add(a, f.neg(a)), Elem(0));
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), Elem(1));
                }
            }
        }
    }

    #[test]
    fn spec_parse_roundtrip() {
        for s in ["q=5", "q=2^3", "q=9", "q=3^2 mod=x^2+1"] {
            let f = FiniteField::parse_spec(s).unwrap();
            let f2 = FiniteField::parse_spec(&f.spec_string()).unwrap();
            assert!(f.same_field(&f2));
        }
        assert!(FiniteField::parse_spec("q=6").is_err());
        assert!(FiniteField::parse_spec("q=").is_err());
    }

    #[test]
    fn direct_path_matches_tables() {
        // exercise the no-table arithmetic against the table path
        let f = FiniteField::with_q(9).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b).0, f.raw_add(a.0, b.0));
                assert_eq!(f.mul(a, b).0, f.raw_mul(a.0, b.0));
            }
        }
    }
}
