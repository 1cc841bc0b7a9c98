//! Dense polynomials over a finite field.
//!
//! Coefficients are ascending; the zero polynomial is the empty vector and
//! its degree is `None` rather than any numeric sentinel.

use crate::error::{check_budget, Error, Result};
use crate::field::{Elem, Field};
use std::fmt;

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&Elem(0)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_indices(field: &Field, idx: &[u64]) -> Poly {
        let coeffs = idx.iter().map(|&i| field.elem(i)).collect();
        Poly::new(field, coeffs)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![Elem(1)])
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![Elem(0), Elem(1)])
    }

    pub fn monomial(field: &Field, c: Elem, n: usize) -> Poly {
        if c == Elem(0) {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Elem(0); n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    /// x^n with unit coefficient.
    pub fn x_pow(field: &Field, n: usize) -> Poly {
        Poly::monomial(field, Elem(1), n)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem(0))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem(1))
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut out = vec![Elem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Elem(0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem(0); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = f.mul(*rem.last().unwrap(), lead_inv);
            if factor != Elem(0) {
                quot[shift] = factor;
                for i in 0..=dd {
                    let s = f.mul(factor, divisor.coeff(i));
                    rem[shift + i] = f.sub(rem[shift + i], s);
                }
            }
            rem.pop();
            while rem.last() == Some(&Elem(0)) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            Ok(a.monic())
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None | Some(Elem(1)) => self.clone(),
            Some(l) => self.scale(self.field.inv(l)),
        }
    }

    pub fn eval(&self, at: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem(0);
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, at), c);
        }
        acc
    }

    /// self^exp mod modulus (binary exponentiation).
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        let mut base = self.divmod(modulus)?.1;
        let mut acc = Poly::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?.divmod(modulus)?.1;
            }
            base = base.mul(&base)?.divmod(modulus)?.1;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// f(x + a).
    pub fn shift(&self, a: Elem) -> Poly {
        let f = &self.field;
        let x_plus_a = Poly::new(f, vec![a, Elem(1)]);
        let mut acc = Poly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&x_plus_a).unwrap();
            acc = acc.add(&Poly::constant(f, c)).unwrap();
        }
        acc
    }

    /// Number of distinct roots in F_q by full-domain evaluation.
    /// The zero polynomial vanishes identically and reports q roots.
    pub fn distinct_root_count(&self, budget: u64) -> Result<u64> {
        let q = self.field.q();
        check_budget(q as u128, budget)?;
        if self.is_zero() {
            return Ok(q);
        }
        Ok(self
            .field
            .elements()
            .filter(|&a| self.eval(a) == Elem(0))
            .count() as u64)
    }

    /// Independent route: deg gcd(f, x^q - x), computing x^q mod f by
    /// repeated squaring. Nonzero input only.
    pub fn distinct_root_count_gcd(&self) -> Result<u64> {
        assert!(!self.is_zero(), "gcd route needs a nonzero polynomial");
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let f = &self.field;
        let xq = Poly::x(f).pow_mod(f.q(), self)?;
        let xq_minus_x = xq.sub(&Poly::x(f))?;
        let g = self.gcd(&xq_minus_x)?;
        Ok(g.degree().map_or(0, |d| d as u64))
    }

    pub fn roots(&self) -> Vec<Elem> {
        self.field
            .elements()
            .filter(|&a| self.eval(a) == Elem(0))
            .collect()
    }

    /// Unique interpolant of degree < domain.len() through the given points.
    pub fn interpolate(field: &Field, domain: &[Elem], values: &[Elem]) -> Result<Poly> {
        assert_eq!(domain.len(), values.len());
        for i in 0..domain.len() {
            for j in (i + 1)..domain.len() {
                if domain[i] == domain[j] {
                    return Err(Error::DuplicateDomainPoint);
                }
            }
        }
        let f = field;
        // full = prod (x - x_j); basis_i = full / (x - x_i) scaled to 1 at x_i
        let mut full = Poly::one(f);
        for &x in domain {
            full = full.mul(&Poly::new(f, vec![f.neg(x), Elem(1)]))?;
        }
        let mut acc = Poly::zero(f);
        for (i, (&xi, &yi)) in domain.iter().zip(values.iter()).enumerate() {
            let _ = i;
            if yi == Elem(0) {
                continue;
            }
            let (basis, rem) = full.divmod(&Poly::new(f, vec![f.neg(xi), Elem(1)]))?;
            debug_assert!(rem.is_zero());
            let denom = basis.eval(xi);
            let c = f.mul(yi, f.inv(denom));
            acc = acc.add(&basis.scale(c))?;
        }
        Ok(acc)
    }

    /// Parses either grammar: `c0 + c1*x + c3*x^3` or `[c0,c1,0,c3]`.
    /// Coefficients are canonical element indices in 0..q.
    pub fn parse(text: &str, field: &Field) -> Result<Poly> {
        let terms = parse_terms(text)?;
        let deg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
        let mut coeffs = vec![Elem(0); deg + 1];
        for (c, e) in terms {
            if c >= field.q() {
                return Err(Error::Parse(format!(
                    "coefficient {c} out of range for a field of {} elements",
                    field.q()
                )));
            }
            coeffs[e] = field.add(coeffs[e], field.elem(c));
        }
        Ok(Poly::new(field, coeffs))
    }

    /// Compact coefficient-list form `[c0,c1,...]`; `[]` is the zero
    /// polynomial.
    pub fn compact_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}*x")?,
                (_, 1) => write!(f, "x^{e}")?,
                (_, v) => write!(f, "{v}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Shared term-list parser: returns (coefficient, exponent) pairs.
/// Accepts the sum grammar with `+`/`-` and the bracket list grammar.
pub(crate) fn parse_terms(text: &str) -> Result<Vec<(u64, usize)>> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("unterminated coefficient list".into()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(vec![]);
        }
        let mut out = vec![];
        for (i, part) in inner.split(',').enumerate() {
            let c: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", part.trim())))?;
            out.push((c, i));
        }
        return Ok(out);
    }
    if t.contains('-') {
        return Err(Error::Parse(
            "negative coefficients are not part of the grammar; use canonical indices".into(),
        ));
    }
    let mut out = vec![];
    for term in t.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff_part, exp): (String, usize) = if let Some(pos) = term.find('x') {
            let coeff = &term[..pos];
            let rest = &term[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?
            } else {
                return Err(Error::Parse(format!("bad term `{term}`")));
            };
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            (coeff.to_string(), exp)
        } else {
            (term.clone(), 0)
        };
        let c: u64 = if coeff_part.is_empty() {
            1
        } else {
            coeff_part
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coeff_part}`")))?
        };
        out.push((c, exp));
    }
    Ok(out)
}
