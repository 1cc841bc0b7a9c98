//! Characters of residue polynomial rings, their L-functions, and the
//! associated exact bound checks.
//!
//! A character is a homomorphism from the unit group of F_q[x]/(f) into the
//! complex roots of unity, extended by zero off the units. Values are kept
//! exactly as exponents of a fixed primitive root of unity whose order is
//! the unit-group exponent, so identities like L(chi, 1) = 0 are decided
//! exactly; floating point appears only in magnitude checks.

use crate::binom::binomial;
use crate::cyclotomic::{CycCtx, Cyclotomic};
use crate::error::{check_budget, Error, Result};
use crate::exec;
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::quad::Quad;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use std::collections::HashMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// residue rings
// ---------------------------------------------------------------------------

/// F_q[x]/(f) for a monic modulus f of degree n >= 1. Residues are indexed
/// by their coefficient vectors in base q.
pub struct ResidueRing {
    field: Field,
    modulus: Poly,
    n: usize,
}

impl ResidueRing {
    pub fn new(field: &Field, modulus: Poly) -> Result<Arc<ResidueRing>> {
        if !modulus.is_monic() || modulus.degree().map_or(true, |d| d < 1) {
            return Err(Error::Parse(
                "residue ring modulus must be monic of degree at least 1".into(),
            ));
        }
        Ok(Arc::new(ResidueRing {
            field: field.clone(),
            modulus,
            n: 0,
        }
        .fix_n()))
    }

    fn fix_n(mut self) -> Self {
        self.n = self.modulus.degree().unwrap();
        self
    }

    /// The ring F_q[x]/(x^{m+1}) used by the congruence counts.
    pub fn x_power(field: &Field, m: usize) -> Arc<ResidueRing> {
        ResidueRing::new(field, Poly::x_pow(field, m + 1)).expect("monic power")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.field.q().pow(self.n as u32)
    }

    pub fn index_of(&self, p: &Poly) -> u64 {
        debug_assert!(p.degree().map_or(true, |d| d < self.n));
        let q = self.field.q();
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            idx = idx * q + p.coeff(i).0 as u64;
        }
        idx
    }

    pub fn poly_of(&self, idx: u64) -> Poly {
        let q = self.field.q();
        let mut t = idx;
        let mut coeffs = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            coeffs.push(Elem((t % q) as u32));
            t /= q;
        }
        Poly::new(&self.field, coeffs)
    }

    pub fn reduce(&self, p: &Poly) -> u64 {
        let (_, r) = p.divmod(&self.modulus).expect("monic modulus");
        self.index_of(&r)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let pa = self.poly_of(a);
        let pb = self.poly_of(b);
        self.reduce(&pa.mul(&pb).expect("same field"))
    }

    pub fn one_index(&self) -> u64 {
        1
    }

    pub fn is_unit(&self, idx: u64) -> bool {
        let p = self.poly_of(idx);
        if p.is_zero() {
            return false;
        }
        self.modulus
            .gcd(&p)
            .map(|g| g.degree() == Some(0))
            .unwrap_or(false)
    }

    pub fn units(&self) -> Vec<u64> {
        (0..self.size()).filter(|&i| self.is_unit(i)).collect()
    }

    /// Residue indices of the nonzero scalars of F_q.
    pub fn scalar_units(&self) -> Vec<u64> {
        self.field
            .nonzero_elements()
            .map(|c| self.index_of(&Poly::constant(&self.field, c)))
            .collect()
    }

    /// Residues h with h(0) = 1 (all units when the modulus is x^n).
    pub fn one_units(&self) -> Vec<u64> {
        (0..self.size())
            .filter(|&i| {
                let p = self.poly_of(i);
                p.coeff(0) == Elem(1) && self.is_unit(i)
            })
            .collect()
    }

    /// Distinct monic irreducible factors of the modulus (trial division).
    pub fn distinct_irreducible_factors(&self) -> Vec<Poly> {
        let q = self.field.q();
        let mut out: Vec<Poly> = vec![];
        let mut rem = self.modulus.clone();
        for d in 1..=self.n {
            if rem.degree().map_or(true, |dd| dd < d) {
                break;
            }
            for low in 0..q.pow(d as u32) {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut t = low;
                for _ in 0..d {
                    coeffs.push(Elem((t % q) as u32));
                    t /= q;
                }
                coeffs.push(Elem(1));
                let cand = Poly::new(&self.field, coeffs);
                if rem.divmod(&cand).map(|(_, r)| r.is_zero()).unwrap_or(false) {
                    // cand is a factor of least degree, hence irreducible
                    out.push(cand.clone());
                    while rem.divmod(&cand).map(|(_, r)| r.is_zero()).unwrap_or(false) {
                        rem = rem.divmod(&cand).unwrap().0;
                    }
                }
            }
        }
        out
    }

    /// |(F_q[x]/f)^*| = q^n prod over distinct irreducible factors P of
    /// (1 - q^{-deg P}).
    pub fn unit_count_formula(&self) -> u64 {
        let q = self.field.q() as u128;
        let mut count = q.pow(self.n as u32);
        for p in self.distinct_irreducible_factors() {
            let d = p.degree().unwrap() as u32;
            count = count / q.pow(d) * (q.pow(d) - 1);
        }
        count as u64
    }
}

// ---------------------------------------------------------------------------
// abelian group decomposition
// ---------------------------------------------------------------------------

/// A finite abelian group decomposed into cyclic factors, with a discrete
/// logarithm for every element.
pub struct AbelianGroup {
    pub elements: Vec<u64>,
    /// cyclic factor orders (prime-power elementary divisors)
    pub orders: Vec<u64>,
    pub generators: Vec<u64>,
    pub exponent: u64,
    dlog: HashMap<u64, Vec<u64>>,
}

impl AbelianGroup {
    pub fn size(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn dlog(&self, element: u64) -> Option<&Vec<u64>> {
        self.dlog.get(&element)
    }
}

fn element_order(mul: &impl Fn(u64, u64) -> u64, one: u64, x: u64) -> u64 {
    let mut acc = x;
    let mut o = 1;
    while acc != one {
        acc = mul(acc, x);
        o += 1;
    }
    o
}

/// Decomposes a finite abelian group given by an element list and its
/// multiplication. The result is certified: the product map over the
/// exponent grid of the found generators must hit every element exactly
/// once.
pub fn decompose_abelian(
    elements: &[u64],
    mul: impl Fn(u64, u64) -> u64,
    one: u64,
) -> AbelianGroup {
    let n = elements.len() as u64;
    let orders: HashMap<u64, u64> = elements
        .iter()
        .map(|&x| (x, element_order(&mul, one, x)))
        .collect();

    let mut factor_orders: Vec<u64> = vec![];
    let mut generators: Vec<u64> = vec![];

    for ell in prime_divisors(n) {
        // Sylow subgroup: elements of ell-power order
        let sylow: Vec<u64> = elements
            .iter()
            .copied()
            .filter(|x| is_prime_power_of(orders[x], ell))
            .collect();
        // target partition from the counting function
        // c_j = #{x in sylow : x^{ell^j} = 1} = ell^{sum_i min(j, lambda_i)},
        // so the number of parts >= j is log_ell(c_j) - log_ell(c_{j-1})
        let lambda: Vec<u32> = {
            let mut counts = vec![1u64]; // c_0 = 1
            let mut j = 1u32;
            loop {
                let pj = ell.pow(j);
                let c = sylow.iter().filter(|x| divides(orders[x], pj)).count() as u64;
                counts.push(c);
                if c == sylow.len() as u64 {
                    break;
                }
                j += 1;
            }
            let logs: Vec<u32> = counts.iter().map(|&c| ilog(c, ell)).collect();
            let ge_counts: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
            let mut parts: Vec<u32> = vec![];
            for (j, &count_ge) in ge_counts.iter().enumerate() {
                let next = *ge_counts.get(j + 1).unwrap_or(&0);
                for _ in 0..(count_ge - next) {
                    parts.push(j as u32 + 1);
                }
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            parts
        };

        // backtracking search for independent generators realizing lambda
        let mut span: HashMap<u64, Vec<u64>> = HashMap::new();
        span.insert(one, vec![]);
        let mut gens: Vec<u64> = vec![];
        assert!(
            search_generators(&sylow, &orders, &mul, one, ell, &lambda, &mut span, &mut gens),
            "abelian decomposition failed (not an abelian group?)"
        );
        for (&g, &lam) in gens.iter().zip(lambda.iter()) {
            generators.push(g);
            factor_orders.push(ell.pow(lam));
        }
    }

    // certify: the exponent grid covers the group exactly once
    let mut dlog: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut grid: Vec<(u64, Vec<u64>)> = vec![(one, vec![])];
    for (&g, &o) in generators.iter().zip(factor_orders.iter()) {
        let mut next = Vec::with_capacity(grid.len() * o as usize);
        for (elem, exps) in grid {
            let mut acc = elem;
            for e in 0..o {
                let mut v = exps.clone();
                v.push(e);
                next.push((acc, v));
                acc = mul(acc, g);
            }
        }
        grid = next;
    }
    for (elem, exps) in grid {
        let prev = dlog.insert(elem, exps);
        assert!(prev.is_none(), "generator grid revisits an element");
    }
    assert_eq!(dlog.len() as u64, n, "generator grid misses elements");

    let exponent = factor_orders.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
    AbelianGroup {
        elements: elements.to_vec(),
        orders: factor_orders,
        generators,
        exponent: exponent.max(1),
        dlog,
    }
}

#[allow(clippy::too_many_arguments)]
fn search_generators(
    sylow: &[u64],
    orders: &HashMap<u64, u64>,
    mul: &impl Fn(u64, u64) -> u64,
    one: u64,
    ell: u64,
    lambda: &[u32],
    span: &mut HashMap<u64, Vec<u64>>,
    gens: &mut Vec<u64>,
) -> bool {
    if gens.len() == lambda.len() {
        return span.len() == sylow.len();
    }
    let want = ell.pow(lambda[gens.len()]);
    'cand: for &x in sylow {
        if orders[&x] != want {
            continue;
        }
        // independence: <x> meets the current span only at the identity
        let mut acc = x;
        let mut powers = vec![one, x];
        while acc != one {
            if span.contains_key(&acc) {
                continue 'cand;
            }
            acc = mul(acc, x);
            powers.push(acc);
        }
        powers.pop(); // drop the final identity
        // extend span by the direct product
        let saved: Vec<(u64, Vec<u64>)> = span.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut new_span = HashMap::new();
        for (h, exps) in &saved {
            for (e, &xp) in powers.iter().enumerate() {
                let mut v = exps.clone();
                v.push(e as u64);
                new_span.insert(mul(*h, xp), v);
            }
        }
        *span = new_span;
        gens.push(x);
        if search_generators(sylow, orders, mul, one, ell, lambda, span, gens) {
            return true;
        }
        gens.pop();
        *span = saved.into_iter().collect();
    }
    false
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

fn is_prime_power_of(n: u64, ell: u64) -> bool {
    let mut n = n;
    while n % ell == 0 {
        n /= ell;
    }
    n == 1
}

fn divides(a: u64, b: u64) -> bool {
    b % a == 0
}

fn ilog(mut n: u64, base: u64) -> u32 {
    let mut out = 0;
    while n > 1 {
        debug_assert_eq!(n % base, 0);
        n /= base;
        out += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// character groups
// ---------------------------------------------------------------------------

struct CharGroupInner {
    ring: Arc<ResidueRing>,
    group: AbelianGroup,
    ctx: Arc<CycCtx>,
    /// per-residue discrete log (None off the units)
    dlog_table: Vec<Option<Vec<u64>>>,
}

/// The full character group of (F_q[x]/f)^*.
pub struct CharacterGroup {
    inner: Arc<CharGroupInner>,
}

#[derive(Clone)]
pub struct Character {
    inner: Arc<CharGroupInner>,
    /// exponent tuple against the cyclic factors
    exps: Vec<u64>,
}

impl CharacterGroup {
    pub fn new(ring: &Arc<ResidueRing>, budget: u64) -> Result<CharacterGroup> {
        check_budget(ring.size() as u128, budget)?;
        let units = ring.units();
        debug_assert_eq!(units.len() as u64, ring.unit_count_formula());
        let r = ring.clone();
        let group = decompose_abelian(&units, |a, b| r.mul(a, b), ring.one_index());
        let ctx = CycCtx::new(group.exponent as u32);
        let mut dlog_table = vec![None; ring.size() as usize];
        for (&elem, exps) in group.dlog.iter() {
            dlog_table[elem as usize] = Some(exps.clone());
        }
        Ok(CharacterGroup {
            inner: Arc::new(CharGroupInner {
                ring: ring.clone(),
                group,
                ctx,
                dlog_table,
            }),
        })
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.inner.ring
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.inner.group.orders
    }

    pub fn generators(&self) -> &[u64] {
        &self.inner.group.generators
    }

    pub fn exponent(&self) -> u64 {
        self.inner.group.exponent
    }

    pub fn unit_count(&self) -> u64 {
        self.inner.group.size()
    }

    pub fn cyc_ctx(&self) -> &Arc<CycCtx> {
        &self.inner.ctx
    }

    /// All characters in lexicographic exponent order (index 0 is trivial).
    pub fn characters(&self) -> Vec<Character> {
        let orders = &self.inner.group.orders;
        let total: u64 = orders.iter().product::<u64>().max(1);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut exps = Vec::with_capacity(orders.len());
            let mut t = idx;
            for &o in orders {
                exps.push(t % o);
                t /= o;
            }
            out.push(Character {
                inner: self.inner.clone(),
                exps,
            });
        }
        out
    }

    /// The subgroup of characters trivial on the scalars F_q^*; for the
    /// modulus x^{m+1} this group has exactly q^m members.
    pub fn scalar_trivial_characters(&self) -> Vec<Character> {
        let scalars = self.inner.ring.scalar_units();
        self.characters()
            .into_iter()
            .filter(|chi| scalars.iter().all(|&s| chi.exponent_at(s) == Some(0)))
            .collect()
    }
}

impl Character {
    /// Exponent of the character value at a residue: chi(residue) =
    /// zeta_N^{exponent}, or None off the units (value 0).
    pub fn exponent_at(&self, residue_idx: u64) -> Option<u64> {
        let dlog = self.inner.dlog_table[residue_idx as usize].as_ref()?;
        let n = self.inner.group.exponent;
        let mut acc: u64 = 0;
        for ((&a, &e), &o) in self
            .exps
            .iter()
            .zip(dlog.iter())
            .zip(self.inner.group.orders.iter())
        {
            // contribution a * e * (N / o) mod N
            let step = n / o;
            acc = (acc + (a % n) * ((e % o) * step % n)) % n;
        }
        Some(acc % n)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(self.inner.group.orders.iter())
            .fold(1u64, |acc, (&a, &o)| {
                let oo = if a == 0 { 1 } else { o / num_integer::gcd(o, a) };
                num_integer::lcm(acc, oo)
            })
    }

    pub fn is_trivial_on_scalars(&self) -> bool {
        self.inner
            .ring
            .scalar_units()
            .iter()
            .all(|&s| self.exponent_at(s) == Some(0))
    }

    pub fn root_order(&self) -> u32 {
        self.inner.group.exponent as u32
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.inner.ring
    }

    pub fn cyc_ctx(&self) -> &Arc<CycCtx> {
        &self.inner.ctx
    }

    /// Exponent tuple (for reports).
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }
}

// ---------------------------------------------------------------------------
// character sums and L-functions
// ---------------------------------------------------------------------------

/// M_k(chi) = sum over monic g of degree exactly k of chi(g mod f), exact.
pub fn m_k_sum(chi: &Character, k: usize, budget: u64) -> Result<Cyclotomic> {
    let ring = chi.ring().clone();
    let field = ring.field().clone();
    let q = field.q();
    check_budget((q as u128).pow(k as u32), budget)?;
    let total = q.pow(k as u32);
    let mut acc = Cyclotomic::zero(chi.root_order());
    let mut coeffs = vec![Elem(0); k + 1];
    coeffs[k] = Elem(1);
    for idx in 0..total {
        let mut t = idx;
        for c in coeffs.iter_mut().take(k) {
            *c = Elem((t % q) as u32);
            t /= q;
        }
        let g = Poly::new(&field, coeffs.clone());
        let residue = ring.reduce(&g);
        if let Some(e) = chi.exponent_at(residue) {
            acc.add_root(e);
        }
    }
    Ok(acc)
}

/// Residue-class census of the monic polynomials of degree exactly k:
/// pairs (residue index, multiplicity). Lets a sweep over many characters
/// reuse one enumeration of the monic polynomials.
pub fn monic_residue_census(
    ring: &Arc<ResidueRing>,
    k: usize,
    budget: u64,
) -> Result<Vec<(u64, u64)>> {
    let field = ring.field().clone();
    let q = field.q();
    check_budget((q as u128).pow(k as u32), budget)?;
    let total = q.pow(k as u32);
    let mut census: HashMap<u64, u64> = HashMap::new();
    let mut coeffs = vec![Elem(0); k + 1];
    coeffs[k] = Elem(1);
    for idx in 0..total {
        let mut t = idx;
        for c in coeffs.iter_mut().take(k) {
            *c = Elem((t % q) as u32);
            t /= q;
        }
        let g = Poly::new(&field, coeffs.clone());
        *census.entry(ring.reduce(&g)).or_insert(0) += 1;
    }
    let mut out: Vec<(u64, u64)> = census.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// M_k(chi) from a precomputed residue census.
pub fn m_k_sum_from_census(chi: &Character, census: &[(u64, u64)]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(chi.root_order());
    for &(residue, count) in census {
        if let Some(e) = chi.exponent_at(residue) {
            acc.add_root_times(e, count as i64);
        }
    }
    acc
}

/// The L-polynomial coefficients (M_0 .. M_{n-1}) of a nontrivial character.
pub struct LFunction {
    ctx: Arc<CycCtx>,
    coeffs: Vec<Cyclotomic>,
    q: u64,
}

pub fn l_function(chi: &Character, budget: u64) -> Result<LFunction> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let n = chi.ring().degree();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(m_k_sum(chi, k, budget)?);
    }
    Ok(LFunction {
        ctx: chi.cyc_ctx().clone(),
        coeffs,
        q: chi.ring().field().q(),
    })
}

impl LFunction {
    pub fn coefficients(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree after trimming exactly-zero leading coefficients.
    pub fn degree(&self) -> usize {
        let mut d = self.coeffs.len();
        while d > 0 && self.ctx.is_zero(&self.coeffs[d - 1]) {
            d -= 1;
        }
        d.saturating_sub(1)
    }

    /// L(chi, 1) = sum of the coefficients, exact.
    pub fn at_one(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.ctx.order());
        for c in &self.coeffs {
            acc.add_assign(c);
        }
        acc
    }

    pub fn vanishes_at_one(&self) -> bool {
        self.ctx.is_zero(&self.at_one())
    }

    pub fn complex_coefficients(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| self.ctx.embed(c)).collect()
    }

    /// Inverse roots rho_i with L(t) = prod (1 - rho_i t), found as the
    /// roots of the reversed polynomial by simultaneous Weierstrass
    /// iteration in double-double precision (clustered roots would cost
    /// half the digits in plain f64), guarded by a reconstruction residual.
    pub fn inverse_roots(&self) -> Result<Vec<Complex64>> {
        let mut c = self.complex_coefficients();
        // trim exact zeros so the reversal is monic of the true degree
        let d = self.degree();
        c.truncate(d + 1);
        if d == 0 {
            return Ok(vec![]);
        }
        // reversed: t^d L(1/t) = c_0 t^d + c_1 t^{d-1} + ... + c_d, monic
        // since c_0 = M_0 = 1
        let dd_coeffs: Vec<crate::dd::CDd> = (0..=d)
            .map(|i| self.ctx.embed_dd(&self.coeffs[d - i]))
            .collect();
        let (roots, resid) = crate::dd::monic_roots(&dd_coeffs);
        // residual r bounds the root-modulus error by about sqrt(r) when a
        // root is (nearly) double; 1e-15 keeps that two decades under the
        // 1e-8 relative tolerance
        if resid > 1e-15 {
            return Err(Error::NumericalInstability(resid));
        }
        Ok(roots
            .into_iter()
            .map(|z| Complex64::new(z.re.to_f64(), z.im.to_f64()))
            .collect())
    }
}

/// Per-root modulus check against sqrt(q) (1 + tolerance).
#[derive(Debug, Clone, serde::Serialize)]
pub struct WeilReport {
    pub degree: usize,
    pub root_moduli: Vec<f64>,
    pub limit: f64,
    pub pass: bool,
}

pub fn weil_check(l: &LFunction, tolerance: f64) -> Result<WeilReport> {
    let roots = l.inverse_roots()?;
    let limit = (l.q() as f64).sqrt() * (1.0 + tolerance);
    let moduli: Vec<f64> = roots.iter().map(|r| r.norm()).collect();
    let pass = moduli.iter().all(|&m| m <= limit);
    Ok(WeilReport {
        degree: l.degree(),
        root_moduli: moduli,
        limit,
        pass,
    })
}

// ---------------------------------------------------------------------------
// one-units structure and the tuple-count pipeline
// ---------------------------------------------------------------------------

/// Cyclic decomposition summary of the subgroup {h : h(0) = 1} of units.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OneUnitsStructure {
    pub order: u64,
    pub factor_orders: Vec<u64>,
    pub exponent: u64,
}

pub fn one_units_structure(ring: &Arc<ResidueRing>, budget: u64) -> Result<OneUnitsStructure> {
    check_budget(ring.size() as u128, budget)?;
    let elems = ring.one_units();
    let r = ring.clone();
    let group = decompose_abelian(&elems, |a, b| r.mul(a, b), ring.one_index());
    let mut orders = group.orders.clone();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    Ok(OneUnitsStructure {
        order: group.size(),
        factor_orders: orders,
        exponent: group.exponent,
    })
}

/// Character-side verification of the ordered-tuple congruence count:
/// compares the enumerated N2 (or N2*) against its main term and bound, and
/// reports the character-order census S together with the two-tier weight
/// w(S) as diagnostics (present only when the one-units group is small
/// enough to enumerate).
#[derive(Debug, Clone, serde::Serialize)]
pub struct TupleBoundReport {
    pub q: u64,
    pub p: u64,
    pub d: usize,
    pub m: usize,
    pub r: usize,
    pub nonzero_domain: bool,
    pub f: String,
    pub count: u64,
    pub main_term: String,
    pub error_bound: String,
    pub holds: bool,
    pub s_census: Option<u64>,
    pub ws_diagnostic: Option<String>,
}

/// Number of nontrivial characters of order at most r in the group trivial
/// on scalars. By duality this equals the number of one-units of order at
/// most r, so an element-order census suffices.
pub fn scalar_trivial_order_census(ring: &Arc<ResidueRing>, r: usize) -> u64 {
    let one = ring.one_index();
    ring.one_units()
        .into_iter()
        .filter(|&u| u != one)
        .filter(|&u| element_order(&|a, b| ring.mul(a, b), one, u) <= r as u64)
        .count() as u64
}

pub fn tuple_bound_check(
    f: &Poly,
    d: usize,
    m: usize,
    r: usize,
    nonzero_domain: bool,
    budget: u64,
    digits: usize,
) -> Result<TupleBoundReport> {
    let field = f.field().clone();
    let q = field.q();
    let p = field.p();
    let domain = if nonzero_domain {
        crate::counts::TupleDomain::NonzeroOnly
    } else {
        crate::counts::TupleDomain::FullField
    };
    let count = crate::counts::tuple_congruence_count(f, d, m, r, domain, budget)?;
    let k = d as i64 - m as i64;
    let main = crate::formulas::tuple_main_term(q, k, r, nonzero_domain);
    let bound = crate::formulas::tuple_error_bound(q, p, d, m, r, nonzero_domain);
    let gap = (crate::binom::rat_int(BigInt::from(count)) - &main).abs();
    let holds = bound.cmp_rational(&gap) != std::cmp::Ordering::Less;

    // character census S over the group trivial on scalars (best effort:
    // only when the q^m one-units are cheap to enumerate)
    const CENSUS_CAP: u64 = 200_000;
    let (s_census, ws) = if m == 0 {
        (Some(0), Some(Quad::new(q)))
    } else if (q as u128).pow(m as u32 + 1) <= CENSUS_CAP as u128 {
        let ring = ResidueRing::x_power(&field, m);
        let s = scalar_trivial_order_census(&ring, r);
        (Some(s), Some(crate::formulas::ws_diagnostic(q, p, m, r, s)))
    } else {
        (None, None)
    };
    Ok(TupleBoundReport {
        q,
        p,
        d,
        m,
        r,
        nonzero_domain,
        f: f.compact_string(),
        count,
        main_term: crate::binom::exact_string(&main),
        error_bound: format!("~{}", bound.decimal_up(digits)),
        holds,
        s_census,
        ws_diagnostic: ws.map(|w| format!("~{}", w.decimal_up(digits))),
    })
}

/// Exact bound for |M_k(chi)|: C(n-1, k) sqrt(q)^k, as a float for
/// magnitude comparison.
pub fn m_k_bound(n: usize, k: usize, q: u64) -> f64 {
    let b = binomial(n as u64 - 1, k as i64);
    b.to_f64().unwrap_or(f64::INFINITY) * (q as f64).sqrt().powi(k as i32)
}

/// Exact bound for partial sums of scalar-trivial characters:
/// C(n-2, k) sqrt(q)^k.
pub fn partial_sum_bound(n: usize, k: usize, q: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let b = binomial(n as u64 - 2, k as i64);
    b.to_f64().unwrap_or(f64::INFINITY) * (q as f64).sqrt().powi(k as i32)
}

/// Parallel map over characters preserving order, for sweeps.
pub fn character_sweep<R: Send>(
    chars: Vec<Character>,
    f: impl Fn(&Character) -> R + Sync + Send,
) -> Vec<R>
where
    Character: Send + Sync,
{
    exec::map_collect(chars, move |chi| f(&chi))
}
