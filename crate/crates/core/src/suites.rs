//! Reusable verification suites.
//!
//! Each suite runs a family of exact checks and returns a structured report.
//! Instances are generated sequentially from the seed and evaluated with an
//! order-preserving parallel map, so a report is byte-identical for any
//! worker count.

use crate::binom::rat_int;
use crate::chars::{
    l_function, m_k_bound, m_k_sum_from_census, monic_residue_census, partial_sum_bound,
    tuple_bound_check, weil_check, CharacterGroup, ResidueRing,
};
use crate::code::{deep_hole_census, degree_bounds, distance_distribution, RSCode, Word};
use crate::counts::{
    alpha_split, count_m_from_histogram, count_m_subsets, reversed_top, root_histogram,
    tuple_congruence_count, TupleDomain,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::field::{Field, FiniteField};
use crate::formulas::{
    bound_holds, count_error_bound, count_main_term, knopfmacher_nxk, macwilliams_n0,
    pair_error_bound, pair_main_term, reconstruct_count_n,
};
use crate::poly::Poly;
use crate::sieve::{
    distinct_sum_direct, distinct_sum_sieved, distinct_tuple_count, symmetric_sum, SieveInstance,
};
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteCase {
    /// full parameter tuple, so every row is self-describing
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    fn assemble(
        suite: &str,
        params: serde_json::Value,
        seed: Option<u64>,
        cases: Vec<SuiteCase>,
    ) -> SuiteReport {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        SuiteReport {
            suite: suite.to_string(),
            params,
            seed,
            total: cases.len(),
            passed,
            failed,
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Failing rows only (for the CLI failure dump).
    pub fn failures(&self) -> Vec<&SuiteCase> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn case(params: String, pass: bool, detail: String) -> SuiteCase {
    SuiteCase {
        params,
        pass,
        detail,
    }
}

/// Standard desk grid: (q, k) pairs with k <= min(q-1, kmax) and q^k within
/// the point cap.
fn formula_grid(qs: &[u64], kmax: usize, point_cap: u64) -> Vec<(u64, usize)> {
    let mut grid = vec![];
    for &q in qs {
        for k in 1..=((q - 1) as usize).min(kmax) {
            if (q as u128).pow(k as u32) <= point_cap as u128 {
                grid.push((q, k));
            }
        }
    }
    grid
}

pub const FORMULA_QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
pub const BOUND_QS: [u64; 4] = [5, 7, 8, 9];
pub const CHAR_QS: [u64; 4] = [3, 4, 5, 7];

/// Exact closed-form checks: the deep-hole count formula against the oracle
/// for every grid point and every r, and the codeword (zero polynomial)
/// histogram against the MacWilliams values.
pub fn formulas_suite(qs: &[u64], kmax: usize, budget: u64) -> Result<SuiteReport> {
    let grid = formula_grid(qs, kmax, 1_000_000);
    let cases: Vec<Vec<SuiteCase>> = exec::map_collect(grid.clone(), |(q, k)| {
        let mut out = vec![];
        let field = FiniteField::with_q(q).expect("prime power");
        let xk = Poly::x_pow(&field, k);
        match root_histogram(&xk, k, budget) {
            Ok(hist) => {
                for r in 0..=k {
                    let formula = knopfmacher_nxk(q, k, r).expect("integral");
                    let pass = BigInt::from(hist[r]) == formula;
                    out.push(case(
                        format!("suite=formulas q={q} k={k} r={r} f=x^{k}"),
                        pass,
                        format!("oracle={} formula={}", hist[r], formula),
                    ));
                }
            }
            Err(e) => out.push(case(
                format!("suite=formulas q={q} k={k} f=x^{k}"),
                false,
                format!("oracle failed: {e}"),
            )),
        }
        match root_histogram(&Poly::zero(&field), k, budget) {
            Ok(hist) => {
                for r in 0..k {
                    let formula = macwilliams_n0(q, k, r).expect("integral");
                    let pass = BigInt::from(hist[r]) == formula;
                    out.push(case(
                        format!("suite=formulas q={q} k={k} r={r} f=0"),
                        pass,
                        format!("oracle={} formula={}", hist[r], formula),
                    ));
                }
                let pass = hist[q as usize] == 1
                    && hist[k..q as usize].iter().all(|&c| c == 0)
                    && hist.iter().sum::<u64>() == q.pow(k as u32);
                out.push(case(
                    format!("suite=formulas q={q} k={k} r={q} f=0"),
                    pass,
                    format!("zero-word tail: N(0,q)={}", hist[q as usize]),
                ));
            }
            Err(e) => out.push(case(
                format!("suite=formulas q={q} k={k} f=0"),
                false,
                format!("oracle failed: {e}"),
            )),
        }
        out
    });
    Ok(SuiteReport::assemble(
        "formulas",
        serde_json::json!({"qs": qs, "kmax": kmax, "grid": grid.len()}),
        None,
        cases.into_concat(),
    ))
}

trait Concat<T> {
    fn into_concat(self) -> Vec<T>;
}
impl<T> Concat<T> for Vec<Vec<T>> {
    fn into_concat(self) -> Vec<T> {
        self.into_iter().flatten().collect()
    }
}

/// One random counting instance on the desk grid.
#[derive(Debug, Clone)]
pub struct CountInstance {
    pub q: u64,
    pub k: usize,
    pub m: usize,
    /// coefficient indices of the normalized monic f (degree k+m)
    pub f_coeffs: Vec<u64>,
}

impl CountInstance {
    pub fn build(&self) -> (Field, Poly) {
        let field = FiniteField::with_q(self.q).expect("prime power");
        let f = Poly::from_indices(&field, &self.f_coeffs);
        (field, f)
    }
}

/// Seeded instance stream: q from the list, 1 <= k, 0 <= m, k+m <= q-1,
/// q^k <= point cap, f monic of degree k+m with no terms below degree k.
pub fn count_instances(qs: &[u64], n: usize, seed: u64, point_cap: u64) -> Vec<CountInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = qs[rng.gen_range(0..qs.len())];
        let kmax = (q - 1).min(63) as usize;
        let k = rng.gen_range(1..=kmax);
        if (q as u128).pow(k as u32) > point_cap as u128 {
            continue;
        }
        let m = rng.gen_range(0..=(q as usize - 1 - k));
        let d = k + m;
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        for c in coeffs.iter_mut().take(d).skip(k) {
            *c = rng.gen_range(0..q);
        }
        out.push(CountInstance {
            q,
            k,
            m,
            f_coeffs: coeffs,
        });
    }
    out
}

/// Seeded bound verification (the headline count bound, the pair-count
/// bound with its exact region, and the weighted inclusion-exclusion
/// reconstruction), one case row per instance.
pub fn bounds_suite(qs: &[u64], count: usize, seed: u64, budget: u64) -> Result<SuiteReport> {
    let instances = count_instances(qs, count, seed, 1_000_000);
    let cases: Vec<SuiteCase> = exec::map_collect(instances, |inst| {
        let (field, f) = inst.build();
        let (q, p, k, m) = (inst.q, field.p(), inst.k, inst.m);
        let d = k + m;
        let params = format!(
            "suite=bounds q={q} k={k} m={m} f={}",
            f.compact_string()
        );
        let hist = match root_histogram(&f, k, budget) {
            Ok(h) => h,
            Err(e) => return case(params, false, format!("oracle failed: {e}")),
        };
        let mut detail = String::new();
        let mut pass = true;

        // headline bound at every r
        for r in 0..=d {
            let main = count_main_term(q, k, m, r);
            let bound = count_error_bound(q, p, k, m, r);
            if !bound_holds(hist[r], &main, &bound) {
                pass = false;
                detail.push_str(&format!("count bound fails at r={r}; "));
            }
        }

        // pair counts: exact region and bounded region
        let mut pair_counts = vec![0u64; d + 1];
        for r in 0..=d {
            let by_subsets = match count_m_subsets(&f, k, r, budget) {
                Ok(v) => v,
                Err(e) => {
                    return case(params, false, format!("pair oracle failed at r={r}: {e}"))
                }
            };
            let by_hist = count_m_from_histogram(&hist, r);
            if by_subsets != by_hist {
                pass = false;
                detail.push_str(&format!("pair routes disagree at r={r}; "));
            }
            pair_counts[r] = by_subsets;
            let main = pair_main_term(q, k, r);
            if r <= k {
                if rat_int(BigInt::from(by_subsets)) != main {
                    pass = false;
                    detail.push_str(&format!("pair count not exact at r={r}; "));
                }
            } else {
                let bound = pair_error_bound(q, p, k, m, r);
                if !bound_holds(by_subsets, &main, &bound) {
                    pass = false;
                    detail.push_str(&format!("pair bound fails at r={r}; "));
                }
            }
        }

        // reconstruction identity at every r
        for r in 0..=d {
            let recon = reconstruct_count_n(q, k, d, r, &pair_counts);
            if recon != BigInt::from(hist[r]) {
                pass = false;
                detail.push_str(&format!("reconstruction differs at r={r}; "));
            }
        }

        if detail.is_empty() {
            detail = format!("all r in 0..={d} verified");
        }
        case(params, pass, detail)
    });
    Ok(SuiteReport::assemble(
        "bounds",
        serde_json::json!({"qs": qs, "count": count}),
        Some(seed),
        cases,
    ))
}

type Rat = Ratio<i128>;

/// Seeded sieve identity checks: direct distinct-coordinate sums against the
/// permutation sieve, the conjugacy-class sieve on symmetric instances, and
/// the falling-factorial specialization.
pub fn sieve_suite(kmax: usize, omega_max: u32, trials: usize, seed: u64) -> Result<SuiteReport> {
    if kmax > crate::error::MAX_SIEVE_K {
        return Err(Error::KTooLarge(kmax));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs: Vec<(usize, u32, bool, u64)> = vec![];
    for t in 0..trials {
        let k = rng.gen_range(1..=kmax);
        let omega = rng.gen_range(2..=omega_max);
        let symmetric = t % 2 == 1;
        specs.push((k, omega, symmetric, rng.gen()));
    }
    let cases: Vec<SuiteCase> = exec::map_collect(specs, |(k, omega, symmetric, sub_seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
        let total = (omega as u64).pow(k as u32);
        let mut points = vec![];
        let mut sym_values: std::collections::HashMap<Vec<u32>, Rat> = Default::default();
        for idx in 0..total {
            let mut tuple = vec![0u32; k];
            let mut t = idx;
            for c in tuple.iter_mut() {
                *c = (t % omega as u64) as u32;
                t /= omega as u64;
            }
            if symmetric {
                // include whole orbits with one shared value
                let mut key = tuple.clone();
                key.sort_unstable();
                let v = *sym_values
                    .entry(key)
                    .or_insert_with(|| Rat::new(rng.gen_range(-40..40), rng.gen_range(1..6)));
                points.push((tuple, v));
            } else {
                if rng.gen_bool(0.5) {
                    points.push((
                        tuple,
                        Rat::new(rng.gen_range(-40..40), rng.gen_range(1..6)),
                    ));
                }
            }
        }
        let inst = SieveInstance::new(k, points);
        let params =
            format!("suite=sieve k={k} omega={omega} symmetric={symmetric} points={}", inst.points.len());
        let direct = distinct_sum_direct(&inst);
        let sieved = match distinct_sum_sieved(&inst) {
            Ok(v) => v,
            Err(e) => return case(params, false, format!("sieve failed: {e}")),
        };
        let mut pass = direct == sieved;
        let mut detail = format!("direct={direct} sieved={sieved}");
        if symmetric {
            match symmetric_sum(&inst) {
                Ok(v) => {
                    if v != direct {
                        pass = false;
                        detail.push_str(&format!(" class={v} (mismatch)"));
                    }
                }
                Err(e) => {
                    pass = false;
                    detail.push_str(&format!(" class form failed: {e}"));
                }
            }
        }
        // counting specialization over the full cube
        let ones: Vec<(Vec<u32>, Rat)> = {
            let mut pts = vec![];
            for idx in 0..total {
                let mut tuple = vec![0u32; k];
                let mut t = idx;
                for c in tuple.iter_mut() {
                    *c = (t % omega as u64) as u32;
                    t /= omega as u64;
                }
                pts.push((tuple, Rat::from_integer(1)));
            }
            pts
        };
        let full = SieveInstance::new(k, ones);
        let count = symmetric_sum(&full).expect("full cube is symmetric");
        let expect = Rat::from_integer(
            i128::try_from(distinct_tuple_count(omega as u64, k)).expect("fits"),
        );
        if count != expect {
            pass = false;
            detail.push_str(&format!(" (q)_k specialization: {count} != {expect}"));
        }
        case(params, pass, detail)
    });
    Ok(SuiteReport::assemble(
        "sieve",
        serde_json::json!({"kmax": kmax, "omega_max": omega_max, "trials": trials}),
        Some(seed),
        cases,
    ))
}

/// Deterministic modulus family for the character suite: the powers x^{m+1}
/// plus a few general moduli of degree at most 3.
pub fn char_suite_moduli(field: &Field, m_max: usize) -> Vec<Poly> {
    let mut out = vec![];
    for m in 0..=m_max {
        out.push(Poly::x_pow(field, m + 1));
    }
    // least irreducibles of degree 2 and 3 over the prime subfield pattern:
    // search directly over F_q by the same lexicographic rule
    for deg in [2usize, 3] {
        'search: for low in 0..field.q().pow(deg as u32) {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut t = low;
            for _ in 0..deg {
                coeffs.push(t % field.q());
                t /= field.q();
            }
            coeffs.push(1);
            let cand = Poly::from_indices(field, &coeffs);
            // irreducible over F_q: no roots (deg 2, 3 suffices)
            if cand.roots().is_empty() {
                out.push(cand);
                break 'search;
            }
        }
    }
    // split and mixed moduli: x(x-1) and x^2(x-1)
    let minus_one = field.q() - 1;
    out.push(Poly::from_indices(field, &[0, minus_one, 1]));
    out.push(Poly::from_indices(field, &[0, 0, minus_one, 1]));
    out
}

/// Character-sum suite: group order, orthogonality, M_k vanishing and
/// bounds, L(chi, 1) = 0, partial-sum bounds, and the Weil root check, over
/// every character of every modulus in the family.
pub fn weil_suite(qs: &[u64], m_max: usize, tolerance: f64, budget: u64) -> Result<SuiteReport> {
    let mut ring_specs: Vec<(u64, String)> = vec![];
    for &q in qs {
        let field = FiniteField::with_q(q)?;
        for modulus in char_suite_moduli(&field, m_max) {
            ring_specs.push((q, modulus.compact_string()));
        }
    }
    let cases: Vec<Vec<SuiteCase>> = exec::map_collect(ring_specs.clone(), |(q, mod_str)| {
        let mut out = vec![];
        let field = FiniteField::with_q(q).expect("prime power");
        let modulus = Poly::parse(&mod_str, &field).expect("modulus reparses");
        let is_x_power = {
            let n = modulus.degree().unwrap();
            modulus == Poly::x_pow(&field, n)
        };
        let ring = match ResidueRing::new(&field, modulus) {
            Ok(r) => r,
            Err(e) => {
                out.push(case(
                    format!("suite=weil q={q} modulus={mod_str}"),
                    false,
                    format!("ring construction failed: {e}"),
                ));
                return out;
            }
        };
        let n = ring.degree();
        let grp = match CharacterGroup::new(&ring, budget) {
            Ok(g) => g,
            Err(e) => {
                out.push(case(
                    format!("suite=weil q={q} modulus={mod_str}"),
                    false,
                    format!("character group failed: {e}"),
                ));
                return out;
            }
        };
        let params = |what: &str| format!("suite=weil q={q} n={n} modulus={mod_str} check={what}");

        let g = grp.scalar_trivial_characters();
        if is_x_power {
            let m = n - 1;
            out.push(case(
                params("group-order"),
                g.len() as u64 == q.pow(m as u32),
                format!("|G| = {} expected {}", g.len(), q.pow(m as u32)),
            ));
            // orthogonality on one-units, exact
            let ctx = grp.cyc_ctx();
            let mut ortho_ok = true;
            for &u in &ring.one_units() {
                let mut s = crate::cyclotomic::Cyclotomic::zero(grp.exponent() as u32);
                for chi in &g {
                    s.add_root(chi.exponent_at(u).expect("one-units are units"));
                }
                if u == ring.one_index() {
                    s.sub_scalar(g.len() as i64);
                }
                if !ctx.is_zero(&s) {
                    ortho_ok = false;
                }
            }
            out.push(case(
                params("orthogonality"),
                ortho_ok,
                format!("{} one-units scanned", ring.one_units().len()),
            ));
        }

        // censuses of monic polynomials once per degree
        let mut censuses = vec![];
        for k in 0..=(n + 2) {
            match monic_residue_census(&ring, k, budget) {
                Ok(c) => censuses.push(c),
                Err(e) => {
                    out.push(case(params("census"), false, format!("{e}")));
                    return out;
                }
            }
        }

        let ctx = grp.cyc_ctx();
        let mut vanish_ok = true;
        let mut bound_ok = true;
        let mut l1_ok = true;
        let mut partial_ok = true;
        let mut weil_ok = true;
        let mut weil_fail = String::new();
        for chi in grp.characters() {
            if chi.is_trivial() {
                continue;
            }
            for (k, census) in censuses.iter().enumerate() {
                let mk = m_k_sum_from_census(&chi, census);
                if k >= n {
                    if !ctx.is_zero(&mk) {
                        vanish_ok = false;
                    }
                } else {
                    let mag = ctx.embed(&mk).norm();
                    if mag > m_k_bound(n, k, q) * (1.0 + 1e-9) {
                        bound_ok = false;
                    }
                }
            }
            let l = match l_function(&chi, budget) {
                Ok(l) => l,
                Err(e) => {
                    out.push(case(params("l-function"), false, format!("{e}")));
                    return out;
                }
            };
            if chi.is_trivial_on_scalars() && n >= 2 {
                if !l.vanishes_at_one() {
                    l1_ok = false;
                }
                // partial sums: running sums of the census M_k values
                let mut partial = crate::cyclotomic::Cyclotomic::zero(chi.root_order());
                for (k, census) in censuses.iter().enumerate() {
                    partial.add_assign(&m_k_sum_from_census(&chi, census));
                    let mag = ctx.embed(&partial).norm();
                    let limit = partial_sum_bound(n, k, q);
                    if k >= n - 1 {
                        // beyond the reduced degree the partial sums vanish
                        if !ctx.is_zero(&partial) {
                            partial_ok = false;
                        }
                    } else if mag > limit * (1.0 + 1e-9) {
                        partial_ok = false;
                    }
                }
            }
            match weil_check(&l, tolerance) {
                Ok(rep) => {
                    if !rep.pass {
                        weil_ok = false;
                        weil_fail = format!("moduli {:?} exceed {}", rep.root_moduli, rep.limit);
                    }
                }
                Err(e) => {
                    weil_ok = false;
                    weil_fail = format!("{e}");
                }
            }
        }
        out.push(case(
            params("m_k-vanishing"),
            vanish_ok,
            format!("k in {}..={} over {} characters", n, n + 2, grp.unit_count() - 1),
        ));
        out.push(case(
            params("m_k-bound"),
            bound_ok,
            "all |M_k| within C(n-1,k) sqrt(q)^k".into(),
        ));
        out.push(case(
            params("l-at-one"),
            l1_ok,
            format!("{} scalar-trivial characters", g.len()),
        ));
        out.push(case(
            params("partial-sums"),
            partial_ok,
            "within C(n-2,k) sqrt(q)^k".into(),
        ));
        out.push(case(params("weil-roots"), weil_ok, weil_fail));
        out
    });
    Ok(SuiteReport::assemble(
        "weil",
        serde_json::json!({"qs": qs, "m_max": m_max, "tolerance": tolerance, "rings": ring_specs.len()}),
        None,
        cases.into_concat(),
    ))
}

/// One congruence-count instance for the tuple suite.
#[derive(Debug, Clone)]
pub struct TupleInstance {
    pub q: u64,
    pub d: usize,
    pub m: usize,
    pub r: usize,
    /// coefficients of f (degree <= m, f(0) = 1)
    pub f_coeffs: Vec<u64>,
}

pub fn tuple_instances(qs: &[u64], n: usize, seed: u64, budget: u64) -> Vec<TupleInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = qs[rng.gen_range(0..qs.len())];
        let d = rng.gen_range(1..=((q - 1) as usize).min(6));
        let m = rng.gen_range(0..=d);
        let r = rng.gen_range(0..=d);
        // enumeration cost (ordered tuples times free h-space)
        let mut work: u128 = (q as u128).pow((d - r) as u32);
        for i in 0..r {
            work = work.saturating_mul((q - i as u64) as u128);
        }
        if work > budget as u128 {
            continue;
        }
        let mut f_coeffs = vec![0u64; m + 1];
        f_coeffs[0] = 1;
        for c in f_coeffs.iter_mut().skip(1) {
            *c = rng.gen_range(0..q);
        }
        out.push(TupleInstance { q, d, m, r, f_coeffs });
    }
    out
}

/// Ordered-tuple congruence suite: both tuple bounds plus the partition,
/// shift, and reversal identities of the zero-containment decomposition.
pub fn n2_suite(qs: &[u64], count: usize, seed: u64, budget: u64) -> Result<SuiteReport> {
    let instances = tuple_instances(qs, count, seed, budget);
    let cases: Vec<SuiteCase> = exec::map_collect(instances, |inst| {
        let field = FiniteField::with_q(inst.q).expect("prime power");
        let f = Poly::from_indices(&field, &inst.f_coeffs);
        let (q, d, m, r) = (inst.q, inst.d, inst.m, inst.r);
        let k = d - m;
        let params = format!(
            "suite=n2 q={q} d={d} m={m} r={r} f={}",
            f.compact_string()
        );
        let mut pass = true;
        let mut detail = String::new();

        for nonzero in [false, true] {
            match tuple_bound_check(&f, d, m, r, nonzero, budget, 12) {
                Ok(rep) => {
                    if !rep.holds {
                        pass = false;
                        detail.push_str(&format!(
                            "tuple bound fails (nonzero={nonzero}): count={} main={} bound={}; ",
                            rep.count, rep.main_term, rep.error_bound
                        ));
                    }
                }
                Err(e) => {
                    pass = false;
                    detail.push_str(&format!("tuple count failed (nonzero={nonzero}): {e}; "));
                }
            }
        }

        // ordered counts divide by r!
        let n2 = tuple_congruence_count(&f, d, m, r, TupleDomain::FullField, budget)
            .expect("in budget");
        let rfact: u64 = (1..=r as u64).product::<u64>().max(1);
        if n2 % rfact != 0 {
            pass = false;
            detail.push_str("N2 not divisible by r!; ");
        }

        // decomposition identities need the degree-d monic alpha-form
        if k >= 1 && r >= 1 {
            let mut alpha_coeffs = vec![0u64; d + 1];
            alpha_coeffs[d] = 1;
            for i in 1..=m {
                // f = 1 + a_{d-1} x + ... + a_k x^m reversed into the top
                alpha_coeffs[d - i] = inst.f_coeffs[i];
            }
            let f_alpha = Poly::from_indices(&field, &alpha_coeffs);
            match alpha_split(&f_alpha, k, r, budget) {
                Ok(split) => {
                    match count_m_subsets(&f_alpha, k, r, budget) {
                        Ok(mcount) => {
                            if split.total() != mcount {
                                pass = false;
                                detail.push_str("alpha parts do not sum to M; ");
                            }
                        }
                        Err(e) => {
                            pass = false;
                            detail.push_str(&format!("pair count failed: {e}; "));
                        }
                    }
                    // shift: containing-zero part at (d, m) = avoiding-zero
                    // part at (d-1, m), same top coefficients
                    if d >= 1 {
                        let mut shifted = vec![0u64; d];
                        shifted[d - 1] = 1;
                        for i in 1..=m.min(d - 1) {
                            if d >= 1 + i {
                                shifted[d - 1 - i] = inst.f_coeffs[i];
                            }
                        }
                        let f_shift = Poly::from_indices(&field, &shifted);
                        match alpha_split(&f_shift, k - 1, r - 1, budget) {
                            Ok(s2) => {
                                if split.containing_zero != s2.avoiding_zero {
                                    pass = false;
                                    detail.push_str(&format!(
                                        "shift identity fails: {} != {}; ",
                                        split.containing_zero, s2.avoiding_zero
                                    ));
                                }
                            }
                            Err(e) => {
                                pass = false;
                                detail.push_str(&format!("shift oracle failed: {e}; "));
                            }
                        }
                    }
                    // reversal: r! N^{alpha,1} = N2* of the reversed form
                    let rev = reversed_top(&f_alpha, k, m);
                    match tuple_congruence_count(&rev, d, m, r, TupleDomain::NonzeroOnly, budget)
                    {
                        Ok(n2s) => {
                            if n2s != rfact * split.avoiding_zero {
                                pass = false;
                                detail.push_str(&format!(
                                    "reversal identity fails: {n2s} != {} * {}; ",
                                    rfact, split.avoiding_zero
                                ));
                            }
                        }
                        Err(e) => {
                            pass = false;
                            detail.push_str(&format!("reversal count failed: {e}; "));
                        }
                    }
                }
                Err(e) => {
                    pass = false;
                    detail.push_str(&format!("alpha split failed: {e}; "));
                }
            }
        }
        if detail.is_empty() {
            detail = "bounds and identities verified".into();
        }
        case(params, pass, detail)
    });
    Ok(SuiteReport::assemble(
        "n2",
        serde_json::json!({"qs": qs, "count": count}),
        Some(seed),
        cases,
    ))
}

/// Exhaustive Reed-Solomon metrics checks on tiny codes: the elementary
/// distance bounds for every non-codeword, distribution totals, the MDS
/// minimum distance, and the deep-hole census content.
pub fn metrics_suite(pairs: &[(u64, usize)], budget: u64) -> Result<SuiteReport> {
    let cases: Vec<Vec<SuiteCase>> = exec::map_collect(pairs.to_vec(), |(q, k)| {
        let mut out = vec![];
        let field = FiniteField::with_q(q).expect("prime power");
        let code = RSCode::standard(&field, k).expect("valid params");
        let n = code.n();
        let params = |what: &str| format!("suite=metrics q={q} k={k} check={what}");

        match code.minimum_distance(budget) {
            Ok(dm) => out.push(case(
                params("mds"),
                dm == n - k + 1,
                format!("min distance {dm}, expected {}", n - k + 1),
            )),
            Err(e) => out.push(case(params("mds"), false, format!("{e}"))),
        }

        let total_words = (q as u64).pow(n as u32);
        let mut bounds_ok = true;
        let mut totals_ok = true;
        for widx in 0..total_words {
            let mut t = widx;
            let mut values = vec![0u64; n];
            for slot in values.iter_mut().rev() {
                *slot = t % q;
                t /= q;
            }
            let u = Word::from_indices(&code, &values).expect("length");
            let dist = distance_distribution(&u, &code, budget).expect("in budget");
            if dist.total() as u128 != code.codeword_count() {
                totals_ok = false;
            }
            match degree_bounds(&u, &code) {
                Err(Error::IsCodeword) => {
                    if dist.min_distance() != Some(0) {
                        bounds_ok = false;
                    }
                }
                Ok((lower, upper)) => {
                    let d = dist.min_distance().expect("nonempty");
                    if d < lower || d > upper {
                        bounds_ok = false;
                    }
                }
                Err(_) => bounds_ok = false,
            }
        }
        out.push(case(
            params("distance-bounds"),
            bounds_ok,
            format!("{total_words} words scanned"),
        ));
        out.push(case(
            params("distribution-total"),
            totals_ok,
            "sum N_i = q^k".into(),
        ));

        match deep_hole_census(&code, budget) {
            Ok(report) => {
                let expected_degree_k = (q - 1) * q.pow(k as u32);
                out.push(case(
                    params("census"),
                    report.degree_k_count == expected_degree_k,
                    format!(
                        "{} deep holes, {} of degree k (expected {expected_degree_k})",
                        report.deep_hole_count, report.degree_k_count
                    ),
                ));
            }
            Err(e) => out.push(case(params("census"), false, format!("{e}"))),
        }
        out
    });
    Ok(SuiteReport::assemble(
        "metrics",
        serde_json::json!({"pairs": pairs}),
        None,
        cases.into_concat(),
    ))
}
