//! Distinct-coordinate sieve over S_k.
//!
//! Converts a sum of a function over the distinct-coordinate tuples of a set
//! X in Omega^k into signed sums over the coordinate-collapsed sets X_tau:
//! F = sum_{tau in S_k} sign(tau) F_tau, with a cheaper conjugacy-class form
//! when X and the function are symmetric under coordinate permutations.

use crate::binom::factorial;
use crate::error::{Error, Result, MAX_SIEVE_K};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Values the sieve can accumulate: an additive group with small integer
/// scaling (class sizes fit u64 for k <= 8).
pub trait SieveValue: Clone {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn scale(&mut self, s: u64);
}

impl SieveValue for Ratio<i128> {
    fn zero() -> Self {
        <Ratio<i128> as Zero>::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn scale(&mut self, s: u64) {
        *self *= Ratio::from_integer(s as i128);
    }
}

impl SieveValue for num_rational::BigRational {
    fn zero() -> Self {
        <num_rational::BigRational as Zero>::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn scale(&mut self, s: u64) {
        *self *= num_rational::BigRational::from_integer(s.into());
    }
}

/// Cycle type of a permutation: counts[i] = number of cycles of length i+1,
/// with sum (i+1) * counts[i] = k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    pub fn new(counts: Vec<usize>) -> Self {
        CycleType { counts }
    }

    pub fn k(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) * c)
            .sum()
    }

    /// Number of cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        self.counts.iter().sum()
    }

    /// sign = (-1)^{k - l}.
    pub fn sign(&self) -> i32 {
        if (self.k() - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Size of the conjugacy class: k! / prod_i i^{c_i} c_i!.
    pub fn class_size(&self) -> BigInt {
        let mut denom = BigInt::one();
        for (i, &c) in self.counts.iter().enumerate() {
            denom *= BigInt::from(i as u64 + 1).pow(c as u32);
            denom *= factorial(c as u64);
        }
        factorial(self.k() as u64) / denom
    }

    /// Coordinate blocks of a representative permutation with this cycle
    /// structure: consecutive index runs, longest cycles first.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![];
        let mut next = 0usize;
        for (i, &c) in self.counts.iter().enumerate().rev() {
            let len = i + 1;
            for _ in 0..c {
                blocks.push((next..next + len).collect());
                next += len;
            }
        }
        blocks
    }

    /// Cycle type of an explicit permutation (images under tau).
    pub fn of_permutation(perm: &[usize]) -> CycleType {
        let k = perm.len();
        let mut counts = vec![0usize; k];
        let mut seen = vec![false; k];
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            counts[len - 1] += 1;
        }
        CycleType { counts }
    }

    /// All cycle types of S_k, ordered by the underlying partition of k in
    /// reverse-lexicographic order (largest parts first).
    pub fn all(k: usize) -> Vec<CycleType> {
        let mut out = vec![];
        let mut parts = vec![];
        fn rec(remaining: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 0 {
                out.push(parts.clone());
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                parts.push(part);
                rec(remaining - part, part, parts, out);
                parts.pop();
            }
        }
        let mut partitions = vec![];
        rec(k, k, &mut parts, &mut partitions);
        for partition in partitions {
            let mut counts = vec![0usize; k.max(1)];
            for part in partition {
                counts[part - 1] += 1;
            }
            out.push(CycleType { counts });
        }
        out
    }
}

/// Coordinate blocks (cycle supports) of an explicit permutation.
fn permutation_blocks(perm: &[usize]) -> Vec<Vec<usize>> {
    let k = perm.len();
    let mut blocks = vec![];
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut block = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            block.push(i);
            i = perm[i];
        }
        blocks.push(block);
    }
    blocks
}

/// All permutations of 0..k (Heap's algorithm), deterministic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut a: Vec<usize> = (0..k).collect();
    let n = k;
    let mut c = vec![0usize; n];
    out.push(a.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// A finite instance: the subset X of Omega^k with a value attached to every
/// member tuple (the function is zero off X).
#[derive(Debug, Clone)]
pub struct SieveInstance<V> {
    pub k: usize,
    pub points: Vec<(Vec<u32>, V)>,
}

impl<V: SieveValue> SieveInstance<V> {
    pub fn new(k: usize, points: Vec<(Vec<u32>, V)>) -> Self {
        debug_assert!(points.iter().all(|(t, _)| t.len() == k));
        SieveInstance { k, points }
    }

    fn sum_where(&self, pred: impl Fn(&[u32]) -> bool) -> V {
        let mut acc = V::zero();
        for (tuple, v) in &self.points {
            if pred(tuple) {
                acc.add_assign(v);
            }
        }
        acc
    }
}

fn all_distinct(tuple: &[u32]) -> bool {
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return false;
            }
        }
    }
    true
}

fn constant_on_blocks(tuple: &[u32], blocks: &[Vec<usize>]) -> bool {
    blocks.iter().all(|b| {
        let first = tuple[b[0]];
        b.iter().all(|&i| tuple[i] == first)
    })
}

/// Direct sum of the function over distinct-coordinate tuples of X.
pub fn distinct_sum_direct<V: SieveValue>(inst: &SieveInstance<V>) -> V {
    inst.sum_where(all_distinct)
}

/// The S_k sieve: F = sum_{tau} sign(tau) F_tau. Works for arbitrary X and
/// function; k is capped because the expansion has k! terms.
pub fn distinct_sum_sieved<V: SieveValue + Send + Sync>(inst: &SieveInstance<V>) -> Result<V> {
    if inst.k > MAX_SIEVE_K {
        return Err(Error::KTooLarge(inst.k));
    }
    let perms = permutations(inst.k);
    let partials = crate::exec::map_collect(perms, |perm| {
        let blocks = permutation_blocks(&perm);
        let sign = CycleType::of_permutation(&perm).sign();
        let f_tau = inst.sum_where(|t| constant_on_blocks(t, &blocks));
        (sign, f_tau)
    });
    let mut acc = V::zero();
    for (sign, f_tau) in partials {
        if sign >= 0 {
            acc.add_assign(&f_tau);
        } else {
            acc.sub_assign(&f_tau);
        }
    }
    Ok(acc)
}

/// Conjugacy-class sieve for symmetric instances:
/// F = sum over cycle types of sign(tau) C(tau) F_tau.
///
/// Symmetry of X and of the function is probed on a sample of permutations;
/// a failed probe reports `NotSymmetric`.
pub fn symmetric_sum<V: SieveValue + PartialEq>(inst: &SieveInstance<V>) -> Result<V> {
    if inst.k > MAX_SIEVE_K {
        return Err(Error::KTooLarge(inst.k));
    }
    probe_symmetry(inst)?;
    let mut acc = V::zero();
    for ct in CycleType::all(inst.k) {
        let blocks = ct.blocks();
        let mut f_tau = inst.sum_where(|t| constant_on_blocks(t, &blocks));
        let class: u64 = ct
            .class_size()
            .try_into()
            .expect("class size fits u64 for k <= 8");
        f_tau.scale(class);
        if ct.sign() >= 0 {
            acc.add_assign(&f_tau);
        } else {
            acc.sub_assign(&f_tau);
        }
    }
    Ok(acc)
}

fn probe_symmetry<V: SieveValue + PartialEq>(inst: &SieveInstance<V>) -> Result<()> {
    let k = inst.k;
    if k <= 1 {
        return Ok(());
    }
    let index: HashMap<&[u32], &V> = inst
        .points
        .iter()
        .map(|(t, v)| (t.as_slice(), v))
        .collect();
    // deterministic probe set: adjacent transpositions and a full rotation,
    // applied to a stride of sample points
    let mut probes: Vec<Vec<usize>> = vec![];
    for i in 0..(k - 1) {
        let mut p: Vec<usize> = (0..k).collect();
        p.swap(i, i + 1);
        probes.push(p);
    }
    probes.push((0..k).map(|i| (i + 1) % k).collect());
    let stride = (inst.points.len() / 64).max(1);
    for (t, v) in inst.points.iter().step_by(stride) {
        for p in &probes {
            let permuted: Vec<u32> = p.iter().map(|&i| t[i]).collect();
            match index.get(permuted.as_slice()) {
                Some(w) if *w == v => {}
                Some(_) => {
                    return Err(Error::NotSymmetric(format!(
                        "function differs on a permutation of {t:?}"
                    )))
                }
                None => {
                    return Err(Error::NotSymmetric(format!(
                        "set not closed under permutation of {t:?}"
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Falling factorial (q)_k as the closed-form count of distinct tuples.
pub fn distinct_tuple_count(q: u64, k: usize) -> BigInt {
    crate::binom::falling(q, k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use rand::{Rng, SeedableRng};

    type Rat = Ratio<i128>;

    fn full_instance(q: u32, k: usize, mut f: impl FnMut(&[u32]) -> Rat) -> SieveInstance<Rat> {
        let mut points = vec![];
        let total = (q as u64).pow(k as u32);
        for idx in 0..total {
            let mut t = vec![0u32; k];
            let mut x = idx;
            for c in t.iter_mut() {
                *c = (x % q as u64) as u32;
                x /= q as u64;
            }
            let v = f(&t);
            points.push((t, v));
        }
        SieveInstance::new(k, points)
    }

    #[test]
    fn partitions_reverse_lex() {
        let types = CycleType::all(5);
        assert_eq!(types.len(), 7);
        // first is the single 5-cycle, last is all fixed points
        assert_eq!(types[0].counts[4], 1);
        assert_eq!(types[6].counts[0], 5);
        let total: BigInt = types.iter().map(|t| t.class_size()).sum();
        assert_eq!(total, factorial(5));
    }

    #[test]
    fn class_sizes_k3() {
        let types = CycleType::all(3);
        // reverse-lex: [3], [2,1], [1,1,1]
        let sizes: Vec<u64> = types
            .iter()
            .map(|t| t.class_size().try_into().unwrap())
            .collect();
        assert_eq!(sizes, vec![2, 3, 1]);
        assert_eq!(types[0].sign(), 1); // 3-cycle: (-1)^{3-1}
        assert_eq!(types[1].sign(), -1);
        assert_eq!(types[2].sign(), 1);
    }

    #[test]
    fn sieve_k1_k2() {
        let inst = full_instance(3, 1, |t| Rat::from_integer(t[0] as i128));
        let direct = distinct_sum_direct(&inst);
        assert_eq!(distinct_sum_sieved(&inst).unwrap(), direct);
        // k = 2: F = F_id - F_(12)
        let inst2 = full_instance(3, 2, |t| Rat::from_integer((t[0] * 3 + t[1] + 1) as i128));
        let direct2 = distinct_sum_direct(&inst2);
        let sieved2 = distinct_sum_sieved(&inst2).unwrap();
        assert_eq!(direct2, sieved2);
    }

    #[test]
    fn sieve_random_rational_k4() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut values = std::collections::HashMap::new();
        let inst = full_instance(5, 4, |t| {
            *values
                .entry(t.to_vec())
                .or_insert_with(|| Rat::new(rng.gen_range(-50..50), rng.gen_range(1..8)))
        });
        let direct = distinct_sum_direct(&inst);
        assert_eq!(distinct_sum_sieved(&inst).unwrap(), direct);
    }

    #[test]
    fn symmetric_class_form_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        // symmetric function: value depends on the sorted tuple
        let mut table: std::collections::HashMap<Vec<u32>, Rat> = Default::default();
        let inst = full_instance(5, 4, |t| {
            let mut key = t.to_vec();
            key.sort_unstable();
            *table
                .entry(key)
                .or_insert_with(|| Rat::new(rng.gen_range(-9..9), rng.gen_range(1..5)))
        });
        let direct = distinct_sum_direct(&inst);
        assert_eq!(distinct_sum_sieved(&inst).unwrap(), direct);
        assert_eq!(symmetric_sum(&inst).unwrap(), direct);
    }

    #[test]
    fn asymmetric_detected() {
        // function not symmetric: depends on first coordinate only
        let inst = full_instance(3, 3, |t| Rat::from_integer(t[0] as i128));
        assert!(matches!(
            symmetric_sum(&inst),
            Err(Error::NotSymmetric(_))
        ));
        // subset not closed under permutations
        let inst2: SieveInstance<Rat> = SieveInstance::new(
            2,
            vec![(vec![0, 1], Rat::from_integer(1))],
        );
        assert!(matches!(
            symmetric_sum(&inst2),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn count_specialization_reproduces_falling_factorial() {
        for (q, k) in [(5u32, 3usize), (7, 4), (4, 4)] {
            let inst = full_instance(q, k, |_| Rat::from_integer(1));
            let direct = distinct_sum_direct(&inst);
            assert_eq!(
                direct,
                Rat::from_integer(
                    i128::try_from(distinct_tuple_count(q as u64, k)).unwrap()
                )
            );
            assert_eq!(symmetric_sum(&inst).unwrap(), direct);
        }
    }

    #[test]
    fn k_cap() {
        let inst: SieveInstance<Rat> = SieveInstance::new(9, vec![]);
        assert!(matches!(
            distinct_sum_sieved(&inst),
            Err(Error::KTooLarge(9))
        ));
    }

    #[test]
    fn term_counts_exposed() {
        // the class form has p(k) terms versus k! for the permutation form
        assert_eq!(permutations(6).len(), 720);
        assert_eq!(CycleType::all(6).len(), 11);
    }
}
