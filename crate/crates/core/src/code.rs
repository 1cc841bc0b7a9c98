//! Reed-Solomon codes, received words, distance distributions, and the
//! deep-hole census.

use crate::error::{check_budget, Error, Result};
use crate::exec;
use crate::field::{Elem, Field};
use crate::poly::Poly;
use serde::Serialize;

/// Evaluation code: codewords are (h(x_1), ..., h(x_n)) for deg h < k.
#[derive(Clone)]
pub struct RSCode {
    field: Field,
    eval_set: Vec<Elem>,
    k: usize,
}

impl RSCode {
    pub fn new(field: &Field, eval_set: Vec<Elem>, k: usize) -> Result<RSCode> {
        for i in 0..eval_set.len() {
            for j in (i + 1)..eval_set.len() {
                if eval_set[i] == eval_set[j] {
                    return Err(Error::DuplicateDomainPoint);
                }
            }
        }
        if k == 0 || k > eval_set.len() {
            return Err(Error::Range(format!(
                "dimension k = {k} must satisfy 1 <= k <= n = {}",
                eval_set.len()
            )));
        }
        Ok(RSCode {
            field: field.clone(),
            eval_set,
            k,
        })
    }

    /// D = F_q in canonical order (n = q).
    pub fn standard(field: &Field, k: usize) -> Result<RSCode> {
        let set = field.elements().collect();
        RSCode::new(field, set, k)
    }

    /// D = F_q^* in canonical order (n = q - 1).
    pub fn primitive(field: &Field, k: usize) -> Result<RSCode> {
        let set = field.nonzero_elements().collect();
        RSCode::new(field, set, k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn eval_set(&self) -> &[Elem] {
        &self.eval_set
    }

    pub fn n(&self) -> usize {
        self.eval_set.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_standard(&self) -> bool {
        self.n() as u64 == self.field.q()
            && self.eval_set.iter().enumerate().all(|(i, e)| e.0 as usize == i)
    }

    pub fn codeword_count(&self) -> u128 {
        (self.field.q() as u128).pow(self.k as u32)
    }

    /// Message polynomial for a message index in 0..q^k (base-q digits).
    pub fn message(&self, index: u64) -> Poly {
        let q = self.field.q();
        let mut t = index;
        let mut coeffs = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            coeffs.push(Elem((t % q) as u32));
            t /= q;
        }
        Poly::new(&self.field, coeffs)
    }

    pub fn encode(&self, message: &Poly) -> Word {
        let values = self.eval_set.iter().map(|&x| message.eval(x)).collect();
        Word {
            field: self.field.clone(),
            domain: self.eval_set.clone(),
            values,
        }
    }

    /// Exhaustive minimum nonzero codeword weight (the MDS check target).
    pub fn minimum_distance(&self, budget: u64) -> Result<usize> {
        check_budget(self.codeword_count() * self.n() as u128, budget)?;
        let total = self.codeword_count() as u64;
        let min = exec::fold_chunks(
            total - 1,
            exec::default_chunk(total - 1),
            |range| {
                let mut best = self.n();
                for idx in range {
                    let msg = self.message(idx + 1); // skip the zero message
                    let w = self
                        .eval_set
                        .iter()
                        .filter(|&&x| msg.eval(x) != Elem(0))
                        .count();
                    best = best.min(w);
                }
                best
            },
            |a, b| a.min(b),
            self.n(),
        );
        Ok(min)
    }
}

/// A received word: values over an ordered evaluation set.
#[derive(Clone)]
pub struct Word {
    field: Field,
    domain: Vec<Elem>,
    values: Vec<Elem>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field)
            && self.domain == other.domain
            && self.values == other.values
    }
}

impl Word {
    pub fn new(field: &Field, domain: Vec<Elem>, values: Vec<Elem>) -> Result<Word> {
        if domain.len() != values.len() {
            return Err(Error::Range("word and domain lengths differ".into()));
        }
        for i in 0..domain.len() {
            for j in (i + 1)..domain.len() {
                if domain[i] == domain[j] {
                    return Err(Error::DuplicateDomainPoint);
                }
            }
        }
        Ok(Word {
            field: field.clone(),
            domain,
            values,
        })
    }

    /// Word with the given value indices over the code's evaluation set.
    pub fn from_indices(code: &RSCode, values: &[u64]) -> Result<Word> {
        if values.len() != code.n() {
            return Err(Error::Range(format!(
                "expected {} values, got {}",
                code.n(),
                values.len()
            )));
        }
        Ok(Word {
            field: code.field.clone(),
            domain: code.eval_set.clone(),
            values: values.iter().map(|&v| code.field.elem(v)).collect(),
        })
    }

    /// Evaluations of an arbitrary polynomial over the code's set.
    pub fn from_poly(code: &RSCode, f: &Poly) -> Word {
        let values = code.eval_set.iter().map(|&x| f.eval(x)).collect();
        Word {
            field: code.field.clone(),
            domain: code.eval_set.clone(),
            values,
        }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn domain(&self) -> &[Elem] {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn value_indices(&self) -> Vec<u64> {
        self.values.iter().map(|e| e.0 as u64).collect()
    }

    /// The unique interpolant of degree < n.
    pub fn interpolant(&self) -> Poly {
        Poly::interpolate(&self.field, &self.domain, &self.values)
            .expect("word domains are duplicate-free")
    }

    /// Degree of the interpolant; None for the zero word.
    pub fn degree(&self) -> Option<usize> {
        self.interpolant().degree()
    }

    pub fn hamming_distance(&self, other: &[Elem]) -> usize {
        self.values
            .iter()
            .zip(other.iter())
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Degree of a word: the degree of its Lagrange interpolant. A word is a
/// codeword iff this is below k.
pub fn word_degree(u: &Word) -> Option<usize> {
    u.degree()
}

/// The elementary distance bounds (n - deg(u), n - k) for a non-codeword.
pub fn degree_bounds(u: &Word, code: &RSCode) -> Result<(usize, usize)> {
    let n = code.n();
    let deg = u.degree().ok_or(Error::IsCodeword)?;
    if deg < code.k() {
        return Err(Error::IsCodeword);
    }
    Ok((n - deg, n - code.k()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceDistribution {
    /// counts[i] = number of codewords at Hamming distance exactly i
    pub counts: Vec<u64>,
}

impl DistanceDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c > 0)
    }
}

/// Distance distribution via the interpolation reduction: distances to
/// codewords correspond to agreement counts of f - h over the evaluation
/// set, i.e. root counts of the differences.
pub fn distance_distribution(u: &Word, code: &RSCode, budget: u64) -> Result<DistanceDistribution> {
    let n = code.n();
    check_budget(code.codeword_count() * n as u128, budget)?;
    let f = u.interpolant();
    let total = code.codeword_count() as u64;
    let counts = exec::fold_chunks(
        total,
        exec::default_chunk(total),
        |range| {
            let mut hist = vec![0u64; n + 1];
            for idx in range {
                let h = code.message(idx);
                let diff = f.sub(&h).expect("same field");
                let agreements = code
                    .eval_set
                    .iter()
                    .filter(|&&x| diff.eval(x) == Elem(0))
                    .count();
                hist[n - agreements] += 1;
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
        vec![0u64; n + 1],
    );
    Ok(DistanceDistribution { counts })
}

/// Independent route: direct Hamming distances against every encoded
/// message, no interpolation involved.
pub fn distance_distribution_pairwise(
    u: &Word,
    code: &RSCode,
    budget: u64,
) -> Result<DistanceDistribution> {
    let n = code.n();
    check_budget(code.codeword_count() * n as u128, budget)?;
    let total = code.codeword_count() as u64;
    let counts = exec::fold_chunks(
        total,
        exec::default_chunk(total),
        |range| {
            let mut hist = vec![0u64; n + 1];
            for idx in range {
                let cw = code.encode(&code.message(idx));
                hist[u.hamming_distance(cw.values())] += 1;
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
        vec![0u64; n + 1],
    );
    Ok(DistanceDistribution { counts })
}

/// Single-threaded error distance, used inside already-parallel scans.
fn error_distance_serial(u: &Word, code: &RSCode) -> usize {
    let total = code.codeword_count() as u64;
    let mut best = code.n();
    for idx in 0..total {
        let cw = code.encode(&code.message(idx));
        best = best.min(u.hamming_distance(cw.values()));
    }
    best
}

/// Error distance d(u, C): smallest i with N_i(u) > 0.
pub fn error_distance(u: &Word, code: &RSCode, budget: u64) -> Result<usize> {
    check_budget(code.codeword_count() * code.n() as u128, budget)?;
    let total = code.codeword_count() as u64;
    let best = exec::fold_chunks(
        total,
        exec::default_chunk(total),
        |range| {
            let mut best = code.n();
            for idx in range {
                let cw = code.encode(&code.message(idx));
                best = best.min(u.hamming_distance(cw.values()));
            }
            best
        },
        |a, b| a.min(b),
        code.n(),
    );
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordClass {
    /// distance meets the covering-radius bound n - k
    DeepHole,
    /// distance meets the lower bound n - deg(u)
    Ordinary,
    /// strictly between the bounds
    Neither,
    /// bounds coincide (deg(u) = k)
    Both,
}

/// Classification of a non-codeword by comparing its error distance with
/// the two elementary bounds.
pub fn classify(u: &Word, code: &RSCode, budget: u64) -> Result<WordClass> {
    let (lower, upper) = degree_bounds(u, code)?;
    let d = error_distance(u, code, budget)?;
    debug_assert!(lower <= d && d <= upper);
    Ok(match (d == lower, d == upper) {
        (true, true) => WordClass::Both,
        (true, false) => WordClass::Ordinary,
        (false, true) => WordClass::DeepHole,
        (false, false) => WordClass::Neither,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusEntry {
    pub word: Vec<u64>,
    pub degree: usize,
    pub distance: usize,
    pub class: WordClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub words_scanned: u64,
    pub codewords_skipped: u64,
    pub deep_holes: Vec<CensusEntry>,
    pub deep_hole_count: u64,
    pub degree_k_count: u64,
    /// empirical observation only; asserts nothing beyond this run
    pub all_deep_holes_have_degree_k: bool,
    /// the conjectured characterization concerns odd characteristic
    pub odd_characteristic: bool,
}

/// Scans every word of F_q^n, classifies the non-codewords, and lists the
/// deep holes in canonical word order.
pub fn deep_hole_census(code: &RSCode, budget: u64) -> Result<CensusReport> {
    let q = code.field().q();
    let n = code.n();
    let words = (q as u128).pow(n as u32);
    let work = words * code.codeword_count() * n as u128;
    check_budget(work, budget)?;
    let total = words as u64;

    let deep_holes: Vec<CensusEntry> = exec::fold_chunks(
        total,
        exec::default_chunk(total),
        |range| {
            let mut found = vec![];
            for widx in range {
                // canonical word order: lexicographic in the value sequence
                let mut t = widx;
                let mut values = vec![0u64; n];
                for slot in values.iter_mut().rev() {
                    *slot = t % q;
                    t /= q;
                }
                let u = Word::from_indices(code, &values).expect("length matches");
                let deg = match u.degree() {
                    None => continue,
                    Some(d) if d < code.k() => continue,
                    Some(d) => d,
                };
                let d = error_distance_serial(&u, code);
                if d != n - code.k() {
                    continue;
                }
                let class = if d == n - deg {
                    WordClass::Both
                } else {
                    WordClass::DeepHole
                };
                found.push(CensusEntry {
                    word: values,
                    degree: deg,
                    distance: d,
                    class,
                });
            }
            found
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
        vec![],
    );
    // codewords are exactly the q^k words of degree < k
    let codewords_skipped = code.codeword_count() as u64;
    let degree_k_count = deep_holes
        .iter()
        .filter(|e| e.degree == code.k())
        .count() as u64;
    let deep_hole_count = deep_holes.len() as u64;
    Ok(CensusReport {
        q,
        n,
        k: code.k(),
        words_scanned: total,
        codewords_skipped,
        deep_holes,
        deep_hole_count,
        degree_k_count,
        all_deep_holes_have_degree_k: degree_k_count == deep_hole_count,
        odd_characteristic: code.field().p() != 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    const B: u64 = 100_000_000;

    fn standard(q: u64, k: usize) -> RSCode {
        let f = FiniteField::with_q(q).unwrap();
        RSCode::standard(&f, k).unwrap()
    }

    #[test]
    fn mds_minimum_distance() {
        for (q, k) in [(3u64, 1usize), (4, 2), (5, 2), (5, 3), (7, 3)] {
            let code = standard(q, k);
            assert_eq!(
                code.minimum_distance(B).unwrap(),
                code.n() - k + 1,
                "q={q} k={k}"
            );
        }
        // primitive codes are MDS too
        let f5 = FiniteField::with_q(5).unwrap();
        let prim = RSCode::primitive(&f5, 2).unwrap();
        assert_eq!(prim.minimum_distance(B).unwrap(), prim.n() - 1);
    }

    #[test]
    fn word_degree_examples() {
        let code = standard(5, 2);
        let f5 = code.field().clone();
        // constant word
        let c = Word::from_poly(&code, &Poly::constant(&f5, crate::field::Elem(3)));
        assert_eq!(word_degree(&c), Some(0));
        // x^k word: interpolant is x^k when n > k
        let xk = Word::from_poly(&code, &Poly::x_pow(&f5, 2));
        assert_eq!(word_degree(&xk), Some(2));
        // zero word
        let z = Word::from_poly(&code, &Poly::zero(&f5));
        assert_eq!(word_degree(&z), None);
    }

    #[test]
    fn degree_bounds_examples() {
        let code = standard(5, 2);
        let f5 = code.field().clone();
        let u3 = Word::from_poly(&code, &Poly::x_pow(&f5, 3));
        assert_eq!(degree_bounds(&u3, &code).unwrap(), (2, 3));
        let u2 = Word::from_poly(&code, &Poly::x_pow(&f5, 2));
        assert_eq!(degree_bounds(&u2, &code).unwrap(), (3, 3));
        let u4 = Word::from_poly(&code, &Poly::x_pow(&f5, 4));
        assert_eq!(degree_bounds(&u4, &code).unwrap(), (1, 3));
        let cw = Word::from_poly(&code, &Poly::x(&f5));
        assert!(matches!(degree_bounds(&cw, &code), Err(Error::IsCodeword)));
    }

    #[test]
    fn distribution_fixtures() {
        let code = standard(5, 2);
        let f5 = code.field().clone();
        // frozen from independent enumeration
        let u3 = Word::from_poly(&code, &Poly::x_pow(&f5, 3));
        let d3 = distance_distribution(&u3, &code, B).unwrap();
        assert_eq!(d3.counts, vec![0, 0, 2, 4, 11, 8]);
        assert_eq!(d3.total(), 25);
        let u4 = Word::from_poly(&code, &Poly::x_pow(&f5, 4));
        let d4 = distance_distribution(&u4, &code, B).unwrap();
        assert_eq!(d4.counts, vec![0, 1, 0, 4, 13, 7]);
        assert_eq!(error_distance(&u4, &code, B).unwrap(), 1);
        // the two routes agree
        assert_eq!(d4, distance_distribution_pairwise(&u4, &code, B).unwrap());
        // zero word: N_0 = 1
        let z = Word::from_poly(&code, &Poly::zero(&f5));
        let dz = distance_distribution(&z, &code, B).unwrap();
        assert_eq!(dz.counts[0], 1);
        assert_eq!(dz.total(), 25);
    }

    #[test]
    fn distribution_matches_count_oracle() {
        // N_i(u) = N(u(x), n - i) for the standard code
        let code = standard(5, 2);
        let f5 = code.field().clone();
        let u = Word::from_poly(&code, &Poly::parse("x^3 + 2*x", &f5).unwrap());
        let dist = distance_distribution(&u, &code, B).unwrap();
        let hist = crate::counts::root_histogram(&u.interpolant(), 2, B).unwrap();
        for i in 0..=5usize {
            assert_eq!(dist.counts[i], hist[5 - i], "i={i}");
        }
    }

    #[test]
    fn coset_invariance() {
        // translating by a codeword leaves the distribution unchanged;
        // exhaustive over all words at q = 3
        let code3 = standard(3, 1);
        for widx in 0..27u64 {
            let mut t = widx;
            let mut values = vec![0u64; 3];
            for slot in values.iter_mut() {
                *slot = t % 3;
                t /= 3;
            }
            let u = Word::from_indices(&code3, &values).unwrap();
            let base = distance_distribution(&u, &code3, B).unwrap();
            for idx in 0..3u64 {
                let v = code3.message(idx);
                let shifted = Word::from_poly(&code3, &u.interpolant().add(&v).unwrap());
                assert_eq!(distance_distribution(&shifted, &code3, B).unwrap(), base);
            }
        }
        // spot checks at q = 4 and q = 5
        for q in [4u64, 5] {
            let code = standard(q, 2);
            let fq = code.field().clone();
            let u = Word::from_poly(&code, &Poly::x_pow(&fq, 3));
            let base = distance_distribution(&u, &code, B).unwrap();
            for idx in 0..code.codeword_count() as u64 {
                let v = code.message(idx);
                let shifted = Word::from_poly(&code, &u.interpolant().add(&v).unwrap());
                assert_eq!(distance_distribution(&shifted, &code, B).unwrap(), base);
            }
        }
    }

    #[test]
    fn classification_cases() {
        let code = standard(5, 2);
        let f5 = code.field().clone();
        // degree k: bounds agree, Both
        let u2 = Word::from_poly(&code, &Poly::x_pow(&f5, 2));
        assert_eq!(classify(&u2, &code, B).unwrap(), WordClass::Both);
        // frozen ordinary witness: evaluations of x^4 sit at distance 1
        let u4 = Word::from_poly(&code, &Poly::x_pow(&f5, 4));
        assert_eq!(classify(&u4, &code, B).unwrap(), WordClass::Ordinary);
        let cw = Word::from_poly(&code, &Poly::one(&f5));
        assert!(matches!(classify(&cw, &code, B), Err(Error::IsCodeword)));
    }

    #[test]
    fn census_q3_k1() {
        let code = standard(3, 1);
        let report = deep_hole_census(&code, B).unwrap();
        assert_eq!(report.deep_hole_count, 6);
        assert_eq!(report.degree_k_count, 6);
        assert!(report.all_deep_holes_have_degree_k);
        assert!(report.odd_characteristic);
        assert_eq!(report.words_scanned, 27);
    }

    #[test]
    fn census_q5_k2() {
        let code = standard(5, 2);
        let report = deep_hole_census(&code, B).unwrap();
        // frozen from independent enumeration: exactly the degree-k words
        assert_eq!(report.deep_hole_count, 100);
        assert_eq!(report.degree_k_count, 100);
        assert!(report.all_deep_holes_have_degree_k);
    }

    #[test]
    fn census_q2_k1() {
        let code = standard(2, 1);
        let report = deep_hole_census(&code, B).unwrap();
        assert!(!report.odd_characteristic);
        assert_eq!(report.deep_hole_count, 2);
        let words: Vec<Vec<u64>> = report.deep_holes.iter().map(|e| e.word.clone()).collect();
        assert_eq!(words, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn elementary_bounds_exhaustive_small() {
        for (q, k) in [(3u64, 1usize), (4, 1), (4, 2), (5, 2)] {
            let code = standard(q, k);
            let n = code.n();
            let total = (q as u64).pow(n as u32);
            for widx in 0..total {
                let mut t = widx;
                let mut values = Vec::with_capacity(n);
                for _ in 0..n {
                    values.push(t % q);
                    t /= q;
                }
                let u = Word::from_indices(&code, &values).unwrap();
                match degree_bounds(&u, &code) {
                    Err(Error::IsCodeword) => {
                        assert_eq!(error_distance(&u, &code, B).unwrap(), 0);
                    }
                    Ok((lower, upper)) => {
                        let d = error_distance(&u, &code, B).unwrap();
                        assert!(lower <= d && d <= upper, "q={q} k={k} w={values:?}");
                        let dist = distance_distribution(&u, &code, B).unwrap();
                        assert_eq!(dist.total() as u128, code.codeword_count());
                        assert_eq!(dist.min_distance(), Some(d));
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn primitive_code_distribution() {
        // reduction and pairwise routes agree off the standard domain too
        let f5 = FiniteField::with_q(5).unwrap();
        let code = RSCode::primitive(&f5, 2).unwrap();
        let u = Word::from_poly(&code, &Poly::x_pow(&f5, 3));
        let a = distance_distribution(&u, &code, B).unwrap();
        let b = distance_distribution_pairwise(&u, &code, B).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 25);
    }
}
