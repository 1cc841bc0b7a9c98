//! Cross-module identities that tie independent computation routes
//! together.

use rsdl_core::binom::binomial;
use rsdl_core::code::{distance_distribution, distance_distribution_pairwise, RSCode, Word};
use rsdl_core::counts::{
    alpha_split, reversed_top, root_histogram_over, tuple_congruence_count, TupleDomain,
};
use rsdl_core::field::FiniteField;
use rsdl_core::poly::Poly;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};

const B: u64 = 10_000_000;

/// Pairs over the punctured domain tie three modules together: the
/// restricted root histogram, the zero-avoiding part of the subset split,
/// and the ordered-tuple congruence count of the reversed polynomial.
#[test]
fn punctured_pair_count_three_routes() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    for q in [3u64, 5, 7] {
        let field = FiniteField::with_q(q).unwrap();
        let nonzero: Vec<_> = field.nonzero_elements().collect();
        for _ in 0..15 {
            let k = rng.gen_range(1..=2usize);
            let m = rng.gen_range(0..=2usize);
            let d = k + m;
            if d as u64 > q - 1 {
                continue;
            }
            let r = rng.gen_range(1..=d);
            let mut coeffs = vec![0u64; d + 1];
            coeffs[d] = 1;
            for c in coeffs.iter_mut().take(d).skip(k) {
                *c = rng.gen_range(0..q);
            }
            let f = Poly::from_indices(&field, &coeffs);

            // route 1: histogram of roots inside F_q^*, then C(j, r) weights
            let hist = root_histogram_over(&f, k, &nonzero, B).unwrap();
            let by_hist: u64 = hist
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    binomial(j as u64, r as i64).to_u64().unwrap() * c
                })
                .sum();

            // route 2: subset-first split by zero membership
            let split = alpha_split(&f, k, r, B).unwrap();

            // route 3: ordered congruence tuples of the reversed form
            let rev = reversed_top(&f, k, m);
            let n2s = tuple_congruence_count(&rev, d, m, r, TupleDomain::NonzeroOnly, B).unwrap();
            let rfact: u64 = (1..=r as u64).product();

            assert_eq!(by_hist, split.avoiding_zero, "q={q} k={k} m={m} r={r}");
            assert_eq!(n2s, rfact * split.avoiding_zero, "q={q} k={k} m={m} r={r}");
        }
    }
}

/// Distance distributions over the punctured evaluation set reduce to the
/// restricted root histogram of the interpolant.
#[test]
fn primitive_distribution_reduction() {
    for q in [4u64, 5, 7] {
        let field = FiniteField::with_q(q).unwrap();
        let code = RSCode::primitive(&field, 2).unwrap();
        let n = code.n();
        let nonzero: Vec<_> = field.nonzero_elements().collect();
        let u = Word::from_poly(&code, &Poly::x_pow(&field, 3));
        let dist = distance_distribution(&u, &code, B).unwrap();
        assert_eq!(dist, distance_distribution_pairwise(&u, &code, B).unwrap());
        let hist = root_histogram_over(&u.interpolant(), 2, &nonzero, B).unwrap();
        for i in 0..=n {
            assert_eq!(dist.counts[i], hist[n - i], "q={q} i={i}");
        }
    }
}

/// Extension fields go through the same reduction as prime fields.
#[test]
fn extension_field_distribution() {
    let field = FiniteField::with_q(9).unwrap();
    let code = RSCode::standard(&field, 2).unwrap();
    let u = Word::from_poly(&code, &Poly::x_pow(&field, 4));
    let dist = distance_distribution(&u, &code, 100_000_000).unwrap();
    assert_eq!(dist.total(), 81);
    assert_eq!(
        dist,
        distance_distribution_pairwise(&u, &code, 100_000_000).unwrap()
    );
    let (lower, upper) = rsdl_core::code::degree_bounds(&u, &code).unwrap();
    let d = dist.min_distance().unwrap();
    assert!(lower <= d && d <= upper);
}
