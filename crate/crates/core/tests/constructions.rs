mod common;

use std::collections::BTreeSet;

use common::{random_unit, rng};
use elliptope::constructors::li_tam_vectors;
use elliptope::{
    check_extreme, li_tam_complex, li_tam_real, proposition1, trace_norm, truncate, truncation_scan,
    validate_correlation, Complex64, Field, HermitianMatrix, MatrixGenerator, Tolerances, Verdict,
};
use proptest::prelude::*;

const COMMITTED_SEED: u64 = 20_240_917;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn li_tam_complex_is_extreme_at_the_rank_bound() {
    for r in 1..=5 {
        let (c, g) = li_tam_complex(r, r * r, &tol()).unwrap();
        let report = check_extreme(&c, &tol()).unwrap();
        assert_eq!(report.verdict, Verdict::Extreme, "r = {r}");
        assert_eq!(report.rank, r);
        assert_eq!(g.r(), r);
        assert_eq!(report.rank * report.rank, c.n());
    }
}

#[test]
fn li_tam_real_is_extreme_at_the_rank_bound() {
    for r in 1..=5 {
        let (c, _) = li_tam_real(r, r * (r + 1) / 2, &tol()).unwrap();
        let report = check_extreme(&c, &tol()).unwrap();
        assert_eq!(report.verdict, Verdict::Extreme, "r = {r}");
        assert_eq!(report.rank, r);
        assert_eq!(r * r + r, 2 * c.n());
    }
}

#[test]
fn real_construction_is_not_extreme_over_complex() {
    let (c, _) = li_tam_real(2, 3, &tol()).unwrap();
    let lifted = validate_correlation(&c.matrix().clone().with_field(Field::Complex), &tol()).unwrap();
    let report = check_extreme(&lifted, &tol()).unwrap();
    assert_eq!(report.verdict, Verdict::NotExtreme);
    report.witness.unwrap().verify(&lifted, &tol()).unwrap();
}

#[test]
fn padded_constructions_stay_extreme() {
    for r in 1..=3 {
        for extra in [1, 4] {
            let (c, _) = li_tam_complex(r, r * r + extra, &tol()).unwrap();
            let report = check_extreme(&c, &tol()).unwrap();
            assert_eq!((report.rank, report.verdict), (r, Verdict::Extreme));
            let (c, _) = li_tam_real(r, r * (r + 1) / 2 + extra, &tol()).unwrap();
            let report = check_extreme(&c, &tol()).unwrap();
            assert_eq!((report.rank, report.verdict), (r, Verdict::Extreme));
        }
    }
}

fn distinct_rows(c: &HermitianMatrix) -> usize {
    let n = c.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = c.get(i, j);
                    (z.re.to_bits(), z.im.to_bits())
                })
                .collect::<Vec<_>>()
        })
        .collect::<BTreeSet<_>>()
        .len()
}

#[test]
fn li_tam_has_finitely_many_distinct_columns() {
    for r in 1..=4 {
        for n in [r * r, r * r + 3, 40] {
            let (c, _) = li_tam_complex(r, n, &tol()).unwrap();
            assert!(distinct_rows(c.matrix()) <= r * r);
        }
        for n in [r * (r + 1) / 2, 40] {
            let (c, _) = li_tam_real(r, n, &tol()).unwrap();
            assert!(distinct_rows(c.matrix()) <= r * (r + 1) / 2);
        }
        assert_eq!(li_tam_vectors(Field::Complex, r).len(), r * r);
        assert_eq!(li_tam_vectors(Field::Real, r).len(), r * (r + 1) / 2);
    }
}

#[test]
fn committed_seed_three_samples_span_symmetric_two_by_two() {
    let (c, _) = proposition1(2, Field::Real, 3, COMMITTED_SEED, &tol()).unwrap();
    let report = check_extreme(&c, &tol()).unwrap();
    assert_eq!(report.verdict, Verdict::Extreme);
    assert_eq!((report.rank, report.span_dim, report.ambient_dim), (2, 3, 3));
}

/// Unit `psi2` within distance 1 of unit `psi1`.
fn close_pair(seed: u64, field: Field, d: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut rg = rng(seed);
    let a = random_unit(&mut rg, field, d);
    loop {
        let b = random_unit(&mut rg, field, d);
        let dist: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        if dist <= 1.0 {
            return (a, b);
        }
        // pull b towards a until the pair qualifies
        let mixed: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * 0.8 + y * 0.2).collect();
        let norm = mixed.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mixed: Vec<Complex64> = mixed.into_iter().map(|z| z / norm).collect();
        let dist: f64 = a
            .iter()
            .zip(&mixed)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if dist <= 1.0 {
            return (a, mixed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_difference_bound(
        d in 2usize..=8,
        field in prop_oneof![Just(Field::Real), Just(Field::Complex)],
        seed in any::<u64>(),
    ) {
        let (a, b) = close_pair(seed, field, d);
        let dist: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        let diff = HermitianMatrix::projector(field, &a)
            .unwrap()
            .add_scaled(&HermitianMatrix::projector(field, &b).unwrap(), -1.0)
            .unwrap();
        let tn = trace_norm(&diff).unwrap();
        prop_assert!(tn <= 3.0 * dist + 1e-12);
        let overlap: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
        prop_assert!((tn - 2.0 * (1.0 - overlap.norm_sqr()).max(0.0).sqrt()).abs() <= 1e-9);
    }

    #[test]
    fn constructed_matrices_validate(
        d in 1usize..=4,
        n in 1usize..=20,
        field in prop_oneof![Just(Field::Real), Just(Field::Complex)],
        seed in any::<u64>(),
    ) {
        let (c, g) = proposition1(d, field, n, seed, &tol()).unwrap();
        prop_assert!(c.psd_floor() >= -tol().psd);
        prop_assert_eq!(g.n(), n);
    }

    #[test]
    fn truncations_are_nested_and_ranks_grow(
        d in 1usize..=3,
        field in prop_oneof![Just(Field::Real), Just(Field::Complex)],
        seed in any::<u64>(),
    ) {
        let generator = MatrixGenerator::Proposition1Stream { dim: d, field, seed };
        let big = truncate(&generator, 14, &tol()).unwrap();
        for n in 1..14 {
            let small = truncate(&generator, n, &tol()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(small.get(i, j), big.get(i, j));
                }
            }
        }
        let trace = truncation_scan(&generator, 1, 14, 1, &tol()).unwrap();
        prop_assert!(trace.ranks.windows(2).all(|w| w[0] <= w[1]));
        // once the rank is saturated and the truncation extreme, it stays extreme
        if let Some(i0) = (0..trace.sizes.len())
            .find(|&i| trace.ranks[i] == d && trace.verdicts[i] == Verdict::Extreme)
        {
            prop_assert!(trace.verdicts[i0..].iter().all(|&v| v == Verdict::Extreme));
            prop_assert_eq!(trace.saturated_at, Some(trace.sizes[i0]));
        }
    }
}
