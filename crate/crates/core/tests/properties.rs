//! Cross-module invariants, checked two ways:
//!
//! - exhaustive sweeps over small parameter ranges against independent
//!   oracles (pentagonal partition counts, the no-division coefficient
//!   recurrence, naive full-sequence scans);
//! - randomized algebraic laws on the polynomial ring.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use qkoh::{
    certify, difference_profile, is_strictly_unimodal_qbinom, is_unimodal, koh_sum, koh_term,
    partitions_of, qbinom, qbinom_oracle, qbinom_q1, verify_growth, CertNode, Certificate,
    CertifyOutcome, IntPolynomial, Partition,
};

/// Partition numbers `p(0..=n_max)` by Euler's pentagonal-number recurrence,
/// sharing no code with the enumerator or the polynomial modules.
fn pentagonal_partition_numbers(n_max: usize) -> Vec<u64> {
    let mut p = vec![0i128; n_max + 1];
    p[0] = 1;
    for n in 1..=n_max {
        let mut sum = 0i128;
        let mut k = 1i128;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n as i128 {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * p[n - g1 as usize];
            if g2 <= n as i128 {
                sum += sign * p[n - g2 as usize];
            }
            k += 1;
        }
        p[n] = sum;
    }
    p.into_iter().map(|v| u64::try_from(v).unwrap()).collect()
}

const EXCEPTIONS: [(u32, u32); 9] = [
    (6, 5),
    (10, 5),
    (14, 5),
    (6, 6),
    (7, 6),
    (9, 6),
    (11, 6),
    (13, 6),
    (10, 7),
];

fn expected_strict(a: u32, b: u32) -> bool {
    (a == 2 && b == 2) || (b >= 5 && !EXCEPTIONS.contains(&(a, b)))
}

/// First degree in `[2, mid]` where the sequence fails to rise, scanning a
/// raw coefficient slice directly.
fn naive_first_violation(coeffs: &[BigUint], mid: u64) -> Option<u64> {
    (2..=mid).find(|&i| coeffs[i as usize - 1] >= coeffs[i as usize])
}

#[test]
fn partition_counts_match_the_pentagonal_recurrence() {
    let p = pentagonal_partition_numbers(30);
    for b in 0..=30u32 {
        let count = partitions_of(b).count() as u64;
        assert_eq!(count, p[b as usize], "partition count of {b}");
    }
}

#[test]
fn enumerated_partitions_revalidate_and_descend_lexicographically() {
    for b in 1..=18u32 {
        let mut previous: Option<Partition> = None;
        for lambda in partitions_of(b) {
            assert_eq!(lambda.weight(), u64::from(b));
            let revalidated = Partition::new(lambda.parts().to_vec()).unwrap();
            assert_eq!(revalidated, lambda);
            if let Some(prev) = &previous {
                assert!(
                    prev.parts() > lambda.parts(),
                    "order break at {prev} -> {lambda} for b = {b}"
                );
            }
            previous = Some(lambda);
        }
    }
}

#[test]
fn low_degree_coefficients_count_unrestricted_partitions() {
    // With a >= b, boxes of width b do not constrain partitions of n <= b,
    // so the first b+1 coefficients are the plain partition numbers.
    let p = pentagonal_partition_numbers(12);
    for b in 2..=12u32 {
        for a in b..=14 {
            let poly = qbinom(a, b);
            for n in 0..=b as usize {
                assert_eq!(
                    *poly.coeff(n),
                    BigUint::from(p[n]),
                    "coefficient {n} of ({a}, {b})"
                );
            }
        }
    }
}

#[test]
fn product_route_matches_recurrence_oracle_on_small_pairs() {
    for a in 0..=10u32 {
        for b in 0..=a {
            let fast = qbinom(a, b);
            assert_eq!(fast, qbinom_oracle(a, b), "routes disagree at ({a}, {b})");
            assert_eq!(fast, qbinom(b, a), "parameter swap at ({a}, {b})");
            assert_eq!(fast.eval_at_one(), qbinom_q1(a, b), "q = 1 at ({a}, {b})");
        }
    }
}

#[test]
fn strictness_verdicts_agree_with_a_naive_scan() {
    for a in 1..=25u32 {
        for b in 1..=a {
            let report = is_strictly_unimodal_qbinom(a, b);
            let coeffs = qbinom_oracle(a, b);
            let naive = naive_first_violation(coeffs.coeffs(), u64::from(a) * u64::from(b) / 2);
            assert_eq!(report.is_strict(), naive.is_none(), "verdict at ({a}, {b})");
            assert_eq!(report.witness, naive, "witness at ({a}, {b})");
        }
    }
}

#[test]
fn decomposition_terms_are_symmetric_unimodal_and_rise_to_the_middle() {
    for a in 2..=14u32 {
        for b in 2..=a {
            let ab = (a as usize) * (b as usize);
            for lambda in partitions_of(b) {
                let poly = koh_term(a, &lambda).unwrap().expand();
                if poly.is_zero() {
                    continue;
                }
                assert!(poly.degree().unwrap() <= ab, "degree of ({a}, {b}) {lambda}");
                for i in 0..=ab / 2 {
                    assert_eq!(
                        poly.coeff(i),
                        poly.coeff(ab - i),
                        "symmetry of ({a}, {b}) {lambda} at {i}"
                    );
                }
                assert!(is_unimodal(&poly).unwrap(), "unimodality of ({a}, {b}) {lambda}");
                for i in 1..=ab / 2 {
                    assert!(
                        poly.coeff(i - 1) <= poly.coeff(i),
                        "({a}, {b}) {lambda} falls before the middle at {i}"
                    );
                }
            }
        }
    }
}

#[test]
fn decomposition_sum_reproduces_the_q_binomial_on_small_pairs() {
    for a in 2..=12u32 {
        for b in 2..=a {
            assert_eq!(koh_sum(a, b).unwrap(), qbinom(a, b), "identity at ({a}, {b})");
        }
    }
}

#[test]
fn strictness_classification_matches_the_closed_form_description() {
    for a in 2..=40u32 {
        for b in 2..=a {
            let report = is_strictly_unimodal_qbinom(a, b);
            assert_eq!(
                report.is_strict(),
                expected_strict(a, b),
                "classification at ({a}, {b})"
            );
        }
    }
}

#[test]
fn exception_witnesses_are_minimal() {
    for (a, b) in EXCEPTIONS {
        let report = is_strictly_unimodal_qbinom(a, b);
        let witness = report.witness.expect("exceptions are non-strict");
        let coeffs = qbinom(a, b);
        assert!(coeffs.coeff(witness as usize - 1) >= coeffs.coeff(witness as usize));
        for i in 2..witness {
            assert!(
                coeffs.coeff(i as usize - 1) < coeffs.coeff(i as usize),
                "({a}, {b}): degree {i} violates before the witness {witness}"
            );
        }
    }
}

fn assert_covers_without_gaps(cert: &Certificate) {
    let mid = u64::from(cert.a) * u64::from(cert.b) / 2;
    match &cert.root {
        CertNode::DirectCheck => {}
        CertNode::Inductive { base, step } => {
            assert_eq!(base.combined_interval.lo, 1, "({}, {})", cert.a, cert.b);
            assert_eq!(step.claimed_interval.hi, mid, "({}, {})", cert.a, cert.b);
            assert!(
                step.claimed_interval.lo <= base.combined_interval.hi + 1,
                "coverage gap in ({}, {})",
                cert.a,
                cert.b
            );
            assert_covers_without_gaps(&step.child);
        }
    }
}

#[test]
fn certificates_cover_degrees_one_through_the_middle_without_gaps() {
    for (a, b) in [(40u32, 15u32), (45, 16), (29, 17), (23, 19), (25, 20), (30, 22), (30, 30)] {
        match certify(a, b).unwrap() {
            CertifyOutcome::Certified(cert) => assert_covers_without_gaps(&cert),
            CertifyOutcome::NotStrict(report) => panic!("expected strict at ({a}, {b}): {report:?}"),
        }
    }
}

#[test]
fn growth_reports_verify_across_the_family_window() {
    for d in 2..=3u32 {
        let a0 = (d + 2) * (d + 3) + 6;
        for a in a0..=a0 + 3 {
            let report = verify_growth(d, a).unwrap();
            assert!(report.verified, "growth d = {d}, a = {a}: {:?}", report.failures);
            assert!(report.failures.is_empty());
        }
    }
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(0u64..50, 0..8).prop_map(IntPolynomial::from_coeffs)
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    small_poly().prop_filter("nonzero divisor", |p| !p.is_zero())
}

/// Palindromic coefficient vector with a nonzero outermost entry.
fn symmetric_poly() -> impl Strategy<Value = IntPolynomial> {
    (
        1u64..30,
        prop::collection::vec(0u64..30, 0..5),
        prop::option::of(0u64..30),
    )
        .prop_map(|(head, body, middle)| {
            let mut half = vec![head];
            half.extend(body);
            let mut coeffs = half.clone();
            coeffs.extend(middle);
            coeffs.extend(half.into_iter().rev());
            IntPolynomial::from_coeffs(coeffs)
        })
}

proptest! {
    #[test]
    fn multiplication_is_commutative(p in small_poly(), r in small_poly()) {
        prop_assert_eq!(p.multiply(&r), r.multiply(&p));
    }

    #[test]
    fn multiplication_is_associative(
        p in small_poly(),
        r in small_poly(),
        s in small_poly(),
    ) {
        prop_assert_eq!(p.multiply(&r).multiply(&s), p.multiply(&r.multiply(&s)));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        p in small_poly(),
        r in small_poly(),
        s in small_poly(),
    ) {
        prop_assert_eq!(p.multiply(&r.add(&s)), p.multiply(&r).add(&p.multiply(&s)));
    }

    #[test]
    fn evaluation_at_one_is_multiplicative(p in small_poly(), r in small_poly()) {
        prop_assert_eq!(
            p.multiply(&r).eval_at_one(),
            p.eval_at_one() * r.eval_at_one()
        );
    }

    #[test]
    fn exact_division_inverts_multiplication(p in small_poly(), d in nonzero_poly()) {
        prop_assert_eq!(p.multiply(&d).exact_divide(&d).unwrap(), p);
    }

    #[test]
    fn polynomial_json_is_canonical(p in small_poly()) {
        let json = serde_json::to_string(&p).unwrap();
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn symmetric_polynomials_are_unimodal_iff_they_rise_to_the_middle(
        p in symmetric_poly(),
    ) {
        let rises = difference_profile(&p)
            .unwrap()
            .diffs
            .iter()
            .all(|d| *d >= BigInt::from(0));
        prop_assert_eq!(is_unimodal(&p).unwrap(), rises);
    }
}
