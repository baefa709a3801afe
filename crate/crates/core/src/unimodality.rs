//! Unimodality and strictness predicates for coefficient sequences.
//!
//! Two different strictness notions coexist and must not be conflated:
//!
//! * [`is_strictly_unimodal_qbinom`]: the verdict for a q-binomial, requiring
//!   `c_1 < c_2 < ... < c_{floor(ab/2)}`. The chain starts at degree 1
//!   because `c_0 = c_1 = 1` always. For odd `a*b` the equal central pair is
//!   forced by symmetry and does not count against strictness.
//! * [`is_strict_all_degrees`]: strict increase from degree 0 up to the
//!   middle, the conclusion a product `qbinom(c, d) * (1 + q + ... + q^t)`
//!   must satisfy. Requires symmetric input.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::IntPolynomial;
use crate::qbinom::qbinom;
use crate::Result;

/// Whether `c_i = c_{D-i}` for all `i`. Errors on the zero polynomial.
pub fn is_symmetric(p: &IntPolynomial) -> Result<bool> {
    let cs = nonzero_coeffs(p)?;
    let d = cs.len() - 1;
    Ok((0..=d / 2).all(|i| cs[i] == cs[d - i]))
}

/// Whether the coefficients rise weakly and then fall weakly. Plateaus are
/// allowed anywhere; a strict rise after a strict fall is not.
pub fn is_unimodal(p: &IntPolynomial) -> Result<bool> {
    let cs = nonzero_coeffs(p)?;
    let mut rising = true;
    for w in cs.windows(2) {
        if w[1] > w[0] {
            if !rising {
                return Ok(false);
            }
        } else if w[1] < w[0] {
            rising = false;
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Strict,
    NonStrict,
}

/// Strictness verdict for `qbinom(a, b)`, with the first failing degree as
/// witness when the verdict is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictnessReport {
    pub a: u32,
    pub b: u32,
    /// Degree of the polynomial, `a * b`.
    pub degree: u64,
    pub verdict: Verdict,
    /// Smallest degree `i` in `[2, floor(ab/2)]` with `c_{i-1} >= c_i`;
    /// present exactly when the verdict is non-strict.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<u64>,
}

impl StrictnessReport {
    pub fn is_strict(&self) -> bool {
        self.verdict == Verdict::Strict
    }
}

/// Decides whether `qbinom(a, b)` is strictly unimodal in the q-binomial
/// sense: `c_1 < c_2 < ... < c_{floor(ab/2)}`.
pub fn is_strictly_unimodal_qbinom(a: u32, b: u32) -> StrictnessReport {
    let poly = qbinom(a, b);
    let degree = u64::from(a) * u64::from(b);
    let witness = first_non_strict_degree(poly.coeffs(), degree / 2);
    StrictnessReport {
        a,
        b,
        degree,
        verdict: if witness.is_none() { Verdict::Strict } else { Verdict::NonStrict },
        witness,
    }
}

/// First degree `i` in `[2, mid]` where `c_{i-1} >= c_i`, scanning an
/// already-computed coefficient sequence.
pub(crate) fn first_non_strict_degree(cs: &[BigUint], mid: u64) -> Option<u64> {
    for i in 2..=mid {
        if cs[(i - 1) as usize] >= cs[i as usize] {
            return Some(i);
        }
    }
    None
}

/// Strict increase at every degree from 0 to the middle:
/// `c_0 < c_1 < ... < c_{floor(D/2)}`. Errors on zero or non-symmetric input,
/// since the notion only makes sense for symmetric polynomials.
pub fn is_strict_all_degrees(p: &IntPolynomial) -> Result<bool> {
    let cs = nonzero_coeffs(p)?;
    let d = cs.len() - 1;
    for i in 0..=d / 2 {
        if cs[i] != cs[d - i] {
            return Err(Error::NotSymmetric { lo: i, hi: d - i });
        }
    }
    Ok(cs.windows(2).take(d / 2).all(|w| w[0] < w[1]))
}

/// The arithmetic side condition under which multiplying a strictly unimodal
/// `qbinom(c, d)` by `1 + q + ... + q^t` preserves strictness from degree 0:
/// `1 <= t <= c*d` and `t != c*d - 2`.
///
/// The exclusion is not vacuous: `(c, d, t) = (2, 2, 2)` fails. Callers are
/// responsible for the hypothesis that `qbinom(c, d)` is strictly unimodal.
pub fn lemma2_applies(c: u64, d: u64, t: u64) -> bool {
    let cd = c * d;
    t >= 1 && t <= cd && t != cd.wrapping_sub(2)
}

/// Consecutive coefficient differences `c_i - c_{i-1}` for
/// `1 <= i <= floor(D/2)`, signed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    pub diffs: Vec<BigInt>,
}

pub fn difference_profile(p: &IntPolynomial) -> Result<DifferenceProfile> {
    let cs = nonzero_coeffs(p)?;
    let d = cs.len() - 1;
    let diffs = (1..=d / 2)
        .map(|i| BigInt::from(cs[i].clone()) - BigInt::from(cs[i - 1].clone()))
        .collect();
    Ok(DifferenceProfile { diffs })
}

fn nonzero_coeffs(p: &IntPolynomial) -> Result<&[BigUint]> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn p(coeffs: &[u64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn symmetry_checks() {
        assert!(is_symmetric(&p(&[1, 1, 2, 1, 1])).unwrap());
        assert!(!is_symmetric(&p(&[1, 2])).unwrap());
        assert!(is_symmetric(&p(&[5])).unwrap());
        assert!(matches!(is_symmetric(&IntPolynomial::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn unimodality_checks() {
        assert!(is_unimodal(&p(&[1, 2, 2, 1])).unwrap());
        assert!(is_unimodal(&p(&[3, 3, 3])).unwrap());
        assert!(is_unimodal(&p(&[1, 2, 3])).unwrap());
        assert!(!is_unimodal(&p(&[1, 2, 1, 2])).unwrap());
        assert!(!is_unimodal(&p(&[2, 1, 2])).unwrap());
    }

    #[test]
    fn qbinom_strictness_verdicts() {
        let report = is_strictly_unimodal_qbinom(2, 2);
        assert_eq!(report.verdict, Verdict::Strict);
        assert_eq!(report.witness, None);
        assert_eq!(report.degree, 4);

        // qbinom(3, 3) = 1,1,2,3,3,3,3,2,1,1: c_3 = c_4 = 3 at the middle.
        let report = is_strictly_unimodal_qbinom(3, 3);
        assert_eq!(report.verdict, Verdict::NonStrict);
        assert_eq!(report.witness, Some(4));

        // (a, 2) for a > 2 plateaus early.
        assert_eq!(is_strictly_unimodal_qbinom(3, 2).verdict, Verdict::NonStrict);

        // Central equality for odd a*b does not break strictness: (5, 5).
        assert_eq!(is_strictly_unimodal_qbinom(5, 5).verdict, Verdict::Strict);
    }

    #[test]
    fn witness_is_minimal() {
        let report = is_strictly_unimodal_qbinom(6, 5);
        assert_eq!(report.verdict, Verdict::NonStrict);
        let w = report.witness.unwrap();
        let cs = qbinom(6, 5);
        let cs = cs.coeffs();
        assert!(cs[(w - 1) as usize] >= cs[w as usize]);
        for i in 2..w {
            assert!(cs[(i - 1) as usize] < cs[i as usize], "premature witness at {i}");
        }
    }

    #[test]
    fn strict_all_degrees_examples() {
        // qbinom(2,2) * (1 + q): 1,2,3,3,2,1 rises strictly to the middle.
        let prod = qbinom(2, 2).multiply(&IntPolynomial::staircase(1));
        assert_eq!(prod, p(&[1, 2, 3, 3, 2, 1]));
        assert!(is_strict_all_degrees(&prod).unwrap());

        // qbinom(2,2) * (1 + q + q^2): 1,2,4,4,4,2,1 stalls at the middle.
        let prod = qbinom(2, 2).multiply(&IntPolynomial::staircase(2));
        assert_eq!(prod, p(&[1, 2, 4, 4, 4, 2, 1]));
        assert!(!is_strict_all_degrees(&prod).unwrap());

        assert!(matches!(
            is_strict_all_degrees(&p(&[1, 2])),
            Err(Error::NotSymmetric { lo: 0, hi: 1 })
        ));
        assert!(is_strict_all_degrees(&p(&[7])).unwrap());
    }

    #[test]
    fn lemma2_side_condition() {
        assert!(lemma2_applies(2, 2, 1));
        assert!(lemma2_applies(2, 2, 4));
        assert!(!lemma2_applies(2, 2, 2)); // t = cd - 2, the excluded value
        assert!(!lemma2_applies(2, 2, 5)); // t > cd
        assert!(!lemma2_applies(2, 2, 0)); // t must be positive
        assert!(lemma2_applies(1, 1, 1)); // cd - 2 underflows; 1 <= 1 <= 1 holds
    }

    #[test]
    fn difference_profiles() {
        let prof = difference_profile(&p(&[1, 2, 3])).unwrap();
        assert_eq!(prof.diffs, vec![BigInt::from(1)]);

        let prof = difference_profile(&qbinom(2, 2)).unwrap();
        assert_eq!(prof.diffs, vec![BigInt::from(0), BigInt::from(1)]);

        // The profile of a non-strict q-binomial shows a non-positive entry
        // exactly at its witness degree.
        let report = is_strictly_unimodal_qbinom(6, 5);
        let w = report.witness.unwrap() as usize;
        let prof = difference_profile(&qbinom(6, 5)).unwrap();
        assert!(prof.diffs[w - 1] <= BigInt::from(0));

        assert!(matches!(difference_profile(&IntPolynomial::zero()), Err(Error::ZeroPolynomial)));
    }
}
