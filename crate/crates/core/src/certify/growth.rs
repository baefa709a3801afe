//! Coefficient-gap growth verification.
//!
//! For `d >= 2` the family `b = 2d + 4`, `a >= (d+2)(d+3) + 6` has
//! consecutive-coefficient gaps of at least `d` from degree
//! `L = (b-1)(b-2) + 1` through the middle. The check has two halves:
//!
//! - a structural half that certifies, for each `k = 1..=d`, the child pair
//!   and staircase length behind the k-th surplus term (strict unimodality
//!   of the child plus the lemma-2 side condition), failing hard if any of
//!   it breaks;
//! - an exact numeric sweep of the gaps `c_i - c_{i-1}` over
//!   `L <= i <= floor(ab/2)`, recording every shortfall degree instead of
//!   aborting, so a near-miss is inspectable.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qbinom::qbinom;
use crate::unimodality::{is_strictly_unimodal_qbinom, lemma2_applies};
use crate::Result;

/// Outcome of one growth check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// Guaranteed minimum gap.
    pub d: u32,
    /// Column count `2d + 4`.
    pub b: u32,
    /// Smallest admissible row count `(d+2)(d+3) + 6`.
    pub a0: u32,
    /// First degree the guarantee covers, `(b-1)(b-2) + 1`.
    #[serde(rename = "L")]
    pub l: u64,
    /// Row count actually checked.
    pub a: u32,
    /// Whether every gap from `L` through `floor(ab/2)` is at least `d`.
    pub verified: bool,
    /// Degrees where the gap fell short, empty when `verified`.
    pub failures: Vec<u64>,
}

/// Runs the growth check for the pair `(a, 2d + 4)`.
///
/// # Errors
/// `Precondition` if `d < 2` or `a` is below the family threshold;
/// `Verification` if a structural obligation fails. Gap shortfalls are not
/// errors; they are reported through `failures`.
pub fn verify_growth(d: u32, a: u32) -> Result<GrowthReport> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "growth checks need d >= 2, got d = {d}"
        )));
    }
    let d64 = u64::from(d);
    let b64 = 2 * d64 + 4;
    let a0 = (d64 + 2) * (d64 + 3) + 6;
    if a0 > u64::from(u32::MAX) {
        return Err(Error::Overflow(format!("row threshold for d = {d}")));
    }
    let l = (b64 - 1) * (b64 - 2) + 1;
    debug_assert_eq!(l, 4 * d64 * d64 + 10 * d64 + 7);
    if u64::from(a) < a0 {
        return Err(Error::Precondition(format!(
            "growth family for d = {d} needs a >= {a0}, got a = {a}"
        )));
    }
    let b = b64 as u32;
    let a64 = u64::from(a);

    for k in 1..=d64 {
        let path = format!("growth(d={d}, a={a})/k={k}");
        let c = a64 - 2 * b64 + 2 * k + 2;
        let dd = b64 - k - 1;
        let t = (k + 1) * (a64 + 2) - 2 * b64;
        let report = is_strictly_unimodal_qbinom(c as u32, dd as u32);
        if !report.is_strict() {
            return Err(Error::Verification {
                path,
                condition: format!("surplus child ({c}, {dd}) is strictly unimodal"),
            });
        }
        if !lemma2_applies(c, dd, t) {
            return Err(Error::Verification {
                path,
                condition: format!("lemma-2 applies to ({c}, {dd}) with t = {t}"),
            });
        }
    }

    let poly = qbinom(a, b);
    let mid = a64 * b64 / 2;
    let want = BigUint::from(d);
    let mut failures = Vec::new();
    for i in l..=mid {
        if *poly.coeff(i as usize) < poly.coeff(i as usize - 1) + &want {
            failures.push(i);
        }
    }
    let verified = failures.is_empty();
    Ok(GrowthReport {
        d,
        b,
        a0: a0 as u32,
        l,
        a,
        verified,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_family_member_verifies() {
        let report = verify_growth(2, 26).unwrap();
        assert_eq!(report.b, 8);
        assert_eq!(report.a0, 26);
        assert_eq!(report.l, 43);
        assert!(report.verified);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn row_count_below_threshold_is_rejected() {
        let err = verify_growth(2, 25).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("26"));
    }

    #[test]
    fn gap_bound_below_two_is_rejected() {
        assert!(matches!(
            verify_growth(1, 100),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(verify_growth(0, 5), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_serializes_the_start_degree_as_capital_l() {
        let report = verify_growth(2, 26).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains(r#""L":43"#));
        let back: GrowthReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
