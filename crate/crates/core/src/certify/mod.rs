//! Machine-checkable certificates of strict unimodality.
//!
//! A certificate reduces the claim `c_1 < c_2 < ... < c_{floor(ab/2)}` for
//! `qbinom(a, b)` to a tree of finite obligations:
//!
//! - every KOH term is symmetric about `ab/2` and unimodal, hence
//!   nondecreasing up to the middle, so a single term that strictly
//!   increases at a degree forces the whole sum to strictly increase there;
//! - low degrees are covered by the ambient coefficients themselves
//!   (partition counts) glued to one base-family term;
//! - the remaining degrees are covered by a family term of the form
//!   `q^s * qbinom(a', b') * (1 + ... + q^t)`, whose strictness reduces to
//!   the child pair `(a', b')` and a staircase side condition, recursively.
//!
//! Intervals are closed degree ranges: `[lo, hi]` asserts
//! `c_lo < c_{lo+1} < ... < c_hi` for the polynomial in question. Two ranges
//! compose only when they overlap in at least one degree; adjacency is not
//! enough, because the composed chain would be missing the comparison at the
//! junction.
//!
//! Generation ([`certify`]) and verification ([`verify_certificate`]) are
//! deliberately independent: the generator reads endpoints off expanded
//! factor data of the KOH terms, while the symbolic verifier re-derives them
//! from per-family closed formulas and the numeric verifier re-expands every
//! cited polynomial and scans raw coefficients.

mod generate;
mod growth;
mod verify;

pub use generate::certify;
pub use growth::{verify_growth, GrowthReport};
pub use verify::verify_certificate;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::koh::ProofFamily;
use crate::partitions::Partition;
use crate::unimodality::{is_strictly_unimodal_qbinom, StrictnessReport};

/// A closed degree range `[lo, hi]`: the claim that coefficients strictly
/// increase from `c_lo` through `c_hi`. Ranges with `lo > hi` are empty and
/// claim nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Strict-increase range of `q^shift * (1+...+q^s1) * (1+...+q^s2)`.
///
/// The product of two staircases steps up by exactly 1 at each degree
/// through `min(s1, s2)` and plateaus or falls after, so relative to the
/// shift the strict range is `[shift+1, shift+min(s1, s2)]`. When
/// `min(s1, s2) = 0` one factor is constant and the range is empty.
pub fn staircase_strict_interval(shift: u64, s1: u64, s2: u64) -> Interval {
    Interval::new(shift + 1, shift + s1.min(s2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Families usable as the reduction step of an inductive certificate node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepFamily {
    #[serde(rename = "mod-3-zero")]
    Mod3Zero,
    #[serde(rename = "mod-3-one")]
    Mod3One,
    #[serde(rename = "mod-3-two")]
    Mod3Two,
    #[serde(rename = "single-row")]
    SingleRow,
}

impl StepFamily {
    pub(crate) fn proof_family(self) -> ProofFamily {
        match self {
            StepFamily::Mod3Zero => ProofFamily::Mod3Zero,
            StepFamily::Mod3One => ProofFamily::Mod3One,
            StepFamily::Mod3Two => ProofFamily::Mod3Two,
            StepFamily::SingleRow => ProofFamily::SingleRow,
        }
    }

    /// Whether the family's term carries a staircase factor, and with it a
    /// Lemma-2 obligation.
    pub fn has_linear_factor(self) -> bool {
        matches!(self, StepFamily::Mod3One | StepFamily::Mod3Two)
    }
}

impl fmt::Display for StepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.proof_family().name())
    }
}

/// One arithmetic inequality the proof relies on, with its evaluated truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCondition {
    pub label: String,
    pub holds: bool,
}

/// The `(c, d, t)` triple for which `qbinom(c, d) * (1 + ... + q^t)` must be
/// strictly increasing from degree 0 through its middle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Obligation {
    pub c: u32,
    pub d: u32,
    pub t: u64,
}

/// Coverage of low degrees: the ambient coefficients count partitions for
/// `n <= b`, giving `[1, b-2]` directly, and the parity base family's term
/// extends that range up to roughly `ab/2 - a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BaseCoverage {
    pub parity: Parity,
    pub ambient_interval: Interval,
    pub term_partition: Partition,
    pub term_interval: Interval,
    pub combined_interval: Interval,
}

/// Coverage of the remaining degrees by one family term
/// `q^shift * qbinom(child) * (1 + ... + q^linear_factor)`, reduced to the
/// child certificate plus side conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InductiveStep {
    pub family: StepFamily,
    pub shift: u64,
    /// Staircase length `t`; present exactly for the families with a linear
    /// factor.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub linear_factor: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma2_obligation: Option<Lemma2Obligation>,
    pub claimed_interval: Interval,
    pub side_conditions: Vec<SideCondition>,
    pub child: Box<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertNode {
    /// Leaf verified by exhaustively scanning the coefficient sequence.
    DirectCheck,
    /// Base coverage glued to an inductive reduction step.
    Inductive {
        base: BaseCoverage,
        step: InductiveStep,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub a: u32,
    pub b: u32,
    pub root: CertNode,
}

/// Result of [`certify`]: either a certificate or the strictness report
/// whose witness explains why none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CertifyOutcome {
    Certified(Certificate),
    NotStrict(StrictnessReport),
}

impl CertifyOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certified(cert) => Some(cert),
            CertifyOutcome::NotStrict(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Symbolic,
    Numeric,
    Both,
}

/// Classifies every pair `2 <= b <= a <= a_max` with `b <= b_max`. Work is
/// distributed across threads; the returned order is canonical (b ascending,
/// then a ascending) regardless of schedule.
pub fn scan_exceptions(a_max: u32, b_max: u32) -> Vec<StrictnessReport> {
    let mut pairs = Vec::new();
    for b in 2..=b_max.min(a_max) {
        for a in b..=a_max {
            pairs.push((a, b));
        }
    }
    let mut reports: Vec<StrictnessReport> = pairs
        .into_par_iter()
        .map(|(a, b)| is_strictly_unimodal_qbinom(a, b))
        .collect();
    reports.sort_by_key(|r| (r.b, r.a));
    reports
}

/// Canonical side-condition labels, shared by the generator and the symbolic
/// verifier so that label equality is meaningful. The truth values behind
/// them are always computed independently on each side.
pub(crate) mod cond {
    pub(crate) const JUNCTION: &str = "2*s + 2*a < a*b";
    pub(crate) const CHILD_MIN: &str = "child larger parameter >= 15";
    pub(crate) const LINEAR_MARGIN: &str = "c*d >= t + 3";
    pub(crate) const MOD3_ZERO: &str = "b % 3 == 0 && b >= 15";
    pub(crate) const MOD3_ONE: &str = "b % 3 == 1 && b >= 19";
    pub(crate) const MOD3_TWO: &str = "b % 3 == 2 && b >= 20";
    pub(crate) const SINGLE_ROW: &str = "5 <= b <= 17 && b != 15 && a >= 2*b + 13";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unimodality::Verdict;

    #[test]
    fn staircase_interval_examples() {
        assert_eq!(staircase_strict_interval(0, 2, 4), Interval::new(1, 2));
        assert_eq!(staircase_strict_interval(8, 72, 112), Interval::new(9, 80));
        let empty = staircase_strict_interval(3, 0, 5);
        assert!(empty.is_empty());
    }

    #[test]
    fn interval_basics() {
        assert!(!Interval::new(2, 2).is_empty());
        assert!(Interval::new(3, 2).is_empty());
        assert_eq!(Interval::new(1, 7).to_string(), "[1, 7]");
    }

    #[test]
    fn scan_reproduces_the_exception_list() {
        let reports = scan_exceptions(20, 7);
        let non_strict_high: Vec<(u32, u32)> = reports
            .iter()
            .filter(|r| r.b >= 5 && !r.is_strict())
            .map(|r| (r.a, r.b))
            .collect();
        assert_eq!(
            non_strict_high,
            vec![
                (6, 5),
                (10, 5),
                (14, 5),
                (6, 6),
                (7, 6),
                (9, 6),
                (11, 6),
                (13, 6),
                (10, 7)
            ]
        );
        for r in &reports {
            match (r.a, r.b) {
                (2, 2) => assert_eq!(r.verdict, Verdict::Strict),
                (_, 2..=4) => assert_eq!(r.verdict, Verdict::NonStrict, "({}, {})", r.a, r.b),
                _ => {}
            }
        }
        // Canonical order and full range coverage.
        let keys: Vec<(u32, u32)> = reports.iter().map(|r| (r.b, r.a)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(reports.len(), (2..=7).map(|b| 20 - b + 1).sum::<usize>());
    }

    #[test]
    fn scan_handles_degenerate_ranges() {
        assert!(scan_exceptions(5, 1).is_empty());
        assert_eq!(scan_exceptions(2, 8).len(), 1);
    }
}
