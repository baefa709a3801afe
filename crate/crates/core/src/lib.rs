//! Exact arithmetic for Gaussian binomial coefficients and machine-checkable
//! certificates of their strict unimodality.
//!
//! The crate provides, in dependency order:
//!
//! - [`poly`]: a dense polynomial ring over arbitrary-precision nonnegative
//!   integers, with exact division.
//! - [`partitions`]: integer partitions and their reverse-lexicographic
//!   enumeration.
//! - [`qbinom`]: Gaussian binomial coefficients through an incremental
//!   product kernel, plus an independent counting oracle.
//! - [`unimodality`]: symmetry, unimodality, and strictness predicates on
//!   coefficient sequences.
//! - [`koh`]: the KOH decomposition into partition-indexed terms and the
//!   closed forms of the term families the strictness proof relies on.
//! - [`certify`]: certificate generation and two independent verification
//!   modes, plus the coefficient-gap growth check.
//!
//! All arithmetic is exact; nothing in the crate rounds or approximates.

pub mod certify;
pub mod error;
pub mod koh;
pub mod partitions;
pub mod poly;
pub mod qbinom;
pub mod unimodality;

pub use certify::{
    certify, scan_exceptions, staircase_strict_interval, verify_certificate, verify_growth,
    BaseCoverage, CertNode, Certificate, CertifyOutcome, GrowthReport, InductiveStep, Interval,
    Lemma2Obligation, Parity, SideCondition, StepFamily, VerifyMode,
};
pub use error::Error;
pub use koh::{
    closed_form, family_partition, koh_sum, koh_term, koh_term_for_family, KohFactor, KohTerm,
    ProofFamily,
};
pub use partitions::{partitions_of, Partition, Partitions};
pub use poly::IntPolynomial;
pub use qbinom::{qbinom, qbinom_oracle, qbinom_q1, qbinom_top};
pub use unimodality::{
    difference_profile, is_strict_all_degrees, is_strictly_unimodal_qbinom, is_symmetric,
    is_unimodal, lemma2_applies, DifferenceProfile, StrictnessReport, Verdict,
};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
