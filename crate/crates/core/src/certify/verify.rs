//! Certificate verification.
//!
//! Two checkers with disjoint trust bases:
//!
//! - the symbolic checker re-derives every recorded quantity (child
//!   parameters, shifts, staircase lengths, interval endpoints) from `(a, b)`
//!   and the family tag using integer formula arithmetic only, and never
//!   expands a polynomial;
//! - the numeric checker expands the ambient q-binomial and every cited term
//!   exactly, and scans raw coefficients against the recorded intervals,
//!   trusting no formula.
//!
//! `VerifyMode::Both` runs them in sequence, so a certificate passes only if
//! the formula derivation and the exact expansions agree. A `DirectCheck`
//! leaf is a structural matter for the symbolic checker (it polices where
//! the generator may fall back to one) and a full coefficient scan for the
//! numeric checker.
//!
//! All symbolic arithmetic happens in `i128` so hostile or corrupted
//! certificates cannot cause overflow panics; every failed obligation is
//! reported as [`Error::Verification`] naming the node path and condition.

use crate::certify::{
    cond, staircase_strict_interval, BaseCoverage, CertNode, Certificate, InductiveStep, Interval,
    Lemma2Obligation, Parity, SideCondition, StepFamily, VerifyMode,
};
use crate::error::Error;
use crate::koh::{family_partition, koh_term, ProofFamily};
use crate::poly::IntPolynomial;
use crate::qbinom::qbinom;
use crate::unimodality::{
    first_non_strict_degree, is_strict_all_degrees, is_unimodal, lemma2_applies,
};
use crate::Result;

/// Checks a certificate in the requested mode.
///
/// # Errors
/// `Verification { path, condition }` for the first failed obligation; the
/// path locates the node as a chain of `(a, b)` pairs from the root.
pub fn verify_certificate(cert: &Certificate, mode: VerifyMode) -> Result<()> {
    let path = format!("({},{})", cert.a, cert.b);
    match mode {
        VerifyMode::Symbolic => check_symbolic(cert, &path),
        VerifyMode::Numeric => check_numeric(cert, &path),
        VerifyMode::Both => {
            check_symbolic(cert, &path)?;
            check_numeric(cert, &path)
        }
    }
}

fn fail(path: &str, condition: impl Into<String>) -> Error {
    Error::Verification {
        path: path.to_string(),
        condition: condition.into(),
    }
}

fn ensure(ok: bool, path: &str, condition: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(path, condition))
    }
}

fn child_path(path: &str, child: &Certificate) -> String {
    format!("{path}/({},{})", child.a, child.b)
}

/// Where the generator is allowed to fall back to a direct leaf: below every
/// family threshold.
fn direct_check_allowed(a: u32, b: u32) -> bool {
    b <= 4 || ((5..=17).contains(&b) && b != 15 && u64::from(a) < 2 * u64::from(b) + 13)
}

fn check_symbolic(cert: &Certificate, path: &str) -> Result<()> {
    let (a, b) = (cert.a, cert.b);
    ensure(b >= 2 && a >= b, path, "parameters satisfy a >= b >= 2")?;
    match &cert.root {
        CertNode::DirectCheck => ensure(
            direct_check_allowed(a, b),
            path,
            "direct check is only used below the family thresholds",
        ),
        CertNode::Inductive { base, step } => {
            check_base_symbolic(a, b, base, path)?;
            check_step_symbolic(a, b, base, step, path)?;
            check_symbolic(&step.child, &child_path(path, &step.child))
        }
    }
}

fn check_base_symbolic(a: u32, b: u32, base: &BaseCoverage, path: &str) -> Result<()> {
    let (a128, b128) = (i128::from(a), i128::from(b));
    let half = a128 * b128 / 2;
    let (parity, family, shift, s1, s2) = if b % 2 == 0 {
        (
            Parity::Even,
            ProofFamily::EvenBase,
            b128 - 2,
            half - a128 - b128 + 2,
            half + a128 - b128 + 2,
        )
    } else {
        (
            Parity::Odd,
            ProofFamily::OddBase,
            b128 - 1,
            a128 * (b128 - 1) / 2 - b128 + 1,
            a128 * (b128 + 1) / 2 - b128 + 1,
        )
    };
    ensure(base.parity == parity, path, "base parity matches b")?;
    let lambda = family_partition(b, family)
        .map_err(|_| fail(path, "base family partition exists for this b"))?;
    ensure(
        base.term_partition == lambda,
        path,
        "base term partition is the parity family's",
    )?;
    ensure(
        base.ambient_interval == Interval::new(1, u64::from(b) - 2),
        path,
        "ambient interval is [1, b-2]",
    )?;
    ensure(
        shift >= 1 && s1 >= 1 && s2 >= 1,
        path,
        "base term has a positive shift and nondegenerate staircases",
    )?;
    let strict = staircase_strict_interval(shift as u64, s1 as u64, s2 as u64);
    // One degree below the shift the term steps from 0 into its support,
    // which is what lets it overlap the ambient range.
    let term = Interval::new(shift as u64 - 1, strict.hi);
    ensure(
        base.term_interval == term,
        path,
        "base term interval matches the staircase formula",
    )?;
    ensure(
        base.term_interval.lo <= base.ambient_interval.hi,
        path,
        "base term range overlaps the ambient range",
    )?;
    ensure(
        base.combined_interval == Interval::new(1, term.hi),
        path,
        "combined interval glues ambient and term ranges",
    )?;
    Ok(())
}

fn check_step_symbolic(
    a: u32,
    b: u32,
    base: &BaseCoverage,
    step: &InductiveStep,
    path: &str,
) -> Result<()> {
    let (a128, b128) = (i128::from(a), i128::from(b));
    let ab = a128 * b128;
    let family_ok = match step.family {
        StepFamily::Mod3Zero => b % 3 == 0 && b >= 15,
        StepFamily::Mod3One => b % 3 == 1 && b >= 19,
        StepFamily::Mod3Two => b % 3 == 2 && b >= 20,
        StepFamily::SingleRow => {
            (5..=17).contains(&b) && b != 15 && u64::from(a) >= 2 * u64::from(b) + 13
        }
    };
    ensure(family_ok, path, "family residue and threshold conditions")?;

    let (ca, cb, shift, t): (i128, i128, i128, Option<i128>) = match step.family {
        StepFamily::Mod3Zero => (
            3 * a128 - 2 * b128 + 6,
            b128 / 3,
            b128 * (b128 - 3) / 3,
            None,
        ),
        StepFamily::Mod3One => (
            3 * a128 - 2 * b128 + 8,
            (b128 - 4) / 3,
            (b128 - 1) * (b128 - 4) / 3,
            Some(4 * a128 - 2 * b128 + 8),
        ),
        StepFamily::Mod3Two => (
            3 * a128 - 2 * b128 + 10,
            (b128 - 5) / 3,
            (b128 - 2) * (b128 - 5) / 3,
            Some(5 * a128 - 2 * b128 + 10),
        ),
        StepFamily::SingleRow => (a128 - 2 * b128 + 2, b128, b128 * (b128 - 1), None),
    };
    let (ca, cb) = if ca < cb { (cb, ca) } else { (ca, cb) };
    ensure(
        i128::from(step.child.a) == ca && i128::from(step.child.b) == cb,
        path,
        "child parameters match the family formula",
    )?;
    ensure(
        ca.max(cb) >= 15,
        path,
        "child larger parameter is at least 15",
    )?;
    ensure(
        i128::from(step.shift) == shift,
        path,
        "shift matches the family formula",
    )?;
    match (t, step.linear_factor) {
        (None, None) => {}
        (Some(expected), Some(recorded)) => ensure(
            i128::from(recorded) == expected,
            path,
            "staircase length matches the family formula",
        )?,
        (Some(_), None) => return Err(fail(path, "family requires a linear factor")),
        (None, Some(_)) => return Err(fail(path, "family has no linear factor")),
    }
    match (step.linear_factor, &step.lemma2_obligation) {
        (None, None) => {}
        (Some(t64), Some(ob)) => {
            let expected = Lemma2Obligation {
                c: step.child.a,
                d: step.child.b,
                t: t64,
            };
            ensure(
                *ob == expected,
                path,
                "lemma-2 obligation records the child and staircase parameters",
            )?;
            ensure(
                lemma2_applies(u64::from(ob.c), u64::from(ob.d), ob.t),
                path,
                "lemma-2 side condition (1 <= t <= c*d, t != c*d - 2)",
            )?;
            ensure(
                i128::from(ob.c) * i128::from(ob.d) >= i128::from(ob.t) + 3,
                path,
                "inner degree dominates the staircase length (c*d >= t + 3)",
            )?;
        }
        (Some(_), None) => return Err(fail(path, "missing lemma-2 obligation")),
        (None, Some(_)) => return Err(fail(path, "spurious lemma-2 obligation")),
    }
    ensure(
        2 * shift + 2 * a128 < ab,
        path,
        "junction inequality 2*s + 2*a < a*b",
    )?;
    ensure(
        i128::from(step.claimed_interval.lo) == shift + 1
            && i128::from(step.claimed_interval.hi) == ab / 2,
        path,
        "claimed interval is [s+1, floor(ab/2)]",
    )?;
    ensure(
        step.claimed_interval.lo <= base.combined_interval.hi,
        path,
        "claimed range overlaps the base coverage",
    )?;
    let expected_conditions = expected_side_conditions(a, b, step.family, shift, ca, cb, t);
    ensure(
        step.side_conditions == expected_conditions,
        path,
        "recorded side conditions match the recomputed set",
    )?;
    Ok(())
}

// The verifier's own evaluation of the side-condition list; only the label
// constants are shared with the generator.
fn expected_side_conditions(
    a: u32,
    b: u32,
    family: StepFamily,
    shift: i128,
    ca: i128,
    cb: i128,
    t: Option<i128>,
) -> Vec<SideCondition> {
    let (a128, b128) = (i128::from(a), i128::from(b));
    let mut out = vec![
        SideCondition {
            label: cond::JUNCTION.into(),
            holds: 2 * shift + 2 * a128 < a128 * b128,
        },
        SideCondition {
            label: cond::CHILD_MIN.into(),
            holds: ca.max(cb) >= 15,
        },
    ];
    out.push(match family {
        StepFamily::Mod3Zero => SideCondition {
            label: cond::MOD3_ZERO.into(),
            holds: b % 3 == 0 && b >= 15,
        },
        StepFamily::Mod3One => SideCondition {
            label: cond::MOD3_ONE.into(),
            holds: b % 3 == 1 && b >= 19,
        },
        StepFamily::Mod3Two => SideCondition {
            label: cond::MOD3_TWO.into(),
            holds: b % 3 == 2 && b >= 20,
        },
        StepFamily::SingleRow => SideCondition {
            label: cond::SINGLE_ROW.into(),
            holds: (5..=17).contains(&b) && b != 15 && a128 >= 2 * b128 + 13,
        },
    });
    if let Some(t) = t {
        out.push(SideCondition {
            label: cond::LINEAR_MARGIN.into(),
            holds: ca * cb >= t + 3,
        });
    }
    out
}

fn check_numeric(cert: &Certificate, path: &str) -> Result<()> {
    let (a, b) = (cert.a, cert.b);
    ensure(b >= 2 && a >= b, path, "parameters satisfy a >= b >= 2")?;
    match &cert.root {
        CertNode::DirectCheck => {
            let ambient = qbinom(a, b);
            let mid = u64::from(a) * u64::from(b) / 2;
            match first_non_strict_degree(ambient.coeffs(), mid) {
                None => Ok(()),
                Some(w) => Err(fail(
                    path,
                    format!("direct scan found c_{{i-1}} >= c_i at degree {w}"),
                )),
            }
        }
        CertNode::Inductive { base, step } => {
            let ab = u64::from(a) * u64::from(b);
            let mid = ab / 2;
            let ambient = qbinom(a, b);
            if let Some(w) = first_non_strict_degree(ambient.coeffs(), mid) {
                return Err(fail(
                    path,
                    format!("ambient strict unimodality fails at degree {w}"),
                ));
            }
            strict_on(
                &ambient,
                base.ambient_interval,
                path,
                "ambient strictly increases on the ambient interval",
            )?;
            strict_on(
                &ambient,
                base.combined_interval,
                path,
                "ambient strictly increases on the combined interval",
            )?;

            let base_term = koh_term(a, &base.term_partition)
                .map_err(|e| fail(path, format!("base term construction: {e}")))?
                .expand();
            term_checks(&base_term, ab, path, "base term")?;
            strict_on(
                &base_term,
                base.term_interval,
                path,
                "base term strictly increases on its recorded interval",
            )?;

            let child_poly = qbinom(step.child.a, step.child.b);
            let product = match step.linear_factor {
                Some(t) => child_poly.multiply(&IntPolynomial::staircase(t as usize)),
                None => child_poly,
            };
            let step_term = product.shift(step.shift as usize);
            term_checks(&step_term, ab, path, "step term")?;
            strict_on(
                &step_term,
                step.claimed_interval,
                path,
                "step term strictly increases on the claimed interval",
            )?;

            if let Some(ob) = &step.lemma2_obligation {
                let product =
                    qbinom(ob.c, ob.d).multiply(&IntPolynomial::staircase(ob.t as usize));
                let strict = is_strict_all_degrees(&product)
                    .map_err(|e| fail(path, format!("lemma-2 product: {e}")))?;
                ensure(
                    strict,
                    path,
                    "lemma-2 product strictly increases from degree 0",
                )?;
            }
            check_numeric(&step.child, &child_path(path, &step.child))
        }
    }
}

/// Strict increase over a closed range of the polynomial's coefficients,
/// reading coefficients beyond the degree as 0 so overclaimed ranges fail.
fn strict_on(p: &IntPolynomial, range: Interval, path: &str, what: &str) -> Result<()> {
    for i in range.lo..range.hi {
        if p.coeff(i as usize) >= p.coeff(i as usize + 1) {
            return Err(fail(
                path,
                format!("{what}: no strict increase from degree {i} to {}", i + 1),
            ));
        }
    }
    Ok(())
}

/// The glue premises for one cited term: nonzero, symmetric about `ab/2`,
/// unimodal, and nondecreasing through the middle.
fn term_checks(term: &IntPolynomial, ab: u64, path: &str, what: &str) -> Result<()> {
    ensure(!term.is_zero(), path, &format!("{what} does not vanish"))?;
    let degree = term.degree().expect("nonzero polynomial has a degree") as u64;
    ensure(
        degree <= ab,
        path,
        &format!("{what} degree stays within a*b"),
    )?;
    for i in 0..=ab / 2 {
        if term.coeff(i as usize) != term.coeff((ab - i) as usize) {
            return Err(fail(
                path,
                format!("{what} is not symmetric about ab/2 (degree {i})"),
            ));
        }
    }
    let unimodal =
        is_unimodal(term).map_err(|e| fail(path, format!("{what} unimodality: {e}")))?;
    ensure(unimodal, path, &format!("{what} is unimodal"))?;
    for i in 1..=ab / 2 {
        if term.coeff(i as usize - 1) > term.coeff(i as usize) {
            return Err(fail(
                path,
                format!("{what} decreases before the middle (degree {i})"),
            ));
        }
    }
    Ok(())
}
