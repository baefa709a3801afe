//! Certificate generation.
//!
//! The generator mirrors the inductive proof: residue families handle every
//! base `b >= 15` (preferring them in residue order, so `b = 15` goes to
//! mod-3-zero rather than single-row), the single-row reduction handles
//! `5 <= b <= 17` with `a` large, and everything else is cheap enough to
//! check directly. Interval endpoints and child parameters are read off the
//! expanded factor descriptors of the family's KOH term; re-deriving them
//! from closed formulas is the verifier's job, not the generator's.

use crate::certify::{
    cond, staircase_strict_interval, BaseCoverage, CertNode, Certificate, CertifyOutcome,
    Interval, InductiveStep, Lemma2Obligation, Parity, SideCondition, StepFamily,
};
use crate::error::Error;
use crate::koh::{koh_term_for_family, KohFactor, ProofFamily};
use crate::unimodality::is_strictly_unimodal_qbinom;
use crate::Result;

/// Decides strict unimodality of `qbinom(a, b)` and, when it holds, builds a
/// certificate for it.
///
/// # Errors
/// `Precondition` unless `a >= b >= 2`. Internal errors (`DepthExceeded`,
/// `ChildNotStrict`) are unreachable for in-regime inputs but reported
/// rather than panicking.
pub fn certify(a: u32, b: u32) -> Result<CertifyOutcome> {
    if b < 2 || a < b {
        return Err(Error::Precondition(format!(
            "certify requires a >= b >= 2, got (a={a}, b={b})"
        )));
    }
    let report = is_strictly_unimodal_qbinom(a, b);
    if !report.is_strict() {
        return Ok(CertifyOutcome::NotStrict(report));
    }
    let cap = 10u32
        .saturating_mul(a.saturating_add(b))
        .max(1);
    build(a, b, cap, cap).map(CertifyOutcome::Certified)
}

/// Family selection in the proof's case order. `None` routes to DirectCheck.
fn route(a: u32, b: u32) -> Option<StepFamily> {
    if b >= 15 && b % 3 == 0 {
        Some(StepFamily::Mod3Zero)
    } else if b >= 19 && b % 3 == 1 {
        Some(StepFamily::Mod3One)
    } else if b >= 20 && b % 3 == 2 {
        Some(StepFamily::Mod3Two)
    } else if (5..=17).contains(&b) && b != 15 && u64::from(a) >= 2 * u64::from(b) + 13 {
        Some(StepFamily::SingleRow)
    } else {
        None
    }
}

// Callers guarantee (a, b) is strictly unimodal with a >= b >= 2.
fn build(a: u32, b: u32, cap: u32, depth: u32) -> Result<Certificate> {
    let Some(family) = route(a, b) else {
        return Ok(Certificate {
            a,
            b,
            root: CertNode::DirectCheck,
        });
    };
    if depth == 0 {
        return Err(Error::DepthExceeded { cap, a, b });
    }
    let base = base_coverage(a, b)?;
    let step = inductive_step(a, b, family, cap, depth)?;
    Ok(Certificate {
        a,
        b,
        root: CertNode::Inductive { base, step },
    })
}

/// Builds the low-degree coverage from the parity base family. Only reached
/// for b >= 5, where both base partitions produce exactly two staircase
/// factors and a positive shift.
fn base_coverage(a: u32, b: u32) -> Result<BaseCoverage> {
    let (parity, family) = if b % 2 == 0 {
        (Parity::Even, ProofFamily::EvenBase)
    } else {
        (Parity::Odd, ProofFamily::OddBase)
    };
    let term = koh_term_for_family(a, b, family)?;
    let mut stairs = Vec::with_capacity(2);
    for f in term.factors() {
        match f.bottom {
            0 => {}
            1 => stairs.push(u64::try_from(f.top - 1).expect("staircase top is positive")),
            _ => unreachable!("base family rows differ by at most 1"),
        }
    }
    let [s1, s2] = stairs[..] else {
        unreachable!("base family terms are products of exactly two staircases")
    };
    let shift = term.shift();
    // The term enters its support one degree below the shift with a 0 -> 1
    // step, extending the strict range left so it overlaps the ambient range.
    let term_interval = Interval::new(shift - 1, staircase_strict_interval(shift, s1, s2).hi);
    Ok(BaseCoverage {
        parity,
        ambient_interval: Interval::new(1, u64::from(b) - 2),
        term_partition: term.lambda().clone(),
        term_interval,
        combined_interval: Interval::new(1, term_interval.hi),
    })
}

fn inductive_step(
    a: u32,
    b: u32,
    family: StepFamily,
    cap: u32,
    depth: u32,
) -> Result<InductiveStep> {
    let term = koh_term_for_family(a, b, family.proof_family())?;
    let nontrivial: Vec<KohFactor> = term
        .factors()
        .iter()
        .copied()
        .filter(|f| f.bottom != 0)
        .collect();
    let (inner, linear_top) = match nontrivial[..] {
        [inner] => (inner, None),
        [inner, linear] if linear.bottom == 1 => (inner, Some(linear.top)),
        _ => unreachable!("step family terms have one inner factor and at most one staircase"),
    };

    // [top choose k] = qbinom(top - k, k); store the child with its larger
    // parameter first so the recursion's own precondition holds.
    let ca_raw = inner.top - i64::from(inner.bottom);
    let cb_raw = i64::from(inner.bottom);
    let (ca, cb) = if ca_raw < cb_raw {
        (cb_raw, ca_raw)
    } else {
        (ca_raw, cb_raw)
    };
    let ca = u32::try_from(ca).expect("child parameters are positive in regime");
    let cb = u32::try_from(cb).expect("child parameters are positive in regime");

    // The proof keeps children inside strict territory; re-check instead of
    // trusting the algebra.
    let child_report = is_strictly_unimodal_qbinom(ca, cb);
    if !child_report.is_strict() {
        return Err(Error::ChildNotStrict {
            a: ca,
            b: cb,
            witness: child_report.witness.unwrap_or_default(),
        });
    }
    let child = build(ca, cb, cap, depth - 1)?;

    let shift = term.shift();
    let linear_factor =
        linear_top.map(|t| u64::try_from(t - 1).expect("staircase top is positive in regime"));
    let lemma2_obligation = linear_factor.map(|t| Lemma2Obligation { c: ca, d: cb, t });
    let ab = u64::from(a) * u64::from(b);
    let claimed_interval = Interval::new(shift + 1, ab / 2);
    let side_conditions = side_conditions(a, b, family, shift, ca, cb, linear_factor);
    // Emitting a step with a failed side condition would be unsound; the
    // routing thresholds make this unreachable.
    if let Some(cnd) = side_conditions.iter().find(|c| !c.holds) {
        return Err(Error::Verification {
            path: format!("({a},{b})"),
            condition: format!("generated side condition does not hold: {}", cnd.label),
        });
    }
    Ok(InductiveStep {
        family,
        shift,
        linear_factor,
        lemma2_obligation,
        claimed_interval,
        side_conditions,
        child: Box::new(child),
    })
}

// Canonical order: junction, child size, family threshold, then the linear
// margin when a staircase factor is present. The verifier recomputes the
// same list independently.
fn side_conditions(
    a: u32,
    b: u32,
    family: StepFamily,
    shift: u64,
    ca: u32,
    cb: u32,
    linear_factor: Option<u64>,
) -> Vec<SideCondition> {
    let (a64, b64) = (u64::from(a), u64::from(b));
    let mut out = vec![
        SideCondition {
            label: cond::JUNCTION.into(),
            holds: 2 * shift + 2 * a64 < a64 * b64,
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
            holds: (5..=17).contains(&b) && b != 15 && a64 >= 2 * b64 + 13,
        },
    });
    if let Some(t) = linear_factor {
        out.push(SideCondition {
            label: cond::LINEAR_MARGIN.into(),
            holds: u64::from(ca) * u64::from(cb) >= t + 3,
        });
    }
    out
}
