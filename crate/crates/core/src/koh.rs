//! The KOH decomposition of a Gaussian binomial coefficient.
//!
//! For `a >= b >= 2` the identity reads
//!
//! ```text
//! qbinom(a, b) = sum over partitions lambda of b of
//!     q^(2 * sum_i C(lambda_i, 2))
//!     * prod_{j >= 1} qbinom_top(j(a+2) - Y_{j-1} - Y_{j+1}, lambda_j - lambda_{j+1})
//! ```
//!
//! with `Y_i` the prefix sums of `lambda` (saturating past the last part) and
//! `lambda_j = 0` beyond the last part. Rows with `lambda_j = lambda_{j+1}`
//! contribute a trivial `[top choose 0] = 1` factor; these are kept in the
//! descriptor so a term records one factor per row of its partition.
//!
//! Every nonvanishing term is symmetric about `a*b/2` and unimodal, which is
//! what makes the decomposition useful: strict growth of a single term at a
//! degree forces strict growth of the whole sum there.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::partitions::{partitions_of, Partition};
use crate::poly::IntPolynomial;
use crate::qbinom::qbinom_top;
use crate::Result;

/// One factor `qbinom_top(top, bottom)` of a KOH term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KohFactor {
    pub top: i64,
    pub bottom: u32,
}

/// A KOH term in unexpanded form: the partition, the monomial shift, and one
/// factor per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KohTerm {
    a: u32,
    lambda: Partition,
    shift: u64,
    factors: Vec<KohFactor>,
}

impl KohTerm {
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The exponent `2 * sum_i C(lambda_i, 2)` of the leading monomial.
    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn factors(&self) -> &[KohFactor] {
        &self.factors
    }

    /// Whether some factor is zero under the `qbinom_top` conventions, which
    /// makes the whole term vanish.
    pub fn vanishes(&self) -> bool {
        self.factors.iter().any(|f| i64::from(f.bottom) > f.top)
    }

    /// Multiplies out the factors and applies the shift. Returns the zero
    /// polynomial when any factor vanishes.
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for f in &self.factors {
            if f.bottom == 0 {
                // Trivial factor; tops were validated nonnegative at
                // construction, so it is the constant 1.
                continue;
            }
            let factor = qbinom_top(f.top, i64::from(f.bottom));
            if factor.is_zero() {
                return IntPolynomial::zero();
            }
            acc = acc.multiply(&factor);
        }
        acc.shift(self.shift as usize)
    }
}

// Serialized as {"lambda": [...], "shift": S, "factors": [[top, bottom], ...]},
// the row format of the CLI term listing; the ambient (a, b) live one level up.
impl Serialize for KohTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KohTerm", 3)?;
        s.serialize_field("lambda", self.lambda.parts())?;
        s.serialize_field("shift", &self.shift)?;
        let factors: Vec<(i64, u32)> = self.factors.iter().map(|f| (f.top, f.bottom)).collect();
        s.serialize_field("factors", &factors)?;
        s.end()
    }
}

/// Builds the KOH term for `lambda` inside `qbinom(a, weight(lambda))`.
///
/// # Errors
/// `UnsupportedRegime` unless `a >= weight(lambda) >= 2`. A negative factor
/// top is impossible in that regime (`Y_2 <= b <= a` bounds the only row that
/// could go negative) and is reported as an error rather than swallowed.
pub fn koh_term(a: u32, lambda: &Partition) -> Result<KohTerm> {
    let weight = lambda.weight();
    if weight < 2 || u64::from(a) < weight {
        return Err(Error::UnsupportedRegime {
            a,
            b: weight as u32,
        });
    }
    let mut shift = 0u64;
    for &part in lambda.parts() {
        shift += u64::from(part) * (u64::from(part) - 1);
    }
    let mut factors = Vec::with_capacity(lambda.len());
    for j in 1..=lambda.len() {
        let top = (j as i128) * (i128::from(a) + 2)
            - i128::from(lambda.prefix_at(j - 1))
            - i128::from(lambda.prefix_at(j + 1));
        let top = i64::try_from(top)
            .map_err(|_| Error::Overflow(format!("factor top at row {j} for a={a}")))?;
        let bottom = lambda.part_at(j) - lambda.part_at(j + 1);
        if top < 0 {
            return Err(Error::NegativeFactorTop {
                row: j,
                top,
                a,
                weight,
            });
        }
        factors.push(KohFactor { top, bottom });
    }
    Ok(KohTerm {
        a,
        lambda: lambda.clone(),
        shift,
        factors,
    })
}

/// Expands and sums every KOH term of `qbinom(a, b)`. Terms expand in
/// parallel; addition of exact integers is order-independent, so the result
/// is identical to sequential evaluation.
pub fn koh_sum(a: u32, b: u32) -> Result<IntPolynomial> {
    if b < 2 || a < b {
        return Err(Error::UnsupportedRegime { a, b });
    }
    let lambdas: Vec<Partition> = partitions_of(b).collect();
    let terms: Result<Vec<IntPolynomial>> = lambdas
        .par_iter()
        .map(|lam| koh_term(a, lam).map(|t| t.expand()))
        .collect();
    let mut total = IntPolynomial::zero();
    for t in terms? {
        total += &t;
    }
    Ok(total)
}

/// The partition shapes the unimodality proof singles out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofFamily {
    /// `lambda = (2^(b/2 - 1), 1, 1)` for even base `b`.
    EvenBase,
    /// `lambda = (2^((b-1)/2), 1)` for odd base `b`.
    OddBase,
    /// `lambda = (b/3, b/3, b/3)` for `b` divisible by 3.
    Mod3Zero,
    /// `lambda = ((b-1)/3 three times, 1)` for `b = 1 mod 3`.
    Mod3One,
    /// `lambda = ((b-2)/3 three times, 1, 1)` for `b = 2 mod 3`.
    Mod3Two,
    /// `lambda = (b)`.
    SingleRow,
    /// `lambda = (b - k, 1^k)`, the shapes behind the coefficient-gap bound.
    Growth(u32),
}

impl ProofFamily {
    pub fn name(&self) -> String {
        match self {
            ProofFamily::EvenBase => "even-base".into(),
            ProofFamily::OddBase => "odd-base".into(),
            ProofFamily::Mod3Zero => "mod-3-zero".into(),
            ProofFamily::Mod3One => "mod-3-one".into(),
            ProofFamily::Mod3Two => "mod-3-two".into(),
            ProofFamily::SingleRow => "single-row".into(),
            ProofFamily::Growth(k) => format!("growth-k{k}"),
        }
    }
}

/// The partition a family prescribes for base `b`.
///
/// # Errors
/// `FamilyNotApplicable` when `b` fails the family's shape constraints
/// (parity, residue mod 3, or minimum size needed for the part list).
pub fn family_partition(b: u32, family: ProofFamily) -> Result<Partition> {
    let fail = || Error::FamilyNotApplicable {
        family: family.name(),
        a: 0,
        b,
    };
    let parts: Vec<u32> = match family {
        ProofFamily::EvenBase => {
            if b < 2 || b % 2 != 0 {
                return Err(fail());
            }
            let mut v = vec![2; (b / 2 - 1) as usize];
            v.extend([1, 1]);
            v
        }
        ProofFamily::OddBase => {
            if b < 3 || b % 2 != 1 {
                return Err(fail());
            }
            let mut v = vec![2; ((b - 1) / 2) as usize];
            v.push(1);
            v
        }
        ProofFamily::Mod3Zero => {
            if b < 3 || b % 3 != 0 {
                return Err(fail());
            }
            vec![b / 3; 3]
        }
        ProofFamily::Mod3One => {
            if b < 4 || b % 3 != 1 {
                return Err(fail());
            }
            let mut v = vec![(b - 1) / 3; 3];
            v.push(1);
            v
        }
        ProofFamily::Mod3Two => {
            if b < 5 || b % 3 != 2 {
                return Err(fail());
            }
            let mut v = vec![(b - 2) / 3; 3];
            v.extend([1, 1]);
            v
        }
        ProofFamily::SingleRow => {
            if b < 2 {
                return Err(fail());
            }
            vec![b]
        }
        ProofFamily::Growth(k) => {
            if k < 1 || b <= k {
                return Err(fail());
            }
            let mut v = vec![b - k];
            v.extend(std::iter::repeat(1).take(k as usize));
            v
        }
    };
    Partition::new(parts)
}

/// The KOH term of the family's partition inside `qbinom(a, b)`.
pub fn koh_term_for_family(a: u32, b: u32, family: ProofFamily) -> Result<KohTerm> {
    if b < 2 || a < b {
        return Err(Error::UnsupportedRegime { a, b });
    }
    let lambda = family_partition(b, family)?;
    koh_term(a, &lambda)
}

/// The family term written directly from its closed form, without going
/// through the generic identity. Tests hold this equal to
/// `koh_term_for_family(a, b, family).expand()` across the whole regime; the
/// two routes share no code beyond `qbinom_top` itself.
pub fn closed_form(a: u32, b: u32, family: ProofFamily) -> Result<IntPolynomial> {
    if b < 2 || a < b {
        return Err(Error::UnsupportedRegime { a, b });
    }
    // Shape check shared with the generic route.
    family_partition(b, family)?;
    let (a, b) = (i64::from(a), i64::from(b));
    let st = |n: i64| qbinom_top(n, 1);
    let poly = match family {
        ProofFamily::EvenBase => {
            let half = a * b / 2;
            st(half - a - b + 3)
                .multiply(&st(half + a - b + 3))
                .shift((b - 2) as usize)
        }
        ProofFamily::OddBase => {
            let half_low = a * (b - 1) / 2;
            let half_high = a * (b + 1) / 2;
            st(half_low - b + 2)
                .multiply(&st(half_high - b + 2))
                .shift((b - 1) as usize)
        }
        ProofFamily::Mod3Zero => {
            qbinom_top(3 * a - 2 * b + 6 + b / 3, b / 3).shift((b * (b - 3) / 3) as usize)
        }
        ProofFamily::Mod3One => qbinom_top(3 * a - 2 * b + 8 + (b - 4) / 3, (b - 4) / 3)
            .multiply(&st(4 * a - 2 * b + 9))
            .shift(((b - 1) * (b - 4) / 3) as usize),
        ProofFamily::Mod3Two => qbinom_top(3 * a - 2 * b + 10 + (b - 5) / 3, (b - 5) / 3)
            .multiply(&st(5 * a - 2 * b + 11))
            .shift(((b - 2) * (b - 5) / 3) as usize),
        ProofFamily::SingleRow => qbinom_top(a + 2 - b, b).shift((b * (b - 1)) as usize),
        ProofFamily::Growth(k) => {
            let k = i64::from(k);
            qbinom_top(a - 2 * b + 2 * k + 2 + (b - k - 1), b - k - 1)
                .multiply(&st((k + 1) * (a + 2) - 2 * b + 1))
                .shift(((b - k) * (b - k - 1)) as usize)
        }
    };
    Ok(poly)
}
