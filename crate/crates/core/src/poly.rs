//! Dense univariate polynomials over the nonnegative integers.
//!
//! Every polynomial handled by this crate is a generating function, so the
//! public type admits no negative coefficients. The representation is a dense
//! coefficient vector in canonical form: no trailing zeros, and the zero
//! polynomial is the empty vector. Values are immutable once built; all
//! operations return fresh polynomials and may be called concurrently.
//!
//! Signed values appear in exactly two places, both private working buffers:
//! the long-division loop of [`IntPolynomial::exact_divide`] and the
//! `(1 - q^m)` kernel in [`signed`], which the q-binomial construction uses
//! for its interleaved multiply/divide steps.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// A polynomial in `q` with arbitrary-precision nonnegative coefficients,
/// stored densely from degree 0 upward.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigUint>,
}

fn zero_biguint() -> &'static BigUint {
    static ZERO: OnceLock<BigUint> = OnceLock::new();
    ZERO.get_or_init(BigUint::zero)
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigUint::one()],
        }
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = BigUint::one();
        IntPolynomial { coeffs }
    }

    /// The staircase polynomial `1 + q + ... + q^t`.
    pub fn staircase(t: usize) -> Self {
        IntPolynomial {
            coeffs: vec![BigUint::one(); t + 1],
        }
    }

    /// Builds from coefficients in degree order, trimming trailing zeros so
    /// the result is canonical.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut coeffs: Vec<BigUint> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Converts a signed working buffer back into the public representation.
    /// Any negative entry is an error naming its degree.
    pub(crate) fn from_signed(buf: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(buf.len());
        for (degree, c) in buf.into_iter().enumerate() {
            match c.to_biguint() {
                Some(u) => coeffs.push(u),
                None => return Err(Error::NegativeCoefficient { degree }),
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient slice in degree order; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of `q^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> &BigUint {
        self.coeffs.get(i).unwrap_or_else(|| zero_biguint())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += other;
        out
    }

    /// Schoolbook convolution. This is the baseline contract: any faster
    /// routine must match it bit for bit.
    pub fn multiply(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                out[i + j] += ci * cj;
            }
        }
        // Leading coefficients are positive, so no trim is needed.
        IntPolynomial { coeffs: out }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    /// Exact division: returns `self / d` when `d` divides `self` and the
    /// quotient stays nonnegative.
    ///
    /// # Errors
    /// [`Error::DivisionByZero`] for a zero divisor, [`Error::NotDivisible`]
    /// when a remainder survives, and [`Error::NegativeCoefficient`] when the
    /// division is exact over the integers but the quotient leaves the
    /// nonnegative cone (e.g. `(1 + q^2 + q^4) / (1 + q + q^2)`).
    pub fn exact_divide(&self, d: &IntPolynomial) -> Result<IntPolynomial> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let dp = self.degree().expect("nonzero");
        let dd = d.degree().expect("nonzero");
        if dp < dd {
            return Err(Error::NotDivisible { degree: dp });
        }

        // Long division over a signed buffer. When the division is exact the
        // leading coefficient divides at every step, so a single failed step
        // already proves non-divisibility.
        let mut rem: Vec<BigInt> = self.coeffs.iter().cloned().map(BigInt::from).collect();
        let dsig: Vec<BigInt> = d.coeffs.iter().cloned().map(BigInt::from).collect();
        let lead = &dsig[dd];
        let mut quot = vec![BigInt::zero(); dp - dd + 1];
        for k in (0..=dp - dd).rev() {
            let cur = std::mem::take(&mut rem[k + dd]);
            if cur.is_zero() {
                continue;
            }
            if !(&cur % lead).is_zero() {
                return Err(Error::NotDivisible { degree: k + dd });
            }
            let qk = &cur / lead;
            for (j, dj) in dsig[..dd].iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &qk * dj;
                }
            }
            quot[k] = qk;
        }
        if let Some(degree) = rem[..dd].iter().position(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { degree });
        }
        IntPolynomial::from_signed(quot)
    }

    /// Sum of the coefficients, i.e. the evaluation at `q = 1`.
    pub fn eval_at_one(&self) -> BigUint {
        let mut total = BigUint::zero();
        for c in &self.coeffs {
            total += c;
        }
        total
    }
}

impl std::ops::AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigUint::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::add(self, rhs)
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.multiply(rhs)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// JSON form: {"coeffs": ["1", "1", "2", "1", "1"]}, decimal strings so
// arbitrary-precision values survive any JSON reader. Deserialization rejects
// non-canonical input, which makes serialize(deserialize(doc)) the identity.

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("IntPolynomial", 1)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_str_radix(10)).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for (i, s) in repr.coeffs.iter().enumerate() {
            let c = BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or_else(|| D::Error::custom(format!("coefficient {i} is not a decimal integer: {s:?}")))?;
            coeffs.push(c);
        }
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(D::Error::custom("non-canonical form: trailing zero coefficient"));
        }
        Ok(IntPolynomial { coeffs })
    }
}

/// In-place kernels over signed buffers for `(1 - q^m)` factors. A buffer
/// models a polynomial densely by degree; entries may be negative between a
/// multiply and the division that restores nonnegativity.
pub(crate) mod signed {
    use num_bigint::BigInt;
    use num_traits::Zero;

    use crate::error::Error;
    use crate::Result;

    /// Multiplies the buffer by `(1 - q^m)`, `m >= 1`, growing it by `m`.
    pub(crate) fn mul_one_minus_q_pow(buf: &mut Vec<BigInt>, m: usize) {
        debug_assert!(m >= 1);
        let new_len = buf.len() + m;
        buf.resize(new_len, BigInt::zero());
        // new[j] = old[j] - old[j - m]; descending j leaves old values intact
        // at the positions still to be read.
        for j in (m..new_len).rev() {
            let (lo, hi) = buf.split_at_mut(j);
            if !lo[j - m].is_zero() {
                hi[0] -= &lo[j - m];
            }
        }
    }

    /// Divides the buffer exactly by `(1 - q^k)`, `k >= 1`, shrinking it by
    /// `k`. Synthetic division: r[j] = s[j] + r[j-k], one pass, linear time.
    ///
    /// # Errors
    /// [`Error::NotDivisible`] when the top `k` recurrence values are not all
    /// zero, i.e. `(1 - q^k)` does not divide the buffer.
    pub(crate) fn div_exact_one_minus_q_pow(buf: &mut Vec<BigInt>, k: usize) -> Result<()> {
        debug_assert!(k >= 1);
        let len = buf.len();
        if len < k {
            let degree = buf.iter().position(|c| !c.is_zero());
            return match degree {
                Some(degree) => Err(Error::NotDivisible { degree }),
                None => {
                    buf.clear();
                    Ok(())
                }
            };
        }
        for j in k..len {
            let (lo, hi) = buf.split_at_mut(j);
            if !lo[j - k].is_zero() {
                hi[0] += &lo[j - k];
            }
        }
        // The recurrence values above the quotient degree are the remainder.
        for j in len - k..len {
            if !buf[j].is_zero() {
                return Err(Error::NotDivisible { degree: j });
            }
        }
        buf.truncate(len - k);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[u64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]), IntPolynomial::zero());
        assert!(IntPolynomial::zero().coeffs().is_empty());
        assert_eq!(p(&[7]).degree(), Some(0));
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn add_and_multiply() {
        // (1 + q + 2q^2 + q^3 + q^4)(1 + q) = 1 + 2q + 3q^2 + 3q^3 + 2q^4 + q^5
        let lhs = p(&[1, 1, 2, 1, 1]);
        let rhs = p(&[1, 1]);
        assert_eq!(lhs.multiply(&rhs), p(&[1, 2, 3, 3, 2, 1]));
        assert_eq!(&lhs * &rhs, p(&[1, 2, 3, 3, 2, 1]));
        assert_eq!(lhs.add(&rhs), p(&[2, 2, 2, 1, 1]));

        assert_eq!(lhs.multiply(&IntPolynomial::zero()), IntPolynomial::zero());
        assert_eq!(lhs.add(&IntPolynomial::zero()), lhs);
    }

    #[test]
    fn shift_is_monomial_multiplication() {
        assert_eq!(p(&[1, 1]).shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(IntPolynomial::zero().shift(5), IntPolynomial::zero());
        assert_eq!(p(&[3]).shift(0), p(&[3]));
        assert_eq!(IntPolynomial::monomial(3), p(&[0, 0, 0, 1]));
        assert_eq!(IntPolynomial::staircase(3), p(&[1, 1, 1, 1]));
        assert_eq!(IntPolynomial::staircase(0), IntPolynomial::one());
    }

    #[test]
    fn exact_divide_round_trip() {
        let q = p(&[1, 1]);
        assert_eq!(p(&[1, 2, 1]).exact_divide(&q).unwrap(), q);
        let lhs = p(&[3, 1, 4, 1, 5]);
        assert_eq!(lhs.multiply(&q).exact_divide(&q).unwrap(), lhs);
        assert_eq!(IntPolynomial::zero().exact_divide(&q).unwrap(), IntPolynomial::zero());
    }

    #[test]
    fn exact_divide_detects_remainders() {
        // (1 + q + q^2) / (1 + q) leaves a remainder.
        match p(&[1, 1, 1]).exact_divide(&p(&[1, 1])) {
            Err(Error::NotDivisible { .. }) => {}
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        match p(&[1]).exact_divide(&IntPolynomial::zero()) {
            Err(Error::DivisionByZero) => {}
            other => panic!("expected DivisionByZero, got {other:?}"),
        }
    }

    #[test]
    fn exact_divide_rejects_negative_quotients() {
        // (1 + q^2 + q^4) = (1 + q + q^2)(1 - q + q^2): exact over ZZ but the
        // quotient has a negative coefficient.
        match p(&[1, 0, 1, 0, 1]).exact_divide(&p(&[1, 1, 1])) {
            Err(Error::NegativeCoefficient { degree: 1 }) => {}
            other => panic!("expected NegativeCoefficient at degree 1, got {other:?}"),
        }
    }

    #[test]
    fn eval_at_one_sums_coefficients() {
        assert_eq!(p(&[1, 1, 2, 1, 1]).eval_at_one(), BigUint::from(6u32));
        assert_eq!(IntPolynomial::zero().eval_at_one(), BigUint::zero());
    }

    #[test]
    fn signed_kernel_division() {
        use num_bigint::BigInt;
        // (q^4 - 1) / (q - 1): the buffer form divides -(1 - q^4) by -(1 - q),
        // i.e. (1 - q^4)/(1 - q) = 1 + q + q^2 + q^3.
        let mut buf = vec![BigInt::from(1)];
        signed::mul_one_minus_q_pow(&mut buf, 4);
        assert_eq!(
            buf,
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(-1)]
        );
        signed::div_exact_one_minus_q_pow(&mut buf, 1).unwrap();
        assert_eq!(buf, vec![BigInt::from(1); 4]);

        // (1 - q^3) is not divisible by (1 - q^2).
        let mut buf = vec![BigInt::from(1)];
        signed::mul_one_minus_q_pow(&mut buf, 3);
        assert!(matches!(
            signed::div_exact_one_minus_q_pow(&mut buf, 2),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_canonical_rejection() {
        let poly = p(&[1, 1, 2, 1, 1]);
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"{"coeffs":["1","1","2","1","1"]}"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);

        let zero: IntPolynomial = serde_json::from_str(r#"{"coeffs":[]}"#).unwrap();
        assert!(zero.is_zero());

        assert!(serde_json::from_str::<IntPolynomial>(r#"{"coeffs":["1","0"]}"#).is_err());
        assert!(serde_json::from_str::<IntPolynomial>(r#"{"coeffs":["-1"]}"#).is_err());
        assert!(serde_json::from_str::<IntPolynomial>(r#"{"coeffs":["x"]}"#).is_err());
    }

    #[test]
    fn coeff_access_beyond_degree_is_zero() {
        let poly = p(&[1, 2]);
        assert_eq!(poly.coeff(0), &BigUint::from(1u32));
        assert_eq!(poly.coeff(7), &BigUint::zero());
    }
}
