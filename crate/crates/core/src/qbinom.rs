//! Gaussian (q-)binomial coefficients by two independent routes.
//!
//! `qbinom(a, b)` is the generating function for partitions that fit in a
//! `b x a` box: degree `a*b`, constant term 1, symmetric, and `qbinom(a, b) =
//! qbinom(b, a)`. At `q = 1` it evaluates to the ordinary binomial
//! `C(a+b, b)`.
//!
//! * [`qbinom`] builds the product `prod_{i=1}^{b} (1 - q^{a+i}) / (1 - q^i)`
//!   incrementally, dividing out `(1 - q^i)` as soon as its numerator factor
//!   has been applied. After step `i` the buffer holds `qbinom(a, i)`, so
//!   intermediate coefficients never exceed those of a genuine q-binomial.
//! * [`qbinom_oracle`] counts box-bounded partitions by dynamic programming
//!   and never divides. It exists so the product route has an independent
//!   witness and it stays in the public API for exactly that purpose.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::poly::{signed, IntPolynomial};

/// The Gaussian binomial coefficient as a polynomial in `q`, via the
/// incremental product route.
pub fn qbinom(a: u32, b: u32) -> IntPolynomial {
    // Symmetric in (a, b); iterating over the smaller parameter does fewer
    // and cheaper steps.
    let (w, bot) = if a >= b { (a, b) } else { (b, a) };
    let w = w as usize;
    let mut buf: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=bot as usize {
        // buf holds qbinom(w, i-1); multiply by (1 - q^{w+i}) and divide by
        // (1 - q^i) to reach qbinom(w, i). Divisibility is guaranteed, so a
        // failure here is a bug in the kernel, not bad input.
        signed::mul_one_minus_q_pow(&mut buf, w + i);
        signed::div_exact_one_minus_q_pow(&mut buf, i)
            .expect("(1 - q^i) divides qbinom(a, i-1) * (1 - q^{a+i})");
    }
    IntPolynomial::from_signed(buf).expect("q-binomial coefficients are nonnegative")
}

/// Counts partitions of each `n` with at most `b` parts, each at most `a`,
/// by the recurrence "either no part equals v, or remove one part equal to v".
/// Pure counting: no polynomial multiplication or division anywhere.
pub fn qbinom_oracle(a: u32, b: u32) -> IntPolynomial {
    let (a, b) = (a as usize, b as usize);
    let n_max = a * b;
    // table[r][n]: partitions of n into at most r parts, each part <= v,
    // where v is the outer loop value; starts (v = 0) as [n == 0].
    let mut table = vec![vec![BigUint::zero(); n_max + 1]; b + 1];
    for row in table.iter_mut() {
        row[0] = BigUint::one();
    }
    for v in 1..=a {
        for r in 1..=b {
            let (lo, hi) = table.split_at_mut(r);
            let src = &lo[r - 1];
            let dst = &mut hi[0];
            for n in v..=n_max {
                if !src[n - v].is_zero() {
                    let add = src[n - v].clone();
                    dst[n] += add;
                }
            }
        }
    }
    IntPolynomial::from_coeffs(table.into_iter().nth(b).expect("row b exists"))
}

/// Evaluation at `q = 1`: the ordinary binomial coefficient `C(a+b, b)`,
/// computed multiplicatively with exact division at every step.
pub fn qbinom_q1(a: u32, b: u32) -> BigUint {
    let k = u64::from(a.min(b));
    let n = u64::from(a) + u64::from(b);
    let mut r = BigUint::one();
    for i in 1..=k {
        r = r * BigUint::from(n - k + i) / BigUint::from(i);
    }
    r
}

/// The "n choose k" form used by the KOH factors: zero when `k < 0`, `n < 0`,
/// or `k > n`; one when `k = 0 <= n`; otherwise `qbinom(n - k, k)`.
///
/// The zero convention keeps KOH sums well-defined even for partitions whose
/// factors vanish.
pub fn qbinom_top(n: i64, k: i64) -> IntPolynomial {
    if k < 0 || n < 0 || k > n {
        return IntPolynomial::zero();
    }
    qbinom((n - k) as u32, k as u32)
}
