//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Exact division requested but the divisor does not divide the dividend.
    /// `degree` is where the leftover remainder was detected.
    #[error("not divisible: nonzero remainder at degree {degree}")]
    NotDivisible { degree: usize },

    /// An operation that must stay within nonnegative coefficients produced a
    /// negative one. Signals misuse (e.g. dividing by a factor that is not
    /// really a factor over the nonnegative cone).
    #[error("negative coefficient at degree {degree}")]
    NegativeCoefficient { degree: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not symmetric: coefficient {lo} differs from mirrored coefficient {hi}")]
    NotSymmetric { lo: usize, hi: usize },

    #[error("parts must be weakly decreasing and positive (offending index {index})")]
    InvalidPartition { index: usize },

    /// Parameters outside the supported regime a >= b >= 2.
    #[error("unsupported regime: need a >= b >= 2, got a={a}, b={b}")]
    UnsupportedRegime { a: u32, b: u32 },

    #[error("family {family} not applicable to (a={a}, b={b})")]
    FamilyNotApplicable { family: String, a: u32, b: u32 },

    /// A factor top j(a+2) - Y_{j-1} - Y_{j+1} came out negative. This cannot
    /// happen for a >= weight(lambda); it is reported rather than silently
    /// mapped to an empty product.
    #[error("negative factor top {top} at row {row} (a={a}, lambda weight {weight})")]
    NegativeFactorTop { row: usize, top: i64, a: u32, weight: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A certificate obligation failed. `path` locates the node in the tree.
    #[error("verification failed at {path}: {condition}")]
    Verification { path: String, condition: String },

    /// Safety net for the certificate generator's recursion.
    #[error("certificate recursion exceeded depth cap {cap} at (a={a}, b={b})")]
    DepthExceeded { cap: u32, a: u32, b: u32 },

    /// The generator needed a child certificate but the child pair is not
    /// strictly unimodal. Unreachable for in-regime inputs; kept as a hard
    /// error instead of a panic.
    #[error("child pair (a={a}, b={b}) is not strictly unimodal (witness degree {witness})")]
    ChildNotStrict { a: u32, b: u32, witness: u64 },

    #[error("parameters too large: {0}")]
    Overflow(String),
}
