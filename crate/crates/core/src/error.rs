//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the symbol calculus and the operator analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rational symbol was constructed with a zero denominator.
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    /// Evaluation was requested at (or too close to) a pole.
    #[error("evaluation point coincides with a pole")]
    PoleAtEvaluationPoint,

    /// A polynomial root lies on the unit circle, so the inside/outside
    /// split is undefined.
    #[error("root on the unit circle: {0}")]
    RootOnCircle(String),

    /// The iterative root finder failed to reach its residual target.
    #[error("root finding did not converge: {0}")]
    NonConvergence(String),

    /// A denominator root lies on the unit circle, so the Riesz
    /// projection of the function is undefined.
    #[error("pole on the unit circle")]
    PoleOnCircle,

    /// A symbol has a zero or pole on the circle and is therefore not
    /// Fredholm-admissible for the requested operation.
    #[error("symbol degenerates on the unit circle: {0}")]
    SymbolDegenerateOnCircle(String),

    /// The function fails the sampled test `g(t) g(1/t) = 1`.
    #[error("function does not satisfy g(t) g(1/t) = 1")]
    NotMatchingFunction,

    /// `g_+(0)` is not within guard distance of `+1` or `-1`.
    #[error("signature guard failed: g_+(0) = {0}")]
    SignatureGuardFailed(String),

    /// The point evaluation shortcut for the signature needs winding
    /// index zero.
    #[error("winding index is not zero")]
    IndexNotZero,

    /// The sampled matching condition `a(t)a(1/t) = b(t)b(1/t)` fails.
    #[error("(a, b) is not a matching pair")]
    NotMatchingPair,

    /// A right inverse of `T(c)` was requested although `ind T(c) < 0`.
    #[error("Toeplitz operator is not right invertible")]
    NotRightInvertible,

    /// An argument that must lie in the kernel of a Toeplitz operator
    /// fails the residual test.
    #[error("function is not in the required Toeplitz kernel (residual {0:.3e})")]
    NotInKernel(f64),

    /// The subordinated pair of a matching pair is not Fredholm.
    #[error("subordinated pair is not Fredholm")]
    NotFredholmPair,

    /// A rational function violates the Hardy-space constraints
    /// (nonnegative Fourier support, all poles outside the closed disc).
    #[error("function is not in the Hardy space: {0}")]
    NotHardy(String),

    /// A residual check received the zero vector.
    #[error("residual check on the zero vector")]
    ZeroVector,

    /// Malformed or non-finite symbol data.
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    /// An internal consistency check failed; indicates a defect in the
    /// caller's data or in this crate, not in the input format.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
