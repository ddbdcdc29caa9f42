//! Numerical tolerances and default sizes used throughout the crate.
//!
//! Everything here is calibrated for desk-scale inputs: symbol degrees up
//! to roughly 64 and coefficients of moderate magnitude.

/// Distance from the unit circle below which a root or pole counts as
/// lying on the circle (`| |z| - 1 | <= DELTA_CIRCLE`).
pub const DELTA_CIRCLE: f64 = 1e-8;

/// Accepted scaled residual `|p(z)|` for a polynomial root after Newton
/// refinement.
pub const EPS_ROOT: f64 = 1e-10;

/// Roots closer than this are merged into one root with summed
/// multiplicity.
pub const ROOT_CLUSTER: f64 = 1e-7;

/// Numerator and denominator roots within this distance cancel during
/// rational reduction.
pub const REDUCE_CANCEL: f64 = 1e-7;

/// Accuracy target for a single Fourier coefficient of a rational symbol.
pub const EPS_SERIES: f64 = 1e-12;

/// Relative tolerance of the sampled matching-condition test.
pub const MATCH_TOL: f64 = 1e-9;

/// Number of circle samples used by the matching-condition test.
pub const MATCH_SAMPLES: usize = 256;

/// Allowed distance of `g_+(0)` from the nearest of `+1`, `-1` before the
/// signature computation refuses to round.
pub const SIGMA_GUARD: f64 = 1e-7;

/// Relative tolerance of the factorisation reconstruction check.
pub const RECONSTRUCT_TOL: f64 = 1e-9;

/// Number of circle samples used by the reconstruction check.
pub const RECONSTRUCT_SAMPLES: usize = 128;

/// Tolerance of the sampled identity `g_+ = sigma * (g_- tilde)^(-1)`.
pub const FACTOR_IDENTITY_TOL: f64 = 1e-8;

/// Number of samples for the discrete argument-principle winding count.
pub const WINDING_SAMPLES: usize = 1024;

/// Relative SVD cutoff separating numerically zero singular values.
pub const TAU_SVD: f64 = 1e-8;

/// Default finite-section truncation size.
pub const DEFAULT_SECTION: usize = 64;

/// Accepted finite-section residual for an analytic kernel element.
pub const ORACLE_RESIDUAL: f64 = 1e-6;

/// Relative residual below which a Hardy function counts as a kernel
/// element of a Toeplitz operator.
pub const KERNEL_RESIDUAL: f64 = 1e-8;

/// Invertibility threshold for the piecewise-constant Fredholm test.
pub const EPS_PC: f64 = 1e-9;

/// Default number of grid points (including both infinities) on the real
/// line for the piecewise-constant test.
pub const PC_GRID: usize = 257;

/// Angles closer than this are treated as the same circle point when
/// locating arc boundaries of piecewise-constant symbols.
pub const PC_ANGLE: f64 = 1e-12;

/// Relative magnitude below which stray coefficients produced by floating
/// point arithmetic are dropped during rational reduction.
pub const COEFF_DUST: f64 = 1e-13;

/// Smallest normalised singular value accepted by basis independence
/// checks.
pub const INDEPENDENCE_MIN: f64 = 1e-6;
