//! Kernel and cokernel analysis of Toeplitz-plus-Hankel operators
//! `T(a) + H(b)` and `T(a) - H(b)` acting on the Hardy space of the unit
//! circle, for rational symbols satisfying the matching condition
//! `a(t) a(1/t) = b(t) b(1/t)`.
//!
//! The crate is organised in layers:
//!
//! * [`laurent`], [`roots`], [`rational`]: exact symbol calculus for
//!   Laurent polynomials and rational functions on the circle, including
//!   Riesz projections and the operator actions `T(g)`, `H(g)`, `JQgP`.
//! * [`wiener_hopf`]: weak Wiener-Hopf factorisation `g = g_- t^n g_+` of
//!   rational symbols and the factorisation signature of matching symbols.
//! * [`matching`]: matching pairs `(a, b)`, their subordinated pair
//!   `(c, d)`, the Fredholm indices `kappa_1`, `kappa_2` and the
//!   index-quadrant classification.
//! * [`kernel`]: closed-form kernel and cokernel bases for
//!   `T(a) +/- H(b)` in every quadrant, the `P_g^{+/-}` projection bases,
//!   and the one-sided invertibility (Coburn-Simonenko) classifier.
//! * [`finite_section`]: an independent finite-section oracle; truncated
//!   operator matrices, SVD-based numerical kernel dimensions and
//!   residual checks.
//! * [`pc`]: a Fredholm test for piecewise-constant symbols on `H^p`.
//! * [`symbol_spec`]: the JSON symbol-literal format shared with the CLI.

pub mod error;
pub mod finite_section;
pub mod kernel;
pub mod laurent;
pub mod matching;
pub mod pc;
pub mod rational;
pub mod roots;
pub mod symbol_spec;
pub mod tol;
pub mod wiener_hopf;

mod poly;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use rational::{
    apply_hankel, apply_jqgp, apply_toeplitz, sup_circle_abs, sup_circle_diff, HardyFunction,
    RationalSymbol,
};
pub use roots::{poly_roots, RootSplit};
pub use wiener_hopf::{factorize, is_self_reciprocal, signature, signature_point_check,
    winding_index, Signature, WhFactorization};

pub use matching::{adjoint_pair, analyze, check_matching, shift_pair, MatchingAnalysis, Quadrant};

pub use kernel::{
    coburn_classify, defect_numbers, kernel_cokernel, pg_project, phi_map, pm_bases,
    right_inverse_apply, toeplitz_kernel_basis, Branch, CoburnClass, CoburnVerdict, Contributions,
    CorollaryCase, KernelDescription, OperatorSign, PmBases, ProjectionSide,
};

pub use finite_section::{
    build_block_v_matrix, build_matrix, numeric_kernel_dim, oracle_check, residual_check,
    section_null_count, toeplitz_section, truncate_hardy, HardyTruncation, OracleComparison,
    OracleReport, Provenance, TruncationMatrix,
};

pub use pc::{
    h_p, nu_p, pc_fredholm_test, pc_p_sweep, PcConditionKind, PcFredholmReport, PcSweep,
    PcSymbol, PcWitness,
};

pub use symbol_spec::{PcSymbolSpec, SymbolSpec};
