//! Dense finite sections of `T(a) + sign * H(b)` and of the associated
//! block operator matrix, with SVD-based kernel dimension estimates and
//! residual checks. These truncations serve as a numerical cross-check
//! that is computed independently of the analytic kernel construction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::OperatorSign;
use crate::matching::MatchingAnalysis;
use crate::rational::{HardyFunction, RationalSymbol};
use crate::tol;
use crate::wiener_hopf::winding_index;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Origin of the entries of a [`TruncationMatrix`].
#[derive(Clone, Debug)]
pub enum Provenance {
    /// `N x N` section of `T(a) + sign * H(b)`.
    ScalarPair {
        /// Toeplitz symbol.
        a: RationalSymbol,
        /// Hankel symbol.
        b: RationalSymbol,
        /// Sign in front of the Hankel part.
        sign: OperatorSign,
        /// Section size.
        n: usize,
    },
    /// `2N x 2N` section of the block matrix
    /// `[[0, T(d)], [-T(c), T(tilde(a)^{-1})]]`.
    VBlock {
        /// Size of each block.
        n: usize,
    },
}

/// A dense truncation of an operator matrix together with its origin.
#[derive(Clone, Debug)]
pub struct TruncationMatrix {
    /// Number of rows.
    pub n_rows: usize,
    /// Number of columns.
    pub n_cols: usize,
    /// Dense entries, row index first.
    pub entries: DMatrix<Complex64>,
    /// How the entries were built.
    pub provenance: Provenance,
}

/// SVD-based summary of one truncation matrix.
#[derive(Clone, Debug)]
pub struct OracleReport {
    /// Number of singular values below the relative cutoff.
    pub numeric_kernel_dim: usize,
    /// All singular values in descending order.
    pub singular_values: Vec<f64>,
    /// Relative residuals of supplied basis vectors, keyed by index.
    pub residuals: Vec<(usize, f64)>,
    /// Whether the numeric data matches the analytic expectation; bare
    /// reports without an expectation leave this `true`.
    pub agrees_with_analytic: bool,
}

/// Outcome of an oracle comparison, including the retry history.
#[derive(Clone, Debug)]
pub struct OracleComparison {
    /// Report at the last section size tried.
    pub report: OracleReport,
    /// Section sizes tried, in order.
    pub sizes_tried: Vec<usize>,
    /// Section size of the final report.
    pub n_used: usize,
}

/// First `N` Taylor coefficients of a Hardy function together with a
/// geometric estimate of the discarded tail.
#[derive(Clone, Debug)]
pub struct HardyTruncation {
    /// Coefficients of `t^0 .. t^{N-1}`.
    pub coeffs: DVector<Complex64>,
    /// `rho^N` with `rho = max 1/|pole|`, zero for polynomials.
    pub tail_bound: f64,
}

/// Builds the `N x N` section with entries
/// `a_hat(j - k) + sign * b_hat(j + k + 1)` for `0 <= j, k < N`.
///
/// Either symbol may be zero, in which case its part drops out.
pub fn build_matrix(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
    n: usize,
) -> Result<TruncationMatrix> {
    if n == 0 {
        return Err(Error::InvalidSymbol("section size must be at least 1".into()));
    }
    let ni = n as i64;
    let zeros = || vec![cx(0.0, 0.0); 2 * n - 1];
    let ac = if a.is_zero() {
        zeros()
    } else {
        a.fourier_coeffs(-(ni - 1), ni - 1)?
    };
    let bc = if b.is_zero() {
        zeros()
    } else {
        b.fourier_coeffs(1, 2 * ni - 1)?
    };
    let s = sign.factor();
    let entries = DMatrix::from_fn(n, n, |j, k| {
        ac[(j as i64 - k as i64 + ni - 1) as usize] + bc[j + k] * s
    });
    Ok(TruncationMatrix {
        n_rows: n,
        n_cols: n,
        entries,
        provenance: Provenance::ScalarPair {
            a: a.clone(),
            b: b.clone(),
            sign,
            n,
        },
    })
}

/// Builds the plain Toeplitz section `T_N(g)`, entries `g_hat(j - k)`.
pub fn toeplitz_section(g: &RationalSymbol, n: usize) -> Result<TruncationMatrix> {
    build_matrix(g, &RationalSymbol::zero(), OperatorSign::Plus, n)
}

/// Builds the `2N x 2N` section of the block matrix
/// `[[0, T(d)], [-T(c), T(tilde(a)^{-1})]]` attached to an analyzed
/// pair.
pub fn build_block_v_matrix(analysis: &MatchingAnalysis, n: usize) -> Result<TruncationMatrix> {
    let at_inv = analysis.a.tilde().recip()?;
    let tc = toeplitz_section(&analysis.c, n)?;
    let td = toeplitz_section(&analysis.d, n)?;
    let ta = toeplitz_section(&at_inv, n)?;
    let mut entries = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    entries.view_mut((0, n), (n, n)).copy_from(&td.entries);
    entries.view_mut((n, 0), (n, n)).copy_from(&(-&tc.entries));
    entries.view_mut((n, n), (n, n)).copy_from(&ta.entries);
    Ok(TruncationMatrix {
        n_rows: 2 * n,
        n_cols: 2 * n,
        entries,
        provenance: Provenance::VBlock { n },
    })
}

/// Estimates the kernel dimension of a truncation by a full SVD with
/// the relative cutoff [`tol::TAU_SVD`].
pub fn numeric_kernel_dim(m: &TruncationMatrix) -> OracleReport {
    let svd = m.entries.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    let smax = sv.first().copied().unwrap_or(0.0);
    let dim = if smax <= 0.0 {
        m.n_cols
    } else {
        let small = sv.iter().filter(|&&s| s < tol::TAU_SVD * smax).count();
        small + m.n_cols.saturating_sub(sv.len())
    };
    OracleReport {
        numeric_kernel_dim: dim,
        singular_values: sv,
        residuals: Vec::new(),
        agrees_with_analytic: true,
    }
}

/// Truncates a Hardy function to its first `N` Taylor coefficients.
pub fn truncate_hardy(f: &HardyFunction, n: usize) -> HardyTruncation {
    let coeffs = DVector::from_vec(f.taylor_coeffs(n));
    let rho = f.symbol().pole_decay_ratio().unwrap_or(1.0);
    HardyTruncation {
        coeffs,
        tail_bound: rho.powi(n as i32),
    }
}

/// Relative residual `|M v| / |v|` of the truncated Hardy function `v`
/// against a scalar-pair section `M`.
pub fn residual_check(m: &TruncationMatrix, f: &HardyFunction) -> Result<f64> {
    match m.provenance {
        Provenance::ScalarPair { .. } => {}
        Provenance::VBlock { .. } => {
            return Err(Error::Internal(
                "residual check requires a scalar-pair truncation".into(),
            ))
        }
    }
    let v = truncate_hardy(f, m.n_cols).coeffs;
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((&m.entries * &v).norm() / norm)
}

/// Compares an analytic kernel (dimension and basis) against the
/// numeric section of `T(a) + sign * H(b)` at size `n`.
///
/// A disagreement triggers automatic re-tests at `2n` and `4n`; the
/// returned comparison keeps the report of the last size tried and the
/// full size history.
pub fn oracle_check(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
    analytic_dim: usize,
    basis: &[HardyFunction],
    n: usize,
) -> Result<OracleComparison> {
    let mut sizes_tried = Vec::new();
    let mut last: Option<OracleReport> = None;
    for scale in [1usize, 2, 4] {
        let nn = n * scale;
        sizes_tried.push(nn);
        let m = build_matrix(a, b, sign, nn)?;
        let mut report = numeric_kernel_dim(&m);
        report.residuals = basis
            .iter()
            .enumerate()
            .map(|(i, f)| residual_check(&m, f).map(|r| (i, r)))
            .collect::<Result<Vec<_>>>()?;
        let dim_ok = report.numeric_kernel_dim == analytic_dim;
        let res_ok = report
            .residuals
            .iter()
            .all(|&(_, r)| r <= tol::ORACLE_RESIDUAL);
        report.agrees_with_analytic = dim_ok && res_ok;
        if report.agrees_with_analytic {
            return Ok(OracleComparison {
                report,
                sizes_tried,
                n_used: nn,
            });
        }
        last = Some(report);
    }
    let n_used = *sizes_tried.last().unwrap();
    Ok(OracleComparison {
        report: last.unwrap(),
        sizes_tried,
        n_used,
    })
}

/// Number of vanishing singular values the sections of
/// `T(a) + sign * H(b)` develop as the size grows.
///
/// Reversing both index orders of the section matrix yields the section
/// of `T(reflect a)` plus a Hankel block whose entries are pushed out to
/// ever larger Fourier coefficients of `b`, so the reversed sections
/// converge entrywise to `T(reflect a)` alone. Each kernel element of
/// the operator and each kernel element of that reversed limit
/// contributes one vanishing singular value, giving
/// `dim_ker + max(winding(a), 0)`.
///
/// Fails when `a` has zeros or poles on the circle, since the reversed
/// limit is not Fredholm there and the count is undefined.
pub fn section_null_count(a: &RationalSymbol, dim_ker: usize) -> Result<usize> {
    let w = winding_index(a)?;
    Ok(dim_ker + w.max(0) as usize)
}
