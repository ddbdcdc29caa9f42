//! Closed-form kernel and cokernel bases of `T(a) + H(b)` and
//! `T(a) - H(b)` for matching pairs, assembled from three ingredients:
//! the eigenspace bases of the involution `JQgP` on Toeplitz kernels,
//! a canonical right inverse of `T(c)`, and the embedding `phi` that
//! transports kernel material of `T(d)` into the mixed operator.
//!
//! The assembly dispatches on the sign pattern of `(kappa_1, kappa_2)`;
//! cokernels are always realized as kernels of the adjoint pair with the
//! same operator sign, so everything lives in one Hardy space.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matching::{
    adjoint_pair, analyze, check_matching, shift_pair, MatchingAnalysis, Quadrant,
};
use crate::rational::{
    apply_jqgp, apply_toeplitz, sup_circle_abs, sup_circle_diff, HardyFunction,
    RationalSymbol,
};
use crate::tol;
use crate::wiener_hopf::{factorize, signature, winding_index, Signature};

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Selects between the operators `T(a) + H(b)` and `T(a) - H(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorSign {
    /// `T(a) + H(b)`
    Plus,
    /// `T(a) - H(b)`
    Minus,
}

impl OperatorSign {
    /// `+1.0` or `-1.0`.
    pub fn factor(self) -> f64 {
        match self {
            OperatorSign::Plus => 1.0,
            OperatorSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for OperatorSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSign::Plus => write!(f, "+"),
            OperatorSign::Minus => write!(f, "-"),
        }
    }
}

/// Selects one of the complementary projections `(I +/- JQgP)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionSide {
    /// `(I + JQgP)/2`
    Plus,
    /// `(I - JQgP)/2`
    Minus,
}

/// Eigenspace bases of the involution `JQgP` restricted to `ker T(g)`.
#[derive(Clone, Debug)]
pub struct PmBases {
    /// Basis of the `+1` eigenspace.
    pub plus: Vec<HardyFunction>,
    /// Basis of the `-1` eigenspace.
    pub minus: Vec<HardyFunction>,
    /// `ind T(g)`; both bases are empty when this is not positive.
    pub n: i64,
    /// Factorization signature of `g`.
    pub sigma: Signature,
}

/// Which structural case produced a kernel/cokernel description.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Both indices nonnegative: the operator is right invertible and
    /// the cokernel is trivial.
    RightInvertible,
    /// Both indices nonpositive: the operator is left invertible and
    /// the kernel is trivial.
    LeftInvertible,
    /// `kappa_1 >= 0 > kappa_2`: kernel from the `c` side only,
    /// cokernel from the adjoint side only.
    SplitSides,
    /// `kappa_1 < 0 < kappa_2` with even `kappa_1`: shift by
    /// `n = -kappa_1/2` and restrict.
    MixedShiftEven,
    /// `kappa_1 < 0 < kappa_2` with odd `kappa_1`: shift by
    /// `n = (1 - kappa_1)/2` and restrict.
    MixedShiftOdd,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Branch::RightInvertible => "right-invertible",
            Branch::LeftInvertible => "left-invertible",
            Branch::SplitSides => "split-sides",
            Branch::MixedShiftEven => "mixed-shift-even",
            Branch::MixedShiftOdd => "mixed-shift-odd",
        };
        write!(f, "{name}")
    }
}

/// Sizes of the two families feeding an assembled kernel basis. For the
/// mixed quadrant these count the candidate families of the shifted pair
/// before the coefficient restriction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Contributions {
    /// Elements taken from the projection range on `ker T(c)`.
    pub from_c_projection: usize,
    /// Elements obtained as `phi` images of `ker T(d)` material.
    pub from_phi_image: usize,
}

/// Kernel and cokernel data of one operator `T(a) +/- H(b)`.
#[derive(Clone, Debug)]
pub struct KernelDescription {
    /// Which operator was analyzed.
    pub sign: OperatorSign,
    /// Basis of the kernel.
    pub kernel_basis: Vec<HardyFunction>,
    /// Basis of the kernel of the adjoint operator (same sign, adjoint
    /// pair), representing the cokernel.
    pub cokernel_basis: Vec<HardyFunction>,
    /// `kernel_basis.len()`.
    pub dim_ker: usize,
    /// `cokernel_basis.len()`.
    pub dim_coker: usize,
    /// `dim_ker - dim_coker`.
    pub index: i64,
    /// Structural case that produced the kernel.
    pub branch: Branch,
    /// Family sizes behind the kernel basis.
    pub contributions: Contributions,
}

/// The four symbol relations with a one-sided invertibility guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoburnClass {
    /// `T(a) - H(a t^{-1})`
    MinusHm1,
    /// `T(a) + H(a t)`
    PlusH1,
    /// `T(a) + H(a)`
    PlusH0,
    /// `T(a) - H(a)`
    MinusH0,
}

/// Index/signature constellation of the subordinated symbol `c` that
/// guarantees a trivial kernel or cokernel, and for which operator sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryCase {
    /// `kappa_1 = 1`, `sigma(c) = +1`: guarantee for `T(a) + H(b)`.
    Plus,
    /// `kappa_1 = -1`, `sigma(c) = +1`: guarantee for `T(a) - H(b)`.
    Minus,
    /// `kappa_1 = 0`: guarantee for both signs.
    Both,
}

/// Outcome of the one-sided invertibility classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoburnVerdict {
    /// Matched special form `b = a t^k`, if the requested sign belongs
    /// to one of the four guaranteed classes.
    pub class_match: Option<CoburnClass>,
    /// Whether either route guarantees `min(dim ker, dim coker) = 0`
    /// for the requested operator sign.
    pub guaranteed_onesided: bool,
    /// Index/signature route outcome, independent of the class match.
    pub corollary_case: Option<CorollaryCase>,
}

/// Basis of `ker T(g)`: `{g_plus^{-1} t^j : 0 <= j < ind T(g)}`, empty
/// when the index is not positive.
pub fn toeplitz_kernel_basis(g: &RationalSymbol) -> Result<Vec<HardyFunction>> {
    let n = -winding_index(g)?;
    if n <= 0 {
        return Ok(Vec::new());
    }
    let f = factorize(g)?;
    let gp_inv = f.g_plus.recip()?;
    Ok((0..n)
        .map(|j| HardyFunction::unchecked(gp_inv.shifted(j)))
        .collect())
}

/// Eigenspace bases of `JQgP` on `ker T(g)` for a matching function `g`
/// with `ind T(g) = n`.
///
/// For `n = 2m` both eigenspaces have dimension `m`, with basis elements
/// `g_plus^{-1} (t^{m-k-1} +/- sigma t^{m+k})`, `k < m`. For
/// `n = 2m + 1` the candidates are `g_plus^{-1} (t^{m+k} +/- sigma
/// t^{m-k})`, `k <= m`, with the single vanishing `k = 0` element
/// dropped; the dimensions are `m + (1 +/- sigma)/2`.
pub fn pm_bases(g: &RationalSymbol) -> Result<PmBases> {
    let sigma = signature(g)?;
    let n = -winding_index(g)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    if n <= 0 {
        return Ok(PmBases { plus, minus, n, sigma });
    }
    let f = factorize(g)?;
    let gp_inv = f.g_plus.recip()?;
    let s = sigma.as_complex();

    let element = |hi: i64, lo: i64, sgn: f64| -> HardyFunction {
        let p = LaurentPoly::from_terms([(hi, cx(1.0, 0.0)), (lo, s * sgn)]);
        HardyFunction::unchecked(&gp_inv * &RationalSymbol::from_laurent(p))
    };

    if n % 2 == 0 {
        let m = n / 2;
        for k in 0..m {
            plus.push(element(m - k - 1, m + k, 1.0));
            minus.push(element(m - k - 1, m + k, -1.0));
        }
    } else {
        let m = (n - 1) / 2;
        for k in 0..=m {
            if k == 0 {
                // t^m (1 +/- sigma): one side degenerates to zero
                match sigma {
                    Signature::Plus => plus.push(element(m, m, 1.0)),
                    Signature::Minus => minus.push(element(m, m, -1.0)),
                }
            } else {
                plus.push(element(m + k, m - k, 1.0));
                minus.push(element(m + k, m - k, -1.0));
            }
        }
    }
    Ok(PmBases { plus, minus, n, sigma })
}

/// Relative circle-sampled residual of `T(g) f` against `f`.
fn toeplitz_residual(g: &RationalSymbol, f: &HardyFunction) -> Result<f64> {
    let image = apply_toeplitz(g, f)?;
    if image.is_zero() {
        return Ok(0.0);
    }
    let num = sup_circle_abs(image.symbol(), 64)?;
    let den = sup_circle_abs(f.symbol(), 64)?.max(1e-300);
    Ok(num / den)
}

/// Applies `(I +/- JQgP)/2` to a kernel element of `T(g)`.
pub fn pg_project(
    g: &RationalSymbol,
    f: &HardyFunction,
    side: ProjectionSide,
) -> Result<HardyFunction> {
    if f.is_zero() {
        return Ok(HardyFunction::zero());
    }
    let res = toeplitz_residual(g, f)?;
    if res > tol::KERNEL_RESIDUAL {
        return Err(Error::NotInKernel(res));
    }
    let j = apply_jqgp(g, f)?;
    let combined = match side {
        ProjectionSide::Plus => f + &j,
        ProjectionSide::Minus => f - &j,
    };
    Ok(combined.scaled(cx(0.5, 0.0)))
}

/// Applies the canonical right inverse of `T(c)` built from the
/// factorization `c = c_minus t^n c_plus` with `n <= 0`:
/// `f -> c_plus^{-1} P(c_minus^{-1} t^{-n} f)`.
pub fn right_inverse_apply(c: &RationalSymbol, f: &HardyFunction) -> Result<HardyFunction> {
    let fact = factorize(c)?;
    if fact.index_n > 0 {
        return Err(Error::NotRightInvertible);
    }
    if f.is_zero() {
        return Ok(HardyFunction::zero());
    }
    let lifted = &fact.g_minus.recip()? * &f.symbol().shifted(-fact.index_n);
    let (plus, _) = lifted.pole_split()?;
    Ok(HardyFunction::unchecked(&fact.g_plus.recip()? * &plus))
}

/// The embedding of `ker T(d)` material into `ker(T(a) +/- H(b))`:
/// with `u = T_r^{-1}(c) T(tilde(a)^{-1}) s`,
/// `phi_{+/-}(s) = u -/+ JQcP u +/- JQ tilde(a)^{-1} s`.
pub fn phi_map(
    a: &RationalSymbol,
    b: &RationalSymbol,
    s: &HardyFunction,
    sign: OperatorSign,
) -> Result<HardyFunction> {
    let c = a.div(b)?;
    let d = b.div(&a.tilde())?;
    if !s.is_zero() {
        let res = toeplitz_residual(&d, s)?;
        if res > tol::KERNEL_RESIDUAL {
            return Err(Error::NotInKernel(res));
        }
    }
    let at_inv = a.tilde().recip()?;
    let ts = apply_toeplitz(&at_inv, s)?;
    let u = right_inverse_apply(&c, &ts)?;
    let jc = apply_jqgp(&c, &u)?;
    let ja = apply_jqgp(&at_inv, s)?;
    Ok(match sign {
        OperatorSign::Plus => &(&u - &jc) + &ja,
        OperatorSign::Minus => &(&u + &jc) - &ja,
    })
}

/// Kernel basis of `T(a) +/- H(b)` for one analyzed pair, with the
/// family sizes it was assembled from.
fn kernel_side(
    m: &MatchingAnalysis,
    sign: OperatorSign,
) -> Result<(Vec<HardyFunction>, Contributions)> {
    match m.quadrant {
        Quadrant::PP => {
            let cb = pm_bases(&m.c)?;
            let db = pm_bases(&m.d)?;
            let (c_side, d_side) = match sign {
                OperatorSign::Plus => (cb.minus, db.plus),
                OperatorSign::Minus => (cb.plus, db.minus),
            };
            let contributions = Contributions {
                from_c_projection: c_side.len(),
                from_phi_image: d_side.len(),
            };
            let mut kernel = c_side;
            for s in &d_side {
                kernel.push(phi_map(&m.a, &m.b, s, sign)?);
            }
            Ok((kernel, contributions))
        }
        Quadrant::NN => Ok((Vec::new(), Contributions::default())),
        Quadrant::PN => {
            let cb = pm_bases(&m.c)?;
            let side = match sign {
                OperatorSign::Plus => cb.minus,
                OperatorSign::Minus => cb.plus,
            };
            let contributions = Contributions {
                from_c_projection: side.len(),
                from_phi_image: 0,
            };
            Ok((side, contributions))
        }
        Quadrant::NP => {
            let n = (1 - m.kappa1) / 2;
            let (sa, sb) = shift_pair(&m.a, &m.b, n)?;
            let shifted = analyze(&sa, &sb)?;
            if shifted.quadrant != Quadrant::PP {
                return Err(Error::Internal(format!(
                    "shift by {n} left the pair in quadrant {}",
                    shifted.quadrant
                )));
            }
            let (candidates, contributions) = kernel_side(&shifted, sign)?;
            let restricted = restrict_low_coeffs(&candidates, n as usize)?;
            Ok((restricted, contributions))
        }
    }
}

/// Restricts a candidate space to the combinations whose first `n`
/// Taylor coefficients vanish, then divides by `t^n`.
fn restrict_low_coeffs(
    candidates: &[HardyFunction],
    n: usize,
) -> Result<Vec<HardyFunction>> {
    if candidates.is_empty() || n == 0 {
        return Ok(candidates.to_vec());
    }
    let cols = candidates.len();
    let columns: Vec<Vec<Complex64>> =
        candidates.iter().map(|f| f.taylor_coeffs(n)).collect();
    let mat = DMatrix::<Complex64>::from_fn(n, cols, |i, j| columns[j][i]);
    let null = svd_nullspace(&mat);
    let mut out = Vec::new();
    for weights in null {
        let mut combo = RationalSymbol::zero();
        for (j, w) in weights.iter().enumerate() {
            combo = &combo + &candidates[j].symbol().scaled(*w);
        }
        let divided = divide_by_monomial(&combo, n)?;
        if !divided.is_zero() {
            out.push(divided);
        }
    }
    Ok(out)
}

/// Divides a Hardy-class symbol whose first `n` Taylor coefficients are
/// numerically zero by `t^n`, snapping those coefficients to exact zero
/// first. The snap is justified because the coefficients of the reduced
/// numerator vanish exactly when the Taylor coefficients do.
fn divide_by_monomial(sym: &RationalSymbol, n: usize) -> Result<HardyFunction> {
    if sym.is_zero() {
        return Ok(HardyFunction::zero());
    }
    let scale = sym.num().max_coeff_norm();
    let mut kept = Vec::new();
    for (k, v) in sym.num().terms() {
        if k < n as i64 {
            if v.norm() > tol::KERNEL_RESIDUAL * scale {
                return Err(Error::Internal(format!(
                    "coefficient restriction left Taylor coefficient {k} at relative size {:.3e}",
                    v.norm() / scale
                )));
            }
        } else {
            kept.push((k - n as i64, v));
        }
    }
    let num = LaurentPoly::from_terms(kept);
    if num.is_zero() {
        return Ok(HardyFunction::zero());
    }
    Ok(HardyFunction::unchecked(RationalSymbol::new(num, sym.den().clone())?))
}

/// Right-singular vectors of `mat` whose singular values fall below the
/// relative cutoff [`tol::TAU_SVD`].
fn svd_nullspace(mat: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    let (rows, cols) = mat.shape();
    let square = if rows < cols {
        let mut m = DMatrix::<Complex64>::zeros(cols, cols);
        m.view_mut((0, 0), (rows, cols)).copy_from(mat);
        m
    } else {
        mat.clone()
    };
    let svd = square.svd(false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut out = Vec::new();
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] <= tol::TAU_SVD * smax {
            out.push((0..cols).map(|j| vt[(i, j)].conj()).collect());
        }
    }
    out
}

/// Verifies that a basis has numerically independent columns: smallest
/// singular value of the column-normalized Taylor-coefficient matrix at
/// least [`tol::INDEPENDENCE_MIN`].
fn check_independent(basis: &[HardyFunction], label: &str) -> Result<()> {
    if basis.is_empty() {
        return Ok(());
    }
    let rows = 64;
    let cols = basis.len();
    let mut mat = DMatrix::<Complex64>::zeros(rows, cols);
    for (j, f) in basis.iter().enumerate() {
        let coeffs = f.taylor_coeffs(rows);
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::Internal(format!("{label} basis contains a zero vector")));
        }
        for i in 0..rows {
            mat[(i, j)] = coeffs[i] / norm;
        }
    }
    let svd = mat.svd(false, false);
    let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if smin < tol::INDEPENDENCE_MIN {
        return Err(Error::Internal(format!(
            "{label} basis nearly dependent: smallest singular value {smin:.3e}"
        )));
    }
    Ok(())
}

/// Full kernel/cokernel description of `T(a) +/- H(b)`.
///
/// The kernel comes from the quadrant dispatch on `(kappa_1, kappa_2)`;
/// the cokernel is the same computation on the adjoint pair with the
/// same sign. Both bases pass an independence check before returning.
pub fn kernel_cokernel(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
) -> Result<KernelDescription> {
    let m = analyze(a, b)?;
    let (kernel_basis, contributions) = kernel_side(&m, sign)?;
    let (adj_a, adj_b) = adjoint_pair(a, b)?;
    let adj = analyze(&adj_a, &adj_b)?;
    let (cokernel_basis, _) = kernel_side(&adj, sign)?;

    check_independent(&kernel_basis, "kernel")?;
    check_independent(&cokernel_basis, "cokernel")?;

    let branch = match m.quadrant {
        Quadrant::PP => Branch::RightInvertible,
        Quadrant::NN => Branch::LeftInvertible,
        Quadrant::PN => Branch::SplitSides,
        Quadrant::NP => {
            if m.kappa1 % 2 == 0 {
                Branch::MixedShiftEven
            } else {
                Branch::MixedShiftOdd
            }
        }
    };
    let dim_ker = kernel_basis.len();
    let dim_coker = cokernel_basis.len();
    Ok(KernelDescription {
        sign,
        kernel_basis,
        cokernel_basis,
        dim_ker,
        dim_coker,
        index: dim_ker as i64 - dim_coker as i64,
        branch,
        contributions,
    })
}

/// `(dim ker, dim coker)` of `T(a) +/- H(b)`.
pub fn defect_numbers(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
) -> Result<(usize, usize)> {
    let d = kernel_cokernel(a, b, sign)?;
    Ok((d.dim_ker, d.dim_coker))
}

/// Detects the four one-sided invertibility classes `b = a t^k` and the
/// index/signature guarantee on the subordinated symbol.
pub fn coburn_classify(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
) -> Result<CoburnVerdict> {
    winding_index(a)?;

    let mut detected_k = None;
    for k in [-1i64, 0, 1] {
        let target = a.shifted(k);
        let scale = sup_circle_abs(&target, tol::MATCH_SAMPLES)?;
        let dev = sup_circle_diff(b, &target, tol::MATCH_SAMPLES)?;
        if dev <= tol::MATCH_TOL * scale.max(1e-300) {
            detected_k = Some(k);
            break;
        }
    }
    let class_match = detected_k.and_then(|k| match (k, sign) {
        (-1, OperatorSign::Minus) => Some(CoburnClass::MinusHm1),
        (1, OperatorSign::Plus) => Some(CoburnClass::PlusH1),
        (0, OperatorSign::Plus) => Some(CoburnClass::PlusH0),
        (0, OperatorSign::Minus) => Some(CoburnClass::MinusH0),
        _ => None,
    });

    let corollary_case = if check_matching(a, b)? {
        let c = a.div(b)?;
        let kappa1 = -winding_index(&c)?;
        match kappa1 {
            0 => Some(CorollaryCase::Both),
            1 | -1 => {
                let fires = signature(&c).ok() == Some(Signature::Plus);
                if fires && kappa1 == 1 {
                    Some(CorollaryCase::Plus)
                } else if fires {
                    Some(CorollaryCase::Minus)
                } else {
                    None
                }
            }
            _ => None,
        }
    } else {
        None
    };

    let corollary_covers_sign = matches!(
        (corollary_case, sign),
        (Some(CorollaryCase::Both), _)
            | (Some(CorollaryCase::Plus), OperatorSign::Plus)
            | (Some(CorollaryCase::Minus), OperatorSign::Minus)
    );
    Ok(CoburnVerdict {
        class_match,
        guaranteed_onesided: class_match.is_some() || corollary_covers_sign,
        corollary_case,
    })
}
