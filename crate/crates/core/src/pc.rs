//! Fredholm test for Toeplitz-plus-Hankel operators whose symbols are
//! piecewise constant on the circle, acting on the Hardy space `H^p`.
//!
//! The criterion evaluates a 2x2 matrix symbol over points of the open
//! upper half-circle crossed with the compactified real line, plus a
//! scalar condition at `t = 1` and `t = -1`. The weight functions
//! `nu_p` and `h_p` trace circular arcs between the one-sided limits as
//! the line parameter runs from minus to plus infinity.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const TAU: f64 = 2.0 * PI;

/// A piecewise-constant symbol on the unit circle.
///
/// Each arc starts at its angle and extends counterclockwise to the
/// next arc's start (the last arc wraps around to the first). The
/// one-sided limit from above at an arc boundary is the starting arc's
/// value; the limit from below is the previous arc's value.
#[derive(Clone, Debug, PartialEq)]
pub struct PcSymbol {
    arcs: Vec<(f64, Complex64)>,
}

impl PcSymbol {
    /// Validates and wraps an arc list: at least one arc, all angles
    /// finite, strictly increasing and inside `[0, 2*pi)`, all values
    /// finite.
    pub fn new(arcs: Vec<(f64, Complex64)>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::InvalidSymbol("symbol needs at least one arc".into()));
        }
        for &(angle, value) in &arcs {
            if !angle.is_finite() || !(0.0..TAU).contains(&angle) {
                return Err(Error::InvalidSymbol(format!(
                    "arc angle {angle} outside [0, 2*pi)"
                )));
            }
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::InvalidSymbol("non-finite arc value".into()));
            }
        }
        for w in arcs.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidSymbol(
                    "arc angles must be strictly increasing".into(),
                ));
            }
        }
        Ok(PcSymbol { arcs })
    }

    /// The symbol that takes one value on the whole circle.
    pub fn constant(value: Complex64) -> Self {
        PcSymbol {
            arcs: vec![(0.0, value)],
        }
    }

    /// Arc list, ordered by start angle.
    pub fn arcs(&self) -> &[(f64, Complex64)] {
        &self.arcs
    }

    /// The same symbol with every value negated.
    pub fn negated(&self) -> Self {
        PcSymbol {
            arcs: self
                .arcs
                .iter()
                .map(|&(angle, value)| (angle, -value))
                .collect(),
        }
    }

    /// Index of the arc whose half-open span contains `angle`.
    fn arc_index(&self, angle: f64) -> usize {
        let mut idx = self.arcs.len() - 1;
        for (i, &(start, _)) in self.arcs.iter().enumerate() {
            if start <= angle + tol::PC_ANGLE {
                idx = i;
            } else {
                break;
            }
        }
        idx
    }

    /// One-sided limit at `e^{i angle}` from counterclockwise ahead.
    pub fn value_above(&self, angle: f64) -> Complex64 {
        let a = normalize_angle(angle);
        self.arcs[self.arc_index(a)].1
    }

    /// One-sided limit at `e^{i angle}` from counterclockwise behind.
    pub fn value_below(&self, angle: f64) -> Complex64 {
        let a = normalize_angle(angle);
        let idx = self.arc_index(a);
        if (self.arcs[idx].0 - a).abs() <= tol::PC_ANGLE {
            let prev = (idx + self.arcs.len() - 1) % self.arcs.len();
            self.arcs[prev].1
        } else {
            self.arcs[idx].1
        }
    }

    /// Angles at which the two one-sided limits actually differ.
    pub fn jump_angles(&self) -> Vec<f64> {
        self.arcs
            .iter()
            .map(|&(angle, _)| angle)
            .filter(|&angle| {
                (self.value_above(angle) - self.value_below(angle)).norm() > 0.0
            })
            .collect()
    }

    /// Whether the symbol has no jumps at all.
    pub fn is_continuous(&self) -> bool {
        self.jump_angles().is_empty()
    }

    /// Smallest modulus over the arc values.
    pub fn min_modulus(&self) -> f64 {
        self.arcs
            .iter()
            .map(|&(_, v)| v.norm())
            .fold(f64::INFINITY, f64::min)
    }
}

fn normalize_angle(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(TAU);
    if (TAU - a).abs() <= tol::PC_ANGLE {
        a = 0.0;
    }
    a
}

/// `coth` through decaying exponentials only, so large real parts never
/// overflow.
fn coth(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        let w = (-2.0 * z).exp();
        (1.0 + w) / (1.0 - w)
    } else {
        let w = (2.0 * z).exp();
        (w + 1.0) / (w - 1.0)
    }
}

/// `1/sinh` through decaying exponentials only.
fn csch(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        let w = (-z).exp();
        2.0 * w / (1.0 - w * w)
    } else {
        let w = z.exp();
        -2.0 * w / (1.0 - w * w)
    }
}

/// Weight `1/2 (1 + coth(pi (y + i/p)))`; limits `1` at `+inf` and `0`
/// at `-inf`.
pub fn nu_p(y: f64, p: f64) -> Complex64 {
    if y == f64::INFINITY {
        return cx(1.0, 0.0);
    }
    if y == f64::NEG_INFINITY {
        return cx(0.0, 0.0);
    }
    0.5 * (cx(1.0, 0.0) + coth(PI * cx(y, 1.0 / p)))
}

/// Weight `1/sinh(pi (y + i/p))`; vanishes at both infinities.
pub fn h_p(y: f64, p: f64) -> Complex64 {
    if y.is_infinite() {
        return cx(0.0, 0.0);
    }
    csch(PI * cx(y, 1.0 / p))
}

/// Which of the two criterion conditions produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcConditionKind {
    /// 2x2 determinant over the open upper half-circle.
    MatrixDet,
    /// Scalar symbol at `t = 1` or `t = -1`.
    Scalar,
}

/// A grid point where one of the two minima is attained.
#[derive(Clone, Copy, Debug)]
pub struct PcWitness {
    /// Condition the witness belongs to.
    pub kind: PcConditionKind,
    /// Angle of the circle point (`0` or `pi` for the scalar
    /// condition).
    pub angle: f64,
    /// Line parameter, possibly infinite.
    pub y: f64,
    /// Modulus attained there.
    pub modulus: f64,
}

/// Verdict of the piecewise-constant Fredholm criterion at one `p`.
#[derive(Clone, Debug)]
pub struct PcFredholmReport {
    /// Exponent of the Hardy space.
    pub p: f64,
    /// Whether both minima clear the invertibility threshold.
    pub is_fredholm: bool,
    /// Smallest modulus of the 2x2 determinant over all samples.
    pub min_matrix_det_modulus: f64,
    /// Smallest modulus of the scalar condition over all samples.
    pub min_scalar_modulus: f64,
    /// Argmin grid points, one per condition.
    pub witnesses: Vec<PcWitness>,
}

/// Result of sweeping the criterion over a list of exponents.
#[derive(Clone, Debug)]
pub struct PcSweep {
    /// One report per requested exponent, in input order.
    pub reports: Vec<PcFredholmReport>,
    /// Pairs of adjacent exponents between which the verdict changes.
    pub critical_candidates: Vec<(f64, f64)>,
}

/// Collects the circle sample angles in the open upper half-circle:
/// every arc boundary of `a` or `b`, reflected into the upper half
/// where needed, plus one interior representative per gap.
fn upper_half_samples(a: &PcSymbol, b: &PcSymbol) -> Vec<f64> {
    let mut breaks: Vec<f64> = Vec::new();
    for sym in [a, b] {
        for &(angle, _) in sym.arcs() {
            for cand in [normalize_angle(angle), normalize_angle(TAU - angle)] {
                if cand > tol::PC_ANGLE && (cand - PI).abs() > tol::PC_ANGLE && cand < PI {
                    breaks.push(cand);
                }
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|x, y| (*x - *y).abs() <= tol::PC_ANGLE);

    let mut samples = Vec::with_capacity(2 * breaks.len() + 1);
    let mut prev = 0.0;
    for &brk in &breaks {
        samples.push(0.5 * (prev + brk));
        samples.push(brk);
        prev = brk;
    }
    samples.push(0.5 * (prev + PI));
    samples
}

/// Tangent-stretched grid over the compactified line, both infinities
/// included.
fn y_grid(grid_size: usize) -> Vec<f64> {
    let mut grid = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        let u = -0.5 * PI + PI * k as f64 / (grid_size - 1) as f64;
        if k == 0 {
            grid.push(f64::NEG_INFINITY);
        } else if k == grid_size - 1 {
            grid.push(f64::INFINITY);
        } else {
            grid.push(u.tan());
        }
    }
    grid
}

/// Golden-section minimization of `f` over `[lo, hi]`.
fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..120 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Scans `|f(y)|` over the grid and refines the interior argmin bracket
/// by golden section in the tangent parameter. Returns the best `y` and
/// the attained value.
fn minimize_over_line(grid: &[f64], f: impl Fn(f64) -> f64 + Copy) -> (f64, f64) {
    let mut best_k = 0;
    let mut best = f64::INFINITY;
    for (k, &y) in grid.iter().enumerate() {
        let v = f(y);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let mut best_y = grid[best_k];
    if best_k > 0 && best_k + 1 < grid.len() {
        let n = grid.len();
        let u_of = |k: usize| -0.5 * PI + PI * k as f64 / (n - 1) as f64;
        let (u, v) = golden_min(u_of(best_k - 1), u_of(best_k + 1), |u| f(u.tan()));
        if v < best {
            best = v;
            best_y = u.tan();
        }
    }
    (best_y, best)
}

struct SidePair {
    above: Complex64,
    below: Complex64,
}

fn sides(sym: &PcSymbol, angle: f64) -> SidePair {
    SidePair {
        above: sym.value_above(angle),
        below: sym.value_below(angle),
    }
}

/// Runs the criterion for `T(a) + H(b)` on `H^p`.
///
/// The second operator of the pair, `T(a) - H(b)`, is tested by passing
/// `b.negated()`.
pub fn pc_fredholm_test(
    a: &PcSymbol,
    b: &PcSymbol,
    p: f64,
    grid_size: usize,
) -> Result<PcFredholmReport> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::InvalidSymbol(format!(
            "Hardy exponent must be a finite number above 1, got {p}"
        )));
    }
    if grid_size < 2 {
        return Err(Error::InvalidSymbol(
            "line grid needs at least two points".into(),
        ));
    }
    if a.min_modulus() == 0.0 {
        return Err(Error::InvalidSymbol(
            "Toeplitz symbol takes the value zero on an arc".into(),
        ));
    }

    let grid = y_grid(grid_size);
    let half = cx(0.5, 0.0);
    let two_i = cx(0.0, 2.0);

    let mut min_det = f64::INFINITY;
    let mut det_witness = None;
    for &theta in &upper_half_samples(a, b) {
        let a_up = sides(a, theta);
        let a_dn = sides(a, TAU - theta);
        let b_up = sides(b, theta);
        let b_dn = sides(b, TAU - theta);
        let det = |y: f64| -> f64 {
            let nu = nu_p(y, p);
            let h = h_p(y, p);
            let m11 = a_up.above * nu + a_up.below * (cx(1.0, 0.0) - nu);
            let m22 = a_dn.above * nu + a_dn.below * (cx(1.0, 0.0) - nu);
            let m12 = (b_up.above - b_up.below) / two_i * h;
            let m21 = (b_dn.below - b_dn.above) / two_i * h;
            (m11 * m22 - m12 * m21).norm()
        };
        let (y, v) = minimize_over_line(&grid, det);
        if v < min_det {
            min_det = v;
            det_witness = Some(PcWitness {
                kind: PcConditionKind::MatrixDet,
                angle: theta,
                y,
                modulus: v,
            });
        }
    }

    let mut min_scalar = f64::INFINITY;
    let mut scalar_witness = None;
    for (theta, t) in [(0.0, cx(1.0, 0.0)), (PI, cx(-1.0, 0.0))] {
        let a_s = sides(a, theta);
        let b_s = sides(b, theta);
        let scalar = |y: f64| -> f64 {
            let nu = nu_p(y, p);
            let h = h_p(y, p);
            (a_s.above * nu + a_s.below * (cx(1.0, 0.0) - nu)
                + t * (b_s.above - b_s.below) * half * h)
                .norm()
        };
        let (y, v) = minimize_over_line(&grid, scalar);
        if v < min_scalar {
            min_scalar = v;
            scalar_witness = Some(PcWitness {
                kind: PcConditionKind::Scalar,
                angle: theta,
                y,
                modulus: v,
            });
        }
    }

    let witnesses = det_witness.into_iter().chain(scalar_witness).collect();
    Ok(PcFredholmReport {
        p,
        is_fredholm: min_det > tol::EPS_PC && min_scalar > tol::EPS_PC,
        min_matrix_det_modulus: min_det,
        min_scalar_modulus: min_scalar,
        witnesses,
    })
}

/// Runs the criterion once per exponent and flags adjacent exponents
/// whose verdicts differ as candidate critical values.
pub fn pc_p_sweep(a: &PcSymbol, b: &PcSymbol, p_list: &[f64]) -> Result<PcSweep> {
    let mut reports = Vec::with_capacity(p_list.len());
    for &p in p_list {
        reports.push(pc_fredholm_test(a, b, p, tol::PC_GRID)?);
    }
    let critical_candidates = reports
        .windows(2)
        .filter(|w| w[0].is_fredholm != w[1].is_fredholm)
        .map(|w| (w[0].p, w[1].p))
        .collect();
    Ok(PcSweep {
        reports,
        critical_candidates,
    })
}
