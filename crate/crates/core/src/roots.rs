//! Polynomial root finding and inside/outside classification relative to
//! the unit circle.
//!
//! Roots are computed by Aberth-Ehrlich simultaneous iteration followed
//! by one Newton refinement pass; the contract is the scaled residual
//! bound [`tol::EPS_ROOT`], not a particular method. Close roots are
//! merged into multiple roots, and any root within [`tol::DELTA_CIRCLE`]
//! of the circle aborts the split.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly;
use crate::tol;

/// Roots of a Laurent polynomial split by the unit circle, with
/// multiplicities, plus the order of the monomial factor `t^zero_order`.
#[derive(Clone, Debug)]
pub struct RootSplit {
    /// Roots with `|z| < 1 - DELTA_CIRCLE` and their multiplicities.
    pub inside: Vec<(Complex64, usize)>,
    /// Roots with `|z| > 1 + DELTA_CIRCLE` and their multiplicities.
    pub outside: Vec<(Complex64, usize)>,
    /// Exponent of the extracted monomial factor (the lowest exponent of
    /// the Laurent polynomial; negative for genuine Laurent parts).
    pub zero_order: i64,
}

impl RootSplit {
    /// Total number of inside roots counted with multiplicity.
    pub fn inside_count(&self) -> usize {
        self.inside.iter().map(|(_, m)| m).sum()
    }

    /// Total number of outside roots counted with multiplicity.
    pub fn outside_count(&self) -> usize {
        self.outside.iter().map(|(_, m)| m).sum()
    }
}

const MAX_ABERTH_ITER: usize = 400;

/// All roots of a dense polynomial (ascending coefficients, nonzero
/// leading coefficient, nonzero constant term not required). Degree zero
/// yields the empty list.
pub(crate) fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut v = coeffs.to_vec();
    poly::trim_leading(&mut v);
    if v.is_empty() {
        return Err(Error::Internal("root finding on the zero polynomial".into()));
    }
    let deg = v.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }

    // strip roots at the origin exactly
    let mut zeros_at_origin = 0;
    while v[0].re == 0.0 && v[0].im == 0.0 {
        v.remove(0);
        zeros_at_origin += 1;
    }
    let deg = v.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if deg == 0 {
        return Ok(roots);
    }

    let lead = v[deg];
    let monic: Vec<Complex64> = v.iter().map(|&c| c / lead).collect();
    let dmonic = poly::derivative(&monic);
    let coeff_scale = monic.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // Cauchy-style inclusion radius for the initial ring of guesses.
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| {
            let ang = 2.0 * std::f64::consts::PI * (j as f64 + 0.35) / deg as f64 + 0.4;
            Complex64::from_polar(0.8 * radius, ang)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ABERTH_ITER {
        let mut max_step = 0.0f64;
        for j in 0..deg {
            let pv = poly::eval(&monic, z[j]);
            let dv = poly::eval(&dmonic, z[j]);
            let w = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..deg {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.norm() > 1e-300 {
                        s += diff.finv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }

    let scaled_residual = |zj: Complex64| -> f64 {
        let grow = zj.norm().max(1.0).powi(deg as i32);
        poly::eval(&monic, zj).norm() / (coeff_scale.max(1.0) * grow)
    };

    // one Newton pass, kept only when it does not make things worse
    for zj in z.iter_mut() {
        let dv = poly::eval(&dmonic, *zj);
        if dv.norm() > 1e-300 {
            let cand = *zj - poly::eval(&monic, *zj) / dv;
            if scaled_residual(cand) <= scaled_residual(*zj) {
                *zj = cand;
            }
        }
    }

    for &zj in &z {
        if !zj.re.is_finite() || !zj.im.is_finite() {
            return Err(Error::NonConvergence("non-finite root iterate".into()));
        }
        if scaled_residual(zj) > tol::EPS_ROOT {
            if !converged {
                return Err(Error::NonConvergence(format!(
                    "residual {:.3e} above target after iteration cap",
                    scaled_residual(zj)
                )));
            }
            return Err(Error::NonConvergence(format!(
                "residual {:.3e} above target",
                scaled_residual(zj)
            )));
        }
    }

    roots.extend(z);
    Ok(roots)
}

/// Merges roots closer than [`tol::ROOT_CLUSTER`] into `(centroid,
/// multiplicity)` clusters. Output is sorted for determinism.
pub(crate) fn cluster(mut roots: Vec<Complex64>) -> Vec<(Complex64, usize)> {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let n = roots.len();
    let mut assigned = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut stack = vec![i];
        assigned[i] = id;
        let mut members = vec![i];
        while let Some(j) = stack.pop() {
            for k in 0..n {
                if assigned[k] == usize::MAX && (roots[j] - roots[k]).norm() < tol::ROOT_CLUSTER {
                    assigned[k] = id;
                    stack.push(k);
                    members.push(k);
                }
            }
        }
        clusters.push(members);
    }
    let mut out: Vec<(Complex64, usize)> = clusters
        .into_iter()
        .map(|members| {
            let m = members.len();
            let mut c = Complex64::new(0.0, 0.0);
            for &i in &members {
                c += roots[i];
            }
            (c / m as f64, m)
        })
        .collect();
    out.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap()
            .then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    out
}

/// All roots of a dense polynomial merged into `(root, multiplicity)`
/// clusters. The centroid of a cluster of multiplicity `m` is only
/// first-order accurate, so it is re-polished by Newton iteration on the
/// `(m-1)`-th derivative, where the root is simple.
pub(crate) fn clustered_roots(coeffs: &[Complex64]) -> Result<Vec<(Complex64, usize)>> {
    let raw = all_roots(coeffs)?;
    let mut clusters = cluster(raw);

    let mut v = coeffs.to_vec();
    poly::trim_leading(&mut v);
    let lead = *v.last().expect("nonzero polynomial");
    let monic: Vec<Complex64> = v.iter().map(|&c| c / lead).collect();

    for (z, m) in clusters.iter_mut() {
        if *m < 2 || (z.re == 0.0 && z.im == 0.0) {
            continue;
        }
        let mut q = monic.clone();
        for _ in 0..*m - 1 {
            q = poly::derivative(&q);
        }
        let dq = poly::derivative(&q);
        let mut cand = *z;
        for _ in 0..8 {
            let dv = poly::eval(&dq, cand);
            if dv.norm() < 1e-300 {
                break;
            }
            let step = poly::eval(&q, cand) / dv;
            cand -= step;
            if step.norm() <= 1e-15 * (1.0 + cand.norm()) {
                break;
            }
        }
        if (cand - *z).norm() < tol::ROOT_CLUSTER
            && poly::eval(&q, cand).norm() <= poly::eval(&q, *z).norm()
        {
            *z = cand;
        }
    }
    Ok(clusters)
}

/// Splits the roots of a nonzero Laurent polynomial by the unit circle.
///
/// The monomial factor `t^zero_order` is reported separately; any
/// remaining root within [`tol::DELTA_CIRCLE`] of the circle is an error.
pub fn poly_roots(p: &LaurentPoly) -> Result<RootSplit> {
    if p.is_zero() {
        return Err(Error::InvalidSymbol("root split of the zero polynomial".into()));
    }
    let zero_order = p.min_exp().unwrap();
    let dense = p.dense();
    let clustered = clustered_roots(&dense)?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (z, m) in clustered {
        let r = z.norm();
        if (r - 1.0).abs() <= tol::DELTA_CIRCLE {
            return Err(Error::RootOnCircle(format!("|z| = {r:.12} at z = {z}")));
        }
        if r < 1.0 {
            inside.push((z, m));
        } else {
            outside.push((z, m));
        }
    }
    Ok(RootSplit { inside, outside, zero_order })
}
