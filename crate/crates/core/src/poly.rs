//! Dense complex polynomial helpers (ascending coefficient vectors).
//!
//! These back the root finder and the partial-fraction machinery; they
//! are not part of the public API.

use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Removes zero (and exactly-zero) leading coefficients.
pub(crate) fn trim_leading(v: &mut Vec<Complex64>) {
    while v.len() > 1 && v.last().map(|c| c.re == 0.0 && c.im == 0.0) == Some(true) {
        v.pop();
    }
    if v.len() == 1 && v[0].re == 0.0 && v[0].im == 0.0 {
        v.clear();
    }
}

/// Horner evaluation. The empty vector is the zero polynomial.
pub(crate) fn eval(v: &[Complex64], t: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in v.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Derivative coefficients.
pub(crate) fn derivative(v: &[Complex64]) -> Vec<Complex64> {
    if v.len() <= 1 {
        return Vec::new();
    }
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Product of two dense polynomials.
pub(crate) fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (j, &x) in a.iter().enumerate() {
        for (k, &y) in b.iter().enumerate() {
            out[j + k] += x * y;
        }
    }
    out
}

/// Euclidean division `n = q * d + r` with `deg r < deg d`.
/// Panics if `d` is empty; callers guarantee a nonzero divisor.
pub(crate) fn div_rem(n: &[Complex64], d: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    assert!(!d.is_empty(), "division by the zero polynomial");
    let dd = d.len() - 1;
    if n.len() <= dd {
        return (Vec::new(), n.to_vec());
    }
    let lead = d[dd];
    let mut rem = n.to_vec();
    let mut quot = vec![ZERO; n.len() - dd];
    for k in (dd..n.len()).rev() {
        let f = rem[k] / lead;
        quot[k - dd] = f;
        if f.re != 0.0 || f.im != 0.0 {
            for j in 0..=dd {
                rem[k - dd + j] -= f * d[j];
            }
        }
    }
    rem.truncate(dd.max(1));
    trim_leading(&mut quot);
    trim_leading(&mut rem);
    (quot, rem)
}

/// Monic polynomial with the given roots, scaled by `lead`.
pub(crate) fn from_roots(roots: &[Complex64], lead: Complex64) -> Vec<Complex64> {
    let mut out = vec![lead];
    for &r in roots {
        // multiply by (t - r)
        let mut next = vec![ZERO; out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        out = next;
    }
    out
}

/// Divides out a known root: returns `q` with `v ~= (t - root) q`.
/// Uses forward deflation for roots inside the unit circle and backward
/// deflation otherwise, which keeps the quotient well conditioned.
pub(crate) fn deflate(v: &[Complex64], root: Complex64) -> Vec<Complex64> {
    let deg = v.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let mut q = vec![ZERO; deg];
    if root.norm() <= 1.0 {
        // forward: q_{deg-1} = v_deg; q_{k-1} = v_k + root q_k
        q[deg - 1] = v[deg];
        for k in (1..deg).rev() {
            q[k - 1] = v[k] + root * q[k];
        }
    } else {
        // backward: q_0 = -v_0 / root; q_k = (q_{k-1} - v_k) / root
        q[0] = -v[0] / root;
        for k in 1..deg {
            q[k] = (q[k - 1] - v[k]) / root;
        }
    }
    q
}
