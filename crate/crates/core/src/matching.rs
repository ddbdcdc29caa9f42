//! Matching pairs `(a, b)` with `a(t) a(1/t) = b(t) b(1/t)`, their
//! subordinated pair `(c, d) = (a/b, b/tilde(a))`, the two Fredholm
//! indices and the index-quadrant classification, plus the adjoint and
//! shift transformations of pairs.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{sup_circle_abs, sup_circle_diff, RationalSymbol};
use crate::tol;
use crate::wiener_hopf::winding_index;

/// Sign pattern of the index pair `(kappa_1, kappa_2)`.
///
/// The branches are checked in declaration order, so `(0, 0)` lands in
/// `PP`; zeros belong to both closed half-axes and either branch yields
/// the same trivial spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    /// `kappa_1 >= 0` and `kappa_2 >= 0`
    PP,
    /// `kappa_1 <= 0` and `kappa_2 <= 0`
    NN,
    /// `kappa_1 >= 0` and `kappa_2 < 0`
    PN,
    /// `kappa_1 < 0` and `kappa_2 > 0`
    NP,
}

impl Quadrant {
    /// Classifies an index pair.
    pub fn classify(kappa1: i64, kappa2: i64) -> Quadrant {
        if kappa1 >= 0 && kappa2 >= 0 {
            Quadrant::PP
        } else if kappa1 <= 0 && kappa2 <= 0 {
            Quadrant::NN
        } else if kappa1 >= 0 && kappa2 < 0 {
            Quadrant::PN
        } else {
            Quadrant::NP
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quadrant::PP => "PP",
            Quadrant::NN => "NN",
            Quadrant::PN => "PN",
            Quadrant::NP => "NP",
        };
        write!(f, "{s}")
    }
}

/// A verified matching pair together with its subordinated pair and
/// index data.
#[derive(Clone, Debug)]
pub struct MatchingAnalysis {
    /// Toeplitz symbol of the pair.
    pub a: RationalSymbol,
    /// Hankel symbol of the pair.
    pub b: RationalSymbol,
    /// First subordinated symbol `c = a / b`.
    pub c: RationalSymbol,
    /// Second subordinated symbol `d = b / tilde(a)`.
    pub d: RationalSymbol,
    /// `ind T(c)`, the negative of the winding number of `c`.
    pub kappa1: i64,
    /// `ind T(d)`.
    pub kappa2: i64,
    /// `T(c)` is Fredholm (always true for a successful analysis).
    pub fredholm_c: bool,
    /// `T(d)` is Fredholm (always true for a successful analysis).
    pub fredholm_d: bool,
    /// Sign pattern of `(kappa1, kappa2)`.
    pub quadrant: Quadrant,
}

/// Sampled test of the matching condition `a(t) a(1/t) = b(t) b(1/t)`.
///
/// Both symbols must be zero- and pole-free on the circle; the
/// comparison is relative to the magnitude of `a * tilde(a)`.
pub fn check_matching(a: &RationalSymbol, b: &RationalSymbol) -> Result<bool> {
    winding_index(a)?;
    winding_index(b)?;
    let left = a * &a.tilde();
    let right = b * &b.tilde();
    let scale = sup_circle_abs(&left, tol::MATCH_SAMPLES)?;
    let dev = sup_circle_diff(&left, &right, tol::MATCH_SAMPLES)?;
    Ok(dev <= tol::MATCH_TOL * scale)
}

/// Builds the full analysis of a matching pair: subordinated symbols,
/// indices and quadrant.
pub fn analyze(a: &RationalSymbol, b: &RationalSymbol) -> Result<MatchingAnalysis> {
    if !check_matching(a, b)? {
        return Err(Error::NotMatchingPair);
    }
    let c = a.div(b)?;
    let d = b.div(&a.tilde())?;

    for (name, g) in [("c", &c), ("d", &d)] {
        let prod = g * &g.tilde();
        let dev = sup_circle_diff(&prod, &RationalSymbol::one(), tol::MATCH_SAMPLES)?;
        if dev > tol::MATCH_TOL {
            return Err(Error::Internal(format!(
                "subordinated symbol {name} fails {name} * tilde({name}) = 1 by {dev:.3e}"
            )));
        }
    }

    let fredholm_gate = |e: Error| match e {
        Error::SymbolDegenerateOnCircle(_) => Error::NotFredholmPair,
        other => other,
    };
    let kappa1 = -winding_index(&c).map_err(fredholm_gate)?;
    let kappa2 = -winding_index(&d).map_err(fredholm_gate)?;
    Ok(MatchingAnalysis {
        a: a.clone(),
        b: b.clone(),
        c,
        d,
        kappa1,
        kappa2,
        fredholm_c: true,
        fredholm_d: true,
        quadrant: Quadrant::classify(kappa1, kappa2),
    })
}

/// The matching pair of the adjoint operator: pointwise conjugate of `a`
/// and coefficientwise conjugate of `b`.
///
/// Its subordinated pair is the pointwise conjugate of `(d, c)` in
/// swapped order.
pub fn adjoint_pair(
    a: &RationalSymbol,
    b: &RationalSymbol,
) -> Result<(RationalSymbol, RationalSymbol)> {
    if !check_matching(a, b)? {
        return Err(Error::NotMatchingPair);
    }
    Ok((a.conj_reflect(), b.conj_coeffs()))
}

/// The shifted pair `(a t^{-n}, b t^n)` for `n >= 0`; its subordinated
/// pair is `(c t^{-2n}, d)`, raising `kappa_1` by `2n`.
pub fn shift_pair(
    a: &RationalSymbol,
    b: &RationalSymbol,
    n: i64,
) -> Result<(RationalSymbol, RationalSymbol)> {
    if n < 0 {
        return Err(Error::InvalidSymbol("shift exponent must be nonnegative".into()));
    }
    if !check_matching(a, b)? {
        return Err(Error::NotMatchingPair);
    }
    Ok((a.shifted(-n), b.shifted(n)))
}
