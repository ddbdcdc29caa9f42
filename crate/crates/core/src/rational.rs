//! Rational symbols on the unit circle, their Riesz projections and the
//! actions of the Toeplitz, Hankel and `JQgP` operators on rational Hardy
//! functions.
//!
//! A [`RationalSymbol`] is kept in a reduced normal form: the denominator
//! is a monic ordinary polynomial with nonzero constant term, and
//! numerator/denominator share no root within [`tol::REDUCE_CANCEL`].
//! Monomial factors live in the numerator as (possibly negative)
//! exponents.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly;
use crate::roots::{all_roots, clustered_roots};
use crate::tol;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A quotient of Laurent polynomials in reduced normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymbol {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalSymbol {
    /// Builds `num / den` and reduces it. Fails only for a zero
    /// denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        Self::normalized(num, den)
    }

    /// Embeds a Laurent polynomial.
    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::normalized(p, LaurentPoly::one()).expect("unit denominator")
    }

    /// The zero symbol.
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    /// The constant symbol `1`.
    pub fn one() -> Self {
        Self::constant(cx(1.0, 0.0))
    }

    /// A constant symbol.
    pub fn constant(c: Complex64) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// The monomial symbol `c * t^k`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(k, c))
    }

    /// Numerator in reduced form.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator in reduced form (monic, nonzero constant term).
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// True for the zero symbol.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let num = num.dust_trimmed();
        let den = den.dust_trimmed();
        let shift = num.min_exp().unwrap() - den.min_exp().unwrap();
        let mut nd = num.dense();
        let mut dd = den.dense();

        // cancel numerator/denominator roots that coincide within the
        // reduction tolerance; multiple roots are matched cluster against
        // cluster so that refined root values enter the deflation
        if dd.len() > 1 && nd.len() > 1 {
            if let (Ok(mut nclusters), Ok(dclusters)) =
                (clustered_roots(&nd), clustered_roots(&dd))
            {
                for (dz, dm) in dclusters {
                    let mut best: Option<(usize, f64)> = None;
                    for (j, (nz, nm)) in nclusters.iter().enumerate() {
                        if *nm == 0 {
                            continue;
                        }
                        let dist = (nz - dz).norm();
                        if best.map(|(_, d)| dist < d).unwrap_or(true) {
                            best = Some((j, dist));
                        }
                    }
                    if let Some((j, dist)) = best {
                        if dist < tol::REDUCE_CANCEL {
                            let k = nclusters[j].1.min(dm);
                            nclusters[j].1 -= k;
                            for _ in 0..k {
                                nd = poly::deflate(&nd, nclusters[j].0);
                                dd = poly::deflate(&dd, dz);
                            }
                        }
                    }
                }
            }
        }

        let lc = *dd.last().expect("nonzero denominator");
        let ndn: Vec<Complex64> = nd.iter().map(|&c| c / lc).collect();
        let ddn: Vec<Complex64> = dd.iter().map(|&c| c / lc).collect();
        let num_out = LaurentPoly::from_dense(&ndn, shift).dust_trimmed();
        let den_out = LaurentPoly::from_dense(&ddn, 0).dust_trimmed();
        if den_out.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num_out.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self { num: num_out, den: den_out })
    }

    /// Evaluates at `t0`; a point at (or numerically indistinguishable
    /// from) a pole is an error.
    pub fn eval(&self, t0: Complex64) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(cx(0.0, 0.0));
        }
        let dv = self.den.eval(t0);
        let deg = self.den.max_exp().unwrap_or(0);
        let scale = self.den.max_coeff_norm() * t0.norm().max(1.0).powi(deg as i32);
        if dv.norm() <= 1e-10 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::PoleAtEvaluationPoint);
        }
        if self.num.min_exp().unwrap_or(0) < 0 && t0.norm() == 0.0 {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(self.num.eval(t0) / dv)
    }

    /// Substitution `t -> 1/t`.
    pub fn tilde(&self) -> Self {
        Self::normalized(self.num.tilde(), self.den.tilde()).expect("tilde keeps den nonzero")
    }

    /// Pointwise complex conjugate on the circle (coefficients
    /// conjugated, exponents reflected).
    pub fn conj_reflect(&self) -> Self {
        Self::normalized(self.num.conj_reflect(), self.den.conj_reflect())
            .expect("conjugation keeps den nonzero")
    }

    /// Coefficientwise conjugation with exponents kept; equals
    /// `tilde(conj_reflect(.))`.
    pub fn conj_coeffs(&self) -> Self {
        Self::normalized(self.num.conj_coeffs(), self.den.conj_coeffs())
            .expect("conjugation keeps den nonzero")
    }

    /// The flip `f(t) -> t^{-1} f(1/t)`, an involution exchanging
    /// coefficient index `k` with `-k-1`.
    pub fn flip(&self) -> Self {
        Self::normalized(self.num.tilde().shifted(-1), self.den.tilde())
            .expect("flip keeps den nonzero")
    }

    /// Multiplicative inverse; fails on the zero symbol.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::normalized(self.den.clone(), self.num.clone())
    }

    /// Quotient `self / rhs`; fails when `rhs` is zero.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Scalar multiple.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self::normalized(self.num.scaled(s), self.den.clone()).expect("den unchanged")
    }

    /// Multiplication by the monomial `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { num: self.num.shifted(k), den: self.den.clone() }
    }

    /// Splits off poles and support by the unit circle:
    /// `f = plus + minus` where `plus` has nonnegative Fourier support
    /// and poles outside the closed disc, and `minus` has support
    /// `<= -1` and poles inside the open disc.
    pub fn pole_split(&self) -> Result<(Self, Self)> {
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let dd = self.den.dense();
        let dclusters = clustered_roots(&dd)?;
        for (r, _) in &dclusters {
            if (r.norm() - 1.0).abs() <= tol::DELTA_CIRCLE {
                return Err(Error::PoleOnCircle);
            }
        }
        let inside: Vec<Complex64> = dclusters
            .into_iter()
            .filter(|(r, _)| r.norm() < 1.0)
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect();

        let nmin = self.num.min_exp().unwrap();
        let s = (-nmin).max(0) as usize;
        // numerator of t^s * f as an ordinary polynomial
        let n_dense = self.num.shifted(s as i64).dense();
        let n_full = {
            // dense() starts at the (nonnegative) minimum exponent; pad
            // the low end so index k really is the coefficient of t^k
            let lo = self.num.min_exp().unwrap() + s as i64;
            let mut v = vec![poly::ZERO; lo as usize];
            v.extend(n_dense);
            v
        };
        let mut d_full = vec![poly::ZERO; s];
        d_full.extend(dd.iter().copied());

        let (q, r) = poly::div_rem(&n_full, &d_full);

        let mut d_out = dd.clone();
        for z in &inside {
            d_out = poly::deflate(&d_out, *z);
        }
        let din_deg = s + inside.len();
        let dout_deg = d_out.len().saturating_sub(1);

        if din_deg == 0 {
            return Ok((self.clone(), Self::zero()));
        }

        let d_in_poly = poly::from_roots(&inside, cx(1.0, 0.0));
        let mut d_in_full = vec![poly::ZERO; s];
        d_in_full.extend(d_in_poly.iter().copied());

        let (a_in, a_out) = if dout_deg == 0 {
            // denominator is (t^s * inside factors) times a constant
            let c0 = d_out[0];
            let scaled: Vec<Complex64> = r.iter().map(|&v| v / c0).collect();
            (scaled, Vec::new())
        } else {
            solve_split(&r, &d_in_full, &d_out, din_deg, dout_deg)?
        };

        let plus_num = {
            let qd = poly::mul(&q, &d_out);
            let mut v = vec![poly::ZERO; qd.len().max(a_out.len())];
            for (k, &c) in qd.iter().enumerate() {
                v[k] += c;
            }
            for (k, &c) in a_out.iter().enumerate() {
                v[k] += c;
            }
            v
        };
        let plus = Self::normalized(
            LaurentPoly::from_dense(&plus_num, 0),
            LaurentPoly::from_dense(&d_out, 0),
        )?;
        let minus = Self::normalized(
            LaurentPoly::from_dense(&a_in, 0),
            LaurentPoly::from_dense(&d_in_full, 0),
        )?;
        Ok((plus, minus))
    }

    /// Taylor coefficients `c_0 .. c_{n-1}` of a symbol with nonnegative
    /// Fourier support.
    pub fn taylor_coeffs(&self, n: usize) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Ok(vec![cx(0.0, 0.0); n]);
        }
        let nmin = self.num.min_exp().unwrap();
        if nmin < 0 {
            return Err(Error::NotHardy(
                "Taylor expansion of a function with negative Fourier support".into(),
            ));
        }
        let dd = self.den.dense();
        let d0 = dd[0];
        let mut out = vec![cx(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = self.num.coeff(k as i64);
            for j in 1..dd.len().min(k + 1) {
                acc -= dd[j] * out[k - j];
            }
            out[k] = acc / d0;
        }
        Ok(out)
    }

    /// Fourier coefficients on the inclusive exponent range
    /// `[k_min, k_max]`, computed through the pole split and power-series
    /// recurrences (no quadrature).
    pub fn fourier_coeffs(&self, k_min: i64, k_max: i64) -> Result<Vec<Complex64>> {
        if k_min > k_max {
            return Err(Error::InvalidSymbol("empty coefficient range".into()));
        }
        let (plus, minus) = self.pole_split()?;
        let len = (k_max - k_min + 1) as usize;
        let mut out = vec![cx(0.0, 0.0); len];
        if k_max >= 0 {
            let taylor = plus.taylor_coeffs(k_max as usize + 1)?;
            for k in 0..=k_max {
                if k >= k_min {
                    out[(k - k_min) as usize] = taylor[k as usize];
                }
            }
        }
        if k_min < 0 && !minus.is_zero() {
            // coefficient of t^{-j} in `minus` is the j-th Taylor
            // coefficient of its reflection
            let reflected = minus.tilde();
            let taylor = reflected.taylor_coeffs((-k_min) as usize + 1)?;
            for k in k_min..=k_max.min(-1) {
                out[(k - k_min) as usize] = taylor[(-k) as usize];
            }
        }
        Ok(out)
    }

    /// Maximum pole magnitude reciprocal: `max 1/|z|` over denominator
    /// roots, zero for polynomials. Used for truncation tail estimates.
    pub fn pole_decay_ratio(&self) -> Result<f64> {
        let dd = self.den.dense();
        if dd.len() <= 1 {
            return Ok(0.0);
        }
        let roots = all_roots(&dd)?;
        Ok(roots.iter().map(|r| 1.0 / r.norm()).fold(0.0, f64::max))
    }
}

/// Solves `r = a_in * d_out + a_out * d_in` for the partial-fraction
/// split, where `deg a_in < din_deg` and `deg a_out < dout_deg`.
fn solve_split(
    r: &[Complex64],
    d_in_full: &[Complex64],
    d_out: &[Complex64],
    din_deg: usize,
    dout_deg: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    use nalgebra::{DMatrix, DVector};
    let m = din_deg + dout_deg;
    let mut mat = DMatrix::<Complex64>::zeros(m, m);
    for j in 0..din_deg {
        for (k, &c) in d_out.iter().enumerate() {
            if j + k < m {
                mat[(j + k, j)] = c;
            }
        }
    }
    for j in 0..dout_deg {
        for (k, &c) in d_in_full.iter().enumerate() {
            if j + k < m {
                mat[(j + k, din_deg + j)] = c;
            }
        }
    }
    let mut rhs = DVector::<Complex64>::zeros(m);
    for (k, &c) in r.iter().enumerate() {
        if k < m {
            rhs[k] = c;
        }
    }
    let solution = mat
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("singular partial-fraction system".into()))?;
    let a_in = (0..din_deg).map(|j| solution[j]).collect();
    let a_out = (0..dout_deg).map(|j| solution[din_deg + j]).collect();
    Ok((a_in, a_out))
}

impl Mul for &RationalSymbol {
    type Output = RationalSymbol;
    fn mul(self, rhs: &RationalSymbol) -> RationalSymbol {
        RationalSymbol::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Add for &RationalSymbol {
    type Output = RationalSymbol;
    fn add(self, rhs: &RationalSymbol) -> RationalSymbol {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalSymbol::normalized(num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Sub for &RationalSymbol {
    type Output = RationalSymbol;
    fn sub(self, rhs: &RationalSymbol) -> RationalSymbol {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalSymbol::normalized(num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Neg for &RationalSymbol {
    type Output = RationalSymbol;
    fn neg(self) -> RationalSymbol {
        RationalSymbol { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Largest `|x(t)|` over `samples` equispaced circle points.
pub fn sup_circle_abs(x: &RationalSymbol, samples: usize) -> Result<f64> {
    let mut sup = 0.0f64;
    for j in 0..samples {
        let th = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let t = Complex64::from_polar(1.0, th);
        sup = sup.max(x.eval(t)?.norm());
    }
    Ok(sup)
}

/// Largest `|x(t) - y(t)|` over `samples` equispaced circle points.
pub fn sup_circle_diff(x: &RationalSymbol, y: &RationalSymbol, samples: usize) -> Result<f64> {
    let mut sup = 0.0f64;
    for j in 0..samples {
        let th = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let t = Complex64::from_polar(1.0, th);
        sup = sup.max((x.eval(t)? - y.eval(t)?).norm());
    }
    Ok(sup)
}

/// A rational element of the Hardy space: nonnegative Fourier support and
/// all poles strictly outside the closed unit disc.
#[derive(Clone, Debug)]
pub struct HardyFunction {
    sym: RationalSymbol,
}

impl HardyFunction {
    /// Validates and wraps a rational symbol.
    pub fn new(sym: RationalSymbol) -> Result<Self> {
        Self::validate(&sym)?;
        Ok(Self { sym })
    }

    fn validate(sym: &RationalSymbol) -> Result<()> {
        if sym.is_zero() {
            return Ok(());
        }
        if sym.num().min_exp().unwrap() < 0 {
            return Err(Error::NotHardy("negative Fourier support".into()));
        }
        let dd = sym.den().dense();
        if dd.len() > 1 {
            for r in all_roots(&dd)? {
                if r.norm() <= 1.0 + tol::DELTA_CIRCLE {
                    return Err(Error::NotHardy(format!("pole at {r} inside or on the circle")));
                }
            }
        }
        Ok(())
    }

    /// Wraps a symbol that is Hardy by construction.
    pub(crate) fn unchecked(sym: RationalSymbol) -> Self {
        debug_assert!(Self::validate(&sym).is_ok(), "unchecked Hardy violation: {sym}");
        Self { sym }
    }

    /// The zero function.
    pub fn zero() -> Self {
        Self { sym: RationalSymbol::zero() }
    }

    /// Borrow the underlying symbol.
    pub fn symbol(&self) -> &RationalSymbol {
        &self.sym
    }

    /// Unwraps the underlying symbol.
    pub fn into_symbol(self) -> RationalSymbol {
        self.sym
    }

    /// True for the zero function.
    pub fn is_zero(&self) -> bool {
        self.sym.is_zero()
    }

    /// Scalar multiple.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self { sym: self.sym.scaled(s) }
    }

    /// First `n` Taylor coefficients.
    pub fn taylor_coeffs(&self, n: usize) -> Vec<Complex64> {
        self.sym.taylor_coeffs(n).expect("Hardy functions have a Taylor expansion")
    }
}

impl Add for &HardyFunction {
    type Output = HardyFunction;
    fn add(self, rhs: &HardyFunction) -> HardyFunction {
        HardyFunction::unchecked(&self.sym + &rhs.sym)
    }
}

impl Sub for &HardyFunction {
    type Output = HardyFunction;
    fn sub(self, rhs: &HardyFunction) -> HardyFunction {
        HardyFunction::unchecked(&self.sym - &rhs.sym)
    }
}

impl fmt::Display for HardyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sym)
    }
}

/// Toeplitz action `T(g) f = P(g f)` on a rational Hardy function.
pub fn apply_toeplitz(g: &RationalSymbol, f: &HardyFunction) -> Result<HardyFunction> {
    let (plus, _) = (g * f.symbol()).pole_split()?;
    Ok(HardyFunction::unchecked(plus))
}

/// Hankel action `H(g) f = P(g Q J f)`; for Hardy `f` the flip already
/// lands in the negative-support subspace, so this is `P(g * flip f)`.
pub fn apply_hankel(g: &RationalSymbol, f: &HardyFunction) -> Result<HardyFunction> {
    let (plus, _) = (g * &f.symbol().flip()).pole_split()?;
    Ok(HardyFunction::unchecked(plus))
}

/// The involution ingredient `J Q g P` applied to a Hardy function:
/// project `g f` onto negative support, then flip back.
pub fn apply_jqgp(g: &RationalSymbol, f: &HardyFunction) -> Result<HardyFunction> {
    let (_, minus) = (g * f.symbol()).pole_split()?;
    Ok(HardyFunction::unchecked(minus.flip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(terms: &[(i64, f64, f64)]) -> RationalSymbol {
        RationalSymbol::from_laurent(LaurentPoly::from_terms(
            terms.iter().map(|&(k, re, im)| (k, cx(re, im))),
        ))
    }

    fn rational(num: &[(i64, f64, f64)], den: &[(i64, f64, f64)]) -> RationalSymbol {
        RationalSymbol::new(
            LaurentPoly::from_terms(num.iter().map(|&(k, re, im)| (k, cx(re, im)))),
            LaurentPoly::from_terms(den.iter().map(|&(k, re, im)| (k, cx(re, im)))),
        )
        .unwrap()
    }

    /// 64-point trapezoid quadrature of the k-th Fourier coefficient;
    /// independent oracle for the partial-fraction route.
    fn fourier_quadrature(x: &RationalSymbol, k: i64, n: usize) -> Complex64 {
        let mut acc = cx(0.0, 0.0);
        for j in 0..n {
            let th = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let t = Complex64::from_polar(1.0, th);
            acc += x.eval(t).unwrap() * Complex64::from_polar(1.0, -th * k as f64);
        }
        acc / n as f64
    }

    #[test]
    fn eval_example() {
        // (t - 1/2) / (t/2 - 1) at t = 1 equals -1
        let x = rational(&[(0, -0.5, 0.0), (1, 1.0, 0.0)], &[(0, -1.0, 0.0), (1, 0.5, 0.0)]);
        let v = x.eval(cx(1.0, 0.0)).unwrap();
        assert!((v - cx(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_at_pole_fails() {
        let x = rational(&[(0, 1.0, 0.0)], &[(0, -2.0, 0.0), (1, 1.0, 0.0)]);
        assert!(matches!(x.eval(cx(2.0, 0.0)), Err(Error::PoleAtEvaluationPoint)));
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (t - 1/2)(t - 3) / (t - 3) reduces to t - 1/2
        let num = LaurentPoly::from_dense(
            &poly::from_roots(&[cx(0.5, 0.0), cx(3.0, 0.0)], cx(1.0, 0.0)),
            0,
        );
        let den = LaurentPoly::from_dense(&poly::from_roots(&[cx(3.0, 0.0)], cx(1.0, 0.0)), 0);
        let x = RationalSymbol::new(num, den).unwrap();
        assert_eq!(x.den(), &LaurentPoly::one());
        assert!((x.num().coeff(1) - cx(1.0, 0.0)).norm() < 1e-12);
        assert!((x.num().coeff(0) - cx(-0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pole_split_laurent_polynomial() {
        // t + 5 + t^-1 -> plus = t + 5, minus = t^-1
        let x = sym(&[(1, 1.0, 0.0), (0, 5.0, 0.0), (-1, 1.0, 0.0)]);
        let (plus, minus) = x.pole_split().unwrap();
        assert!(sup_circle_diff(&plus, &sym(&[(1, 1.0, 0.0), (0, 5.0, 0.0)]), 32).unwrap() < 1e-12);
        assert!(sup_circle_diff(&minus, &sym(&[(-1, 1.0, 0.0)]), 32).unwrap() < 1e-12);
    }

    #[test]
    fn pole_split_partial_fractions() {
        // 1 / ((t - 1/2)(t - 2)); residues give
        // minus = (-2/3)/(t - 1/2), plus = (2/3)/(t - 2)
        let den = LaurentPoly::from_dense(
            &poly::from_roots(&[cx(0.5, 0.0), cx(2.0, 0.0)], cx(1.0, 0.0)),
            0,
        );
        let x = RationalSymbol::new(LaurentPoly::one(), den).unwrap();
        let (plus, minus) = x.pole_split().unwrap();
        let expect_plus = rational(&[(0, 2.0 / 3.0, 0.0)], &[(0, -2.0, 0.0), (1, 1.0, 0.0)]);
        let expect_minus = rational(&[(0, -2.0 / 3.0, 0.0)], &[(0, -0.5, 0.0), (1, 1.0, 0.0)]);
        assert!(sup_circle_diff(&plus, &expect_plus, 64).unwrap() < 1e-12);
        assert!(sup_circle_diff(&minus, &expect_minus, 64).unwrap() < 1e-12);
        // reconstruction
        let back = &plus + &minus;
        assert!(sup_circle_diff(&back, &x, 64).unwrap() < 1e-12);
    }

    #[test]
    fn pole_split_refuses_circle_pole() {
        let den = LaurentPoly::from_dense(&poly::from_roots(&[cx(1.0, 0.0)], cx(1.0, 0.0)), 0);
        let x = RationalSymbol::new(LaurentPoly::one(), den).unwrap();
        assert!(matches!(x.pole_split(), Err(Error::PoleOnCircle)));
    }

    #[test]
    fn fourier_coeffs_outside_pole() {
        // 1/(t-2) on [0,2] = [-1/2, -1/4, -1/8]
        let x = rational(&[(0, 1.0, 0.0)], &[(0, -2.0, 0.0), (1, 1.0, 0.0)]);
        let got = x.fourier_coeffs(0, 2).unwrap();
        let expect = [-0.5, -0.25, -0.125];
        for (g, e) in got.iter().zip(expect) {
            assert!((g - cx(e, 0.0)).norm() < tol::EPS_SERIES);
        }
        for k in 0..3 {
            let q = fourier_quadrature(&x, k, 64);
            assert!((got[k as usize] - q).norm() < 1e-9, "quadrature oracle disagrees");
        }
        // negative side is empty
        let neg = x.fourier_coeffs(-3, -1).unwrap();
        for v in neg {
            assert!(v.norm() < tol::EPS_SERIES);
        }
    }

    #[test]
    fn fourier_coeffs_inside_pole() {
        // 1/(t-1/2) on [-3,-1] = [1/4, 1/2, 1]
        let x = rational(&[(0, 1.0, 0.0)], &[(0, -0.5, 0.0), (1, 1.0, 0.0)]);
        let got = x.fourier_coeffs(-3, -1).unwrap();
        let expect = [0.25, 0.5, 1.0];
        for (g, e) in got.iter().zip(expect) {
            assert!((g - cx(e, 0.0)).norm() < tol::EPS_SERIES);
        }
        for (i, k) in (-3i64..0).enumerate() {
            let q = fourier_quadrature(&x, k, 64);
            assert!((got[i] - q).norm() < 1e-9, "quadrature oracle disagrees");
        }
        let pos = x.fourier_coeffs(0, 4).unwrap();
        for v in pos {
            assert!(v.norm() < tol::EPS_SERIES);
        }
    }

    #[test]
    fn fourier_coeffs_of_laurent_polynomial_are_literal() {
        let x = sym(&[(0, 2.0, 0.0), (1, 1.0, 0.0)]);
        let got = x.fourier_coeffs(-2, 2).unwrap();
        let expect = [0.0, 0.0, 2.0, 1.0, 0.0];
        for (g, e) in got.iter().zip(expect) {
            assert!((g - cx(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn flip_is_an_involution() {
        let x = rational(
            &[(0, 1.0, 0.5), (2, -0.3, 0.0)],
            &[(0, -3.0, 0.0), (1, 1.0, 0.0)],
        );
        let back = x.flip().flip();
        assert!(sup_circle_diff(&back, &x, 64).unwrap() < 1e-12);
    }

    #[test]
    fn flip_exchanges_indices() {
        // coefficient k moves to -k-1
        let x = sym(&[(0, 1.0, 0.0), (2, 4.0, 0.0)]);
        let f = x.flip();
        let got = f.fourier_coeffs(-4, 0).unwrap();
        assert!((got[3] - cx(1.0, 0.0)).norm() < 1e-14); // index -1
        assert!((got[1] - cx(4.0, 0.0)).norm() < 1e-14); // index -3
    }

    #[test]
    fn hardy_validation() {
        let good = rational(&[(0, 1.0, 0.0)], &[(0, -2.0, 0.0), (1, 1.0, 0.0)]);
        assert!(HardyFunction::new(good).is_ok());
        let bad_pole = rational(&[(0, 1.0, 0.0)], &[(0, -0.5, 0.0), (1, 1.0, 0.0)]);
        assert!(matches!(HardyFunction::new(bad_pole), Err(Error::NotHardy(_))));
        let bad_support = sym(&[(-1, 1.0, 0.0)]);
        assert!(matches!(HardyFunction::new(bad_support), Err(Error::NotHardy(_))));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn toeplitz_hankel_match_matrix_action() {
        // operator route vs literal matrix sums for a Laurent symbol
        let g = sym(&[(-2, 0.5, 0.0), (-1, -1.0, 0.25), (0, 2.0, 0.0), (1, 1.0, -0.5), (3, 0.1, 0.0)]);
        let f = HardyFunction::new(rational(
            &[(0, 1.0, 0.0), (1, 0.5, -0.5)],
            &[(0, -2.0, 0.0), (1, 1.0, 0.0)],
        ))
        .unwrap();
        let n = 32usize;
        let kmax = n as i64 + 4;
        let fc = f.symbol().fourier_coeffs(0, kmax).unwrap();
        let gc = g.fourier_coeffs(-(kmax + 1), kmax + 1).unwrap();
        let gcoef = |k: i64| gc[(k + kmax + 1) as usize];

        let tges = apply_toeplitz(&g, &f).unwrap();
        let tc = tges.symbol().fourier_coeffs(0, n as i64 - 1).unwrap();
        for j in 0..n {
            let mut acc = cx(0.0, 0.0);
            for k in 0..=(kmax as usize) {
                acc += gcoef(j as i64 - k as i64) * fc[k];
            }
            assert!((tc[j] - acc).norm() < 1e-10, "Toeplitz row {j}");
        }

        let hres = apply_hankel(&g, &f).unwrap();
        let hc = hres.symbol().fourier_coeffs(0, n as i64 - 1).unwrap();
        for j in 0..n {
            let mut acc = cx(0.0, 0.0);
            for k in 0..=(kmax as usize) {
                let idx = j as i64 + k as i64 + 1;
                if idx <= kmax + 1 {
                    acc += gcoef(idx) * fc[k];
                }
            }
            assert!((hc[j] - acc).norm() < 1e-10, "Hankel row {j}");
        }
    }

    #[test]
    fn hankel_toeplitz_shift_product_vanishes() {
        // H(t^n) T(t^n) = 0
        let f = HardyFunction::new(rational(
            &[(0, 0.3, 0.1), (2, 1.0, 0.0)],
            &[(0, -1.7, 0.2), (1, 1.0, 0.0)],
        ))
        .unwrap();
        for n in 1..=3 {
            let tn = RationalSymbol::monomial(n, cx(1.0, 0.0));
            let tf = apply_toeplitz(&tn, &f).unwrap();
            let hf = apply_hankel(&tn, &tf).unwrap();
            if !hf.is_zero() {
                assert!(sup_circle_abs(hf.symbol(), 64).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn toeplitz_product_identity() {
        // T(a1 a2) = T(a1) T(a2) + H(a1) H(a2 tilde)
        let a1 = rational(&[(0, 2.0, 0.0), (1, 1.0, 0.3), (-1, 0.2, 0.0)], &[(0, 1.0, 0.0)]);
        let a2 = rational(&[(0, 1.0, -0.2), (2, 0.5, 0.0), (-1, -0.4, 0.1)], &[(0, 1.0, 0.0)]);
        let f = HardyFunction::new(rational(
            &[(0, 1.0, 0.0), (1, -0.6, 0.4)],
            &[(0, 2.4, -0.3), (1, 1.0, 0.0)],
        ))
        .unwrap();
        let lhs = apply_toeplitz(&(&a1 * &a2), &f).unwrap();
        let t2 = apply_toeplitz(&a2, &f).unwrap();
        let part1 = apply_toeplitz(&a1, &t2).unwrap();
        let h2 = apply_hankel(&a2.tilde(), &f).unwrap();
        let part2 = apply_hankel(&a1, &h2).unwrap();
        let rhs = &part1 + &part2;
        assert!(
            sup_circle_diff(lhs.symbol(), rhs.symbol(), 64).unwrap() < 1e-9,
            "product identity violated"
        );
    }

    #[test]
    fn jqgp_squares_to_identity_on_toeplitz_kernel() {
        // g = t^-2: kernel of T(g) contains 1 and t; JQgP must be an
        // involution there
        let g = sym(&[(-2, 1.0, 0.0)]);
        for f0 in [
            HardyFunction::new(sym(&[(0, 1.0, 0.0)])).unwrap(),
            HardyFunction::new(sym(&[(1, 1.0, 0.0)])).unwrap(),
            HardyFunction::new(sym(&[(0, 0.3, -1.0), (1, 2.0, 0.5)])).unwrap(),
        ] {
            let once = apply_jqgp(&g, &f0).unwrap();
            let twice = apply_jqgp(&g, &once).unwrap();
            assert!(sup_circle_diff(twice.symbol(), f0.symbol(), 32).unwrap() < 1e-12);
        }
    }

    #[test]
    fn taylor_matches_quadrature_on_random_hardy() {
        let x = rational(
            &[(0, 0.7, -0.1), (1, 1.0, 0.0), (3, -0.2, 0.4)],
            &[(0, 2.0, 0.5), (1, -0.3, 0.0), (2, 1.0, 0.0)],
        );
        if HardyFunction::new(x.clone()).is_ok() {
            let t = x.taylor_coeffs(6).unwrap();
            for (k, &v) in t.iter().enumerate() {
                let q = fourier_quadrature(&x, k as i64, 256);
                assert!((v - q).norm() < 1e-8);
            }
        }
    }
}
