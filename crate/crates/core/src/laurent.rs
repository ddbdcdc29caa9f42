//! Laurent polynomials `sum_k c_k t^k` with complex coefficients and
//! finitely many nonzero terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::tol;

fn is_exact_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

/// A Laurent polynomial, stored as a sorted exponent-to-coefficient map.
///
/// The zero polynomial is the empty map; constructors and arithmetic trim
/// coefficients that are exactly zero, so stored coefficients are always
/// nonzero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !is_exact_zero(c) {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms, summing
    /// duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Builds a polynomial from dense ascending coefficients starting at
    /// exponent `min_exp`.
    pub fn from_dense(coeffs: &[Complex64], min_exp: i64) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (min_exp + i as i64, c)),
        )
    }

    fn add_term(&mut self, k: i64, c: Complex64) {
        use std::collections::btree_map::Entry;
        if is_exact_zero(c) {
            return;
        }
        match self.coeffs.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if is_exact_zero(v) {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k` (zero when absent).
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs
            .get(&k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Iterates over `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest coefficient magnitude (zero for the zero polynomial).
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Dense ascending coefficient vector from `min_exp` to `max_exp`.
    /// Returns an empty vector for the zero polynomial.
    pub fn dense(&self) -> Vec<Complex64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
                for (k, c) in self.terms() {
                    v[(k - lo) as usize] = c;
                }
                v
            }
            _ => Vec::new(),
        }
    }

    /// Evaluates at `t0`. Negative exponents require `t0 != 0`; the
    /// caller is responsible for that (rational evaluation checks poles).
    pub fn eval(&self, t0: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.terms() {
            acc += c * t0.powi(k as i32);
        }
        acc
    }

    /// Exponent reflection `p(t) -> p(1/t)`.
    pub fn tilde(&self) -> Self {
        Self {
            coeffs: self.terms().map(|(k, c)| (-k, c)).collect(),
        }
    }

    /// Coefficient conjugation with exponent reflection; this is the
    /// pointwise complex conjugate on the unit circle.
    pub fn conj_reflect(&self) -> Self {
        Self {
            coeffs: self.terms().map(|(k, c)| (-k, c.conj())).collect(),
        }
    }

    /// Coefficient conjugation keeping exponents.
    pub fn conj_coeffs(&self) -> Self {
        Self {
            coeffs: self.terms().map(|(k, c)| (k, c.conj())).collect(),
        }
    }

    /// Multiplies every exponent shift by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            coeffs: self.terms().map(|(e, c)| (e + k, c)).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    /// Drops coefficients below `tol::COEFF_DUST` relative to the largest
    /// one. Used to control degree inflation from floating point noise.
    pub(crate) fn dust_trimmed(&self) -> Self {
        let scale = self.max_coeff_norm();
        if scale == 0.0 {
            return self.clone();
        }
        let floor = scale * tol::COEFF_DUST;
        Self {
            coeffs: self
                .terms()
                .filter(|(_, c)| c.norm() > floor)
                .collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (j, cj) in self.terms() {
            for (k, ck) in rhs.terms() {
                out.add_term(j + k, cj * ck);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.terms().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}{}i)", c.re, c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_complex(c))?,
                1 if c == Complex64::new(1.0, 0.0) => write!(f, "t")?,
                1 => write!(f, "{} t", fmt_complex(c))?,
                _ if c == Complex64::new(1.0, 0.0) => write!(f, "t^{}", k)?,
                _ => write!(f, "{} t^{}", fmt_complex(c), k)?,
            }
        }
        Ok(())
    }
}
