//! Seeded random generators and assertion helpers shared by the
//! integration suites. Symbols are built from explicit root layouts so
//! winding numbers and circle margins are exact by construction.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tph_core::{analyze, winding_index, HardyFunction, LaurentPoly, RationalSymbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random point on the annulus `lo <= |z| <= hi`.
fn annulus_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    let r = rng.gen_range(lo..hi);
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, th)
}

/// Monic-times-unit polynomial with `n_in` roots well inside and
/// `n_out` roots well outside the unit circle, then shifted by `t^k0`.
///
/// The winding number along the circle is exactly `n_in + k0`.
pub fn poly_from_roots(rng: &mut ChaCha8Rng, n_in: usize, n_out: usize, k0: i64) -> LaurentPoly {
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut p = LaurentPoly::constant(Complex64::from_polar(1.0, phase));
    for _ in 0..n_in {
        let r = annulus_point(rng, 0.2, 0.7);
        p = &p * &LaurentPoly::from_terms([(0, -r), (1, cx(1.0, 0.0))]);
    }
    for _ in 0..n_out {
        let r = annulus_point(rng, 1.4, 2.8);
        p = &p * &LaurentPoly::from_terms([(0, -r), (1, cx(1.0, 0.0))]);
    }
    p.shifted(k0)
}

/// Random circle-clear rational symbol with winding number `w`,
/// `extra` additional zero/pole pairs that do not change the winding.
pub fn random_symbol(rng: &mut ChaCha8Rng, w: i64, extra: usize) -> RationalSymbol {
    let n_in = w.max(0) as usize;
    let k0 = w.min(0);
    let num = poly_from_roots(rng, n_in, extra, k0);
    let den = poly_from_roots(rng, 0, extra, 0);
    let sym = RationalSymbol::new(num, den).expect("denominator is nonzero by construction");
    debug_assert_eq!(winding_index(&sym).expect("circle-clear by construction"), w);
    sym
}

/// Random matching function `g = t^j h / tilde(h)` with winding `j`.
pub fn random_matching_function(rng: &mut ChaCha8Rng, j: i64, deg: usize) -> RationalSymbol {
    let h = poly_from_roots(rng, 0, deg, 0);
    let ht = h.tilde();
    let num = h.shifted(j);
    let sym = RationalSymbol::new(num, ht).expect("tilde of a nonzero polynomial is nonzero");
    debug_assert_eq!(winding_index(&sym).expect("circle-clear by construction"), j);
    sym
}

/// Random matching pair with prescribed subordinated indices.
///
/// `kappa1 + kappa2` must be even: the subordinated windings satisfy
/// `w(c) + w(d) = 2 w(a)` for every matching pair.
pub fn random_matching_pair(
    rng: &mut ChaCha8Rng,
    kappa1: i64,
    kappa2: i64,
) -> (RationalSymbol, RationalSymbol) {
    assert_eq!((kappa1 + kappa2) % 2, 0, "index sum must be even");
    let w_a = -(kappa1 + kappa2) / 2;
    let a = random_symbol(rng, w_a, 1);
    let c = random_matching_function(rng, -kappa1, 2);
    let b = a.div(&c).expect("matching functions are invertible");
    let m = analyze(&a, &b).expect("pair is matching by construction");
    assert_eq!((m.kappa1, m.kappa2), (kappa1, kappa2), "index targeting failed");
    (a, b)
}

/// Random Hardy function: a low-degree polynomial plus a few simple
/// poles outside the circle.
pub fn random_hardy(rng: &mut ChaCha8Rng, deg: usize, poles: usize) -> HardyFunction {
    let mut num = LaurentPoly::from_terms(
        (0..=deg as i64).map(|k| (k, cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
    );
    let mut den = LaurentPoly::one();
    for _ in 0..poles {
        let r = annulus_point(rng, 1.4, 2.8);
        den = &den * &LaurentPoly::from_terms([(0, -r), (1, cx(1.0, 0.0))]);
    }
    if num.is_zero() {
        num = LaurentPoly::one();
    }
    HardyFunction::new(RationalSymbol::new(num, den).expect("denominator nonzero"))
        .expect("poles outside the circle by construction")
}

/// Largest modulus of `x - y` over `samples` circle points.
pub fn circle_distance(x: &RationalSymbol, y: &RationalSymbol, samples: usize) -> f64 {
    tph_core::sup_circle_diff(x, y, samples).expect("operands are circle-clear")
}
