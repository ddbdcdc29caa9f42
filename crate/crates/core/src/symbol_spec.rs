//! JSON literal format for symbols, shared with the command line front
//! end.
//!
//! A rational symbol is either a bare Laurent coefficient list,
//! `{"laurent": [[k, re, im], ...]}`, or a numerator/denominator pair,
//! `{"rational": {"num": [...], "den": [...]}}`, with the same triple
//! encoding in both places. A piecewise-constant symbol is an arc list,
//! `{"arcs": [[start_angle, re, im], ...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::pc::PcSymbol;
use crate::rational::RationalSymbol;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coefficient triple `[exponent, re, im]`.
pub type CoeffTriple = (i64, f64, f64);

/// JSON literal for a rational symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolSpec {
    /// Laurent polynomial, `{"laurent": [[k, re, im], ...]}`.
    Laurent(Vec<CoeffTriple>),
    /// Ratio of two Laurent polynomials.
    Rational {
        /// Numerator coefficient triples.
        num: Vec<CoeffTriple>,
        /// Denominator coefficient triples.
        den: Vec<CoeffTriple>,
    },
}

fn poly_from_triples(triples: &[CoeffTriple]) -> Result<LaurentPoly> {
    for &(k, re, im) in triples {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidSymbol(format!(
                "non-finite coefficient at exponent {k}"
            )));
        }
    }
    Ok(LaurentPoly::from_terms(
        triples.iter().map(|&(k, re, im)| (k, cx(re, im))),
    ))
}

fn triples_from_poly(p: &LaurentPoly) -> Vec<CoeffTriple> {
    p.terms().map(|(k, c)| (k, c.re, c.im)).collect()
}

impl SymbolSpec {
    /// Builds the rational symbol the literal denotes.
    pub fn to_symbol(&self) -> Result<RationalSymbol> {
        match self {
            SymbolSpec::Laurent(ts) => Ok(RationalSymbol::from_laurent(poly_from_triples(ts)?)),
            SymbolSpec::Rational { num, den } => {
                RationalSymbol::new(poly_from_triples(num)?, poly_from_triples(den)?)
            }
        }
    }

    /// Renders a symbol back into literal form, using the bare Laurent
    /// shape whenever the denominator is a single term.
    pub fn from_symbol(sym: &RationalSymbol) -> Self {
        let den = sym.den();
        if den.term_count() == 1 {
            let (k, c) = den.terms().next().unwrap();
            let folded = sym.num().shifted(-k).scaled(1.0 / c);
            SymbolSpec::Laurent(triples_from_poly(&folded))
        } else {
            SymbolSpec::Rational {
                num: triples_from_poly(sym.num()),
                den: triples_from_poly(den),
            }
        }
    }
}

/// JSON literal for a piecewise-constant symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcSymbolSpec {
    /// Arc triples `[start_angle, re, im]`, ordered by angle.
    pub arcs: Vec<(f64, f64, f64)>,
}

impl PcSymbolSpec {
    /// Builds the validated piecewise-constant symbol.
    pub fn to_symbol(&self) -> Result<PcSymbol> {
        PcSymbol::new(
            self.arcs
                .iter()
                .map(|&(angle, re, im)| (angle, cx(re, im)))
                .collect(),
        )
    }

    /// Renders a symbol back into literal form.
    pub fn from_symbol(sym: &PcSymbol) -> Self {
        PcSymbolSpec {
            arcs: sym
                .arcs()
                .iter()
                .map(|&(angle, v)| (angle, v.re, v.im))
                .collect(),
        }
    }
}
