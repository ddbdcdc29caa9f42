//! Report structures shared by all command modes, their canonical JSON
//! rendering, and the human-readable printer.
//!
//! JSON is emitted with a fixed key order (struct declaration order)
//! and `%.17g` float formatting, so a parsed report re-serializes to
//! byte-identical text.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use tph_core::{HardyFunction, PcSymbolSpec, SymbolSpec};

/// Number of Taylor coefficients emitted per basis function in JSON.
pub const TAYLOR_JSON: usize = 16;

/// Number of Taylor coefficients shown per basis function in text.
pub const TAYLOR_HUMAN: usize = 8;

/// Echo of the parsed request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RequestEcho {
    /// Command mode name.
    pub mode: String,
    /// Rational Toeplitz symbol, when the mode takes one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<SymbolSpec>,
    /// Rational Hankel symbol, when the mode takes one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<SymbolSpec>,
    /// Piecewise-constant Toeplitz symbol (pc-check mode).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pc_a: Option<PcSymbolSpec>,
    /// Piecewise-constant Hankel symbol (pc-check mode).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pc_b: Option<PcSymbolSpec>,
    /// Requested operator sign: "+", "-", or "both".
    pub sign: String,
    /// Finite-section size.
    pub n: usize,
    /// Hardy exponent.
    pub p: f64,
    /// Exponent list of a requested sweep.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_sweep: Option<Vec<f64>>,
}

/// Subordinated pair echo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubordinatedJson {
    /// First subordinated symbol `a/b`.
    pub c: SymbolSpec,
    /// Second subordinated symbol `b/tilde(a)`.
    pub d: SymbolSpec,
}

/// One basis function: rational coefficient data plus a Taylor prefix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisFnJson {
    /// Numerator triples `[k, re, im]`.
    pub num: Vec<(i64, f64, f64)>,
    /// Denominator triples `[k, re, im]`.
    pub den: Vec<(i64, f64, f64)>,
    /// First Taylor coefficients as `[re, im]` pairs.
    pub taylor: Vec<(f64, f64)>,
}

impl BasisFnJson {
    /// Serializes a Hardy function.
    pub fn from_hardy(f: &HardyFunction) -> Self {
        let (num, den) = match SymbolSpec::from_symbol(f.symbol()) {
            SymbolSpec::Laurent(ts) => (ts, vec![(0, 1.0, 0.0)]),
            SymbolSpec::Rational { num, den } => (num, den),
        };
        let taylor = f
            .taylor_coeffs(TAYLOR_JSON)
            .iter()
            .map(|c| (c.re, c.im))
            .collect();
        BasisFnJson { num, den, taylor }
    }
}

/// Finite-section comparison attached to one operator sign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    /// Kernel dimension seen by the SVD at the final size.
    pub numeric_kernel_dim: usize,
    /// Singular values at the final size, descending.
    pub singular_values: Vec<f64>,
    /// Relative residuals of the analytic basis vectors.
    pub residuals: Vec<(usize, f64)>,
    /// Whether dimension and residuals match the analytic data.
    pub agrees_with_analytic: bool,
    /// Final section size.
    pub n_used: usize,
    /// All section sizes tried.
    pub sizes_tried: Vec<usize>,
}

impl OracleJson {
    /// Converts a finished comparison.
    pub fn from_comparison(c: &tph_core::OracleComparison) -> Self {
        OracleJson {
            numeric_kernel_dim: c.report.numeric_kernel_dim,
            singular_values: c.report.singular_values.clone(),
            residuals: c.report.residuals.clone(),
            agrees_with_analytic: c.report.agrees_with_analytic,
            n_used: c.n_used,
            sizes_tried: c.sizes_tried.clone(),
        }
    }
}

/// Kernel data for one operator sign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignResultJson {
    /// Operator sign, "+" or "-".
    pub sign: String,
    /// Structural branch that produced the kernel.
    pub branch: String,
    /// Kernel basis.
    pub kernel: Vec<BasisFnJson>,
    /// Cokernel basis.
    pub cokernel: Vec<BasisFnJson>,
    /// Kernel dimension.
    pub dim_ker: usize,
    /// Cokernel dimension.
    pub dim_coker: usize,
    /// `dim_ker - dim_coker`.
    pub index: i64,
    /// Basis family sizes `[projection part, transported part]`.
    pub contributions: (usize, usize),
    /// Finite-section check of the kernel side.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleJson>,
    /// Finite-section check of the cokernel side.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cokernel_oracle: Option<OracleJson>,
}

/// Wiener-Hopf factorization data (factorize mode).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationJson {
    /// Outer factor, value one at infinity.
    pub g_minus: SymbolSpec,
    /// Monomial exponent between the factors.
    pub index: i64,
    /// Inner factor; absorbs all constants.
    pub g_plus: SymbolSpec,
    /// `g_plus(0)` rounded onto a sign when close to one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<i64>,
}

/// A grid point where a piecewise-constant minimum is attained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcWitnessJson {
    /// "matrix-det" or "scalar".
    pub kind: String,
    /// Circle point angle.
    pub angle: f64,
    /// Line parameter; `null` when the minimum sits at an infinity.
    pub y: Option<f64>,
    /// Modulus attained.
    pub modulus: f64,
}

/// Piecewise-constant verdict at one exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcReportJson {
    /// Hardy exponent.
    pub p: f64,
    /// Verdict.
    pub is_fredholm: bool,
    /// Smallest 2x2 determinant modulus.
    pub min_matrix_det_modulus: f64,
    /// Smallest scalar-condition modulus.
    pub min_scalar_modulus: f64,
    /// Argmin points, one per condition.
    pub witnesses: Vec<PcWitnessJson>,
}

/// Piecewise-constant results for one operator sign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcSignJson {
    /// Operator sign, "+" or "-".
    pub sign: String,
    /// One verdict per requested exponent.
    pub reports: Vec<PcReportJson>,
    /// Adjacent exponent pairs with differing verdicts.
    pub critical_candidates: Vec<(f64, f64)>,
}

impl PcSignJson {
    /// Converts a finished sweep.
    pub fn from_sweep(sign: &str, sweep: &tph_core::PcSweep) -> Self {
        let reports = sweep
            .reports
            .iter()
            .map(|r| PcReportJson {
                p: r.p,
                is_fredholm: r.is_fredholm,
                min_matrix_det_modulus: r.min_matrix_det_modulus,
                min_scalar_modulus: r.min_scalar_modulus,
                witnesses: r
                    .witnesses
                    .iter()
                    .map(|w| PcWitnessJson {
                        kind: match w.kind {
                            tph_core::PcConditionKind::MatrixDet => "matrix-det".to_string(),
                            tph_core::PcConditionKind::Scalar => "scalar".to_string(),
                        },
                        angle: w.angle,
                        y: w.y.is_finite().then_some(w.y),
                        modulus: w.modulus,
                    })
                    .collect(),
            })
            .collect();
        PcSignJson {
            sign: sign.to_string(),
            reports,
            critical_candidates: sweep.critical_candidates.clone(),
        }
    }
}

/// Top-level report document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Echo of the parsed request.
    pub request: RequestEcho,
    /// Machine-readable failure description.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Whether the pair satisfies the matching condition.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matching: Option<bool>,
    /// Subordinated pair.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subordinated: Option<SubordinatedJson>,
    /// Index of `T(c)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa1: Option<i64>,
    /// Index of `T(d)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa2: Option<i64>,
    /// Factorization signature of `c`, when it rounds to a sign.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma_c: Option<i64>,
    /// Factorization signature of `d`, when it rounds to a sign.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma_d: Option<i64>,
    /// Factorization of a single symbol (factorize mode).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factorization: Option<FactorizationJson>,
    /// Signature of a single matching function (signature mode).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<i64>,
    /// Per-sign kernel results, "+" before "-".
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub results: Vec<SignResultJson>,
    /// Per-sign piecewise-constant results.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub pc: Vec<PcSignJson>,
    /// Non-fatal notes, such as finite-section retries.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl Report {
    /// An empty report carrying only the request echo.
    pub fn new(request: RequestEcho) -> Self {
        Report {
            request,
            error: None,
            matching: None,
            subordinated: None,
            kappa1: None,
            kappa2: None,
            sigma_c: None,
            sigma_d: None,
            factorization: None,
            sigma: None,
            results: Vec::new(),
            pc: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// `%.17g` rendering of a finite double: 17 significant digits,
/// trailing zeros stripped, scientific notation outside `[1e-4, 1e17)`.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".to_string()
        } else {
            "0".to_string()
        };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("scientific float format");
    let exp: i32 = exp.parse().expect("float exponent");
    if !(-4..17).contains(&exp) {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!(
            "{mant}e{}{:02}",
            if exp < 0 { '-' } else { '+' },
            exp.unsigned_abs()
        )
    } else {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

/// JSON formatter that renders every float through [`g17`].
#[derive(Default)]
pub struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(g17(value).as_bytes())
    }
}

/// Canonical JSON text of any report value.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serializer emits utf-8")
}

fn push_complex(out: &mut String, re: f64, im: f64) {
    if im == 0.0 {
        let _ = write!(out, "{re}");
    } else if re == 0.0 {
        let _ = write!(out, "{im}i");
    } else if im < 0.0 {
        let _ = write!(out, "({re}{im}i)");
    } else {
        let _ = write!(out, "({re}+{im}i)");
    }
}

fn coeff_list(ts: &[(i64, f64, f64)]) -> String {
    if ts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, &(k, re, im)) in ts.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "t^{k}: ");
        push_complex(&mut out, re, im);
    }
    out
}

fn push_basis(out: &mut String, label: &str, fns: &[BasisFnJson]) {
    for (i, f) in fns.iter().enumerate() {
        let _ = writeln!(out, "    {label}[{i}] num: [{}]", coeff_list(&f.num));
        let _ = writeln!(out, "    {label}[{i}] den: [{}]", coeff_list(&f.den));
        let mut taylor = String::new();
        for (j, &(re, im)) in f.taylor.iter().take(TAYLOR_HUMAN).enumerate() {
            if j > 0 {
                taylor.push_str(", ");
            }
            push_complex(&mut taylor, re, im);
        }
        let _ = writeln!(out, "    {label}[{i}] taylor: [{taylor}]");
    }
}

fn symbol_text(spec: &SymbolSpec) -> String {
    match spec {
        SymbolSpec::Laurent(ts) => format!("[{}]", coeff_list(ts)),
        SymbolSpec::Rational { num, den } => {
            format!("[{}] / [{}]", coeff_list(num), coeff_list(den))
        }
    }
}

/// Multi-line human-readable rendering of a report.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    let req = &report.request;
    let _ = writeln!(out, "mode: {} (sign {}, N = {})", req.mode, req.sign, req.n);
    if let Some(err) = &report.error {
        let _ = writeln!(out, "error: {err}");
        return out;
    }
    if let Some(m) = report.matching {
        let _ = writeln!(out, "matching pair: {}", if m { "yes" } else { "no" });
    }
    if let Some(sub) = &report.subordinated {
        let _ = writeln!(out, "subordinated c: {}", symbol_text(&sub.c));
        let _ = writeln!(out, "subordinated d: {}", symbol_text(&sub.d));
    }
    if let (Some(k1), Some(k2)) = (report.kappa1, report.kappa2) {
        let _ = writeln!(out, "indices: kappa1 = {k1}, kappa2 = {k2}");
    }
    if let Some(s) = report.sigma_c {
        let _ = writeln!(out, "sigma(c) = {s:+}");
    }
    if let Some(s) = report.sigma_d {
        let _ = writeln!(out, "sigma(d) = {s:+}");
    }
    if let Some(f) = &report.factorization {
        let _ = writeln!(out, "g_minus: {}", symbol_text(&f.g_minus));
        let _ = writeln!(out, "monomial exponent: {}", f.index);
        let _ = writeln!(out, "g_plus: {}", symbol_text(&f.g_plus));
        if let Some(s) = f.sigma {
            let _ = writeln!(out, "sigma: {s:+}");
        }
    }
    if let Some(s) = report.sigma {
        let _ = writeln!(out, "signature: {s:+}");
    }
    for r in &report.results {
        let _ = writeln!(
            out,
            "sign {}: branch {}, dim ker = {}, dim coker = {}, index = {}",
            r.sign, r.branch, r.dim_ker, r.dim_coker, r.index
        );
        push_basis(&mut out, "kernel", &r.kernel);
        push_basis(&mut out, "cokernel", &r.cokernel);
        for (name, o) in [("kernel", &r.oracle), ("cokernel", &r.cokernel_oracle)] {
            if let Some(o) = o {
                let _ = writeln!(
                    out,
                    "    oracle ({name}): dim = {}, agrees = {}, N = {}",
                    o.numeric_kernel_dim, o.agrees_with_analytic, o.n_used
                );
            }
        }
    }
    for p in &report.pc {
        let _ = writeln!(out, "pc sign {}:", p.sign);
        for r in &p.reports {
            let _ = writeln!(
                out,
                "    p = {}: fredholm = {}, min |det| = {:.3e}, min |scalar| = {:.3e}",
                r.p, r.is_fredholm, r.min_matrix_det_modulus, r.min_scalar_modulus
            );
        }
        for (lo, hi) in &p.critical_candidates {
            let _ = writeln!(out, "    verdict changes between p = {lo} and p = {hi}");
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
