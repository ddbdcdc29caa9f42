//! Argument parsing, mode dispatch and the exit-code contract.
//!
//! Exit codes: 0 success, 2 malformed input or a pair that fails the
//! matching condition, 3 a matching pair whose subordinated pair is not
//! Fredholm, 4 a finite-section check that still disagrees after the
//! retry ladder (oracle mode only), 1 anything else.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use tph_core::{
    adjoint_pair, analyze, factorize, kernel_cokernel, oracle_check, pc_p_sweep,
    section_null_count, signature, Error, OperatorSign, PcSymbol, PcSymbolSpec, RationalSymbol,
    Result, SymbolSpec,
};

use crate::report::{
    to_json, to_text, BasisFnJson, FactorizationJson, OracleJson, PcSignJson, Report,
    RequestEcho, SignResultJson, SubordinatedJson,
};

/// Kernel analysis of Toeplitz-plus-Hankel operators with rational and
/// piecewise-constant symbols.
#[derive(Parser)]
#[command(name = "tph", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pair analysis: matching check, subordinated pair, indices,
    /// kernel and cokernel bases, finite-section cross-check.
    Analyze(PairArgs),
    /// Weak Wiener-Hopf factorization of a single symbol.
    Factorize(SymbolArgs),
    /// Factorization signature of a single matching function.
    Signature(SymbolArgs),
    /// Kernel and cokernel bases only, no finite-section cross-check.
    Kernel(PairArgs),
    /// Finite-section cross-check; fails loudly when the numeric data
    /// still disagrees with the analytic bases at four times the
    /// requested section size.
    Oracle(PairArgs),
    /// Fredholm test for piecewise-constant symbols on H^p.
    PcCheck(PcArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    /// T(a) + H(b)
    Plus,
    /// T(a) - H(b)
    Minus,
    /// Both operators, reported "+" first.
    Both,
}

impl SignArg {
    fn echo(self) -> &'static str {
        match self {
            SignArg::Plus => "+",
            SignArg::Minus => "-",
            SignArg::Both => "both",
        }
    }

    fn operators(self) -> Vec<OperatorSign> {
        match self {
            SignArg::Plus => vec![OperatorSign::Plus],
            SignArg::Minus => vec![OperatorSign::Minus],
            SignArg::Both => vec![OperatorSign::Plus, OperatorSign::Minus],
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Print the report as a single JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    /// JSON file holding {"a": <symbol>, "b": <symbol>}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a", "b"])]
    pair: Option<PathBuf>,
    /// Toeplitz symbol as a JSON literal.
    #[arg(long, value_name = "SPEC")]
    a: Option<String>,
    /// Hankel symbol as a JSON literal.
    #[arg(long, value_name = "SPEC")]
    b: Option<String>,
    /// Which of the two operators to analyze.
    #[arg(long, value_enum, default_value_t = SignArg::Both)]
    sign: SignArg,
    /// Finite-section size.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Hardy exponent, echoed in the report.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SymbolArgs {
    /// Symbol as a JSON literal.
    #[arg(long, value_name = "SPEC")]
    a: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PcArgs {
    /// JSON file holding {"a": <arc list>, "b": <arc list>}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a", "b"])]
    pair: Option<PathBuf>,
    /// Toeplitz arc list as a JSON literal.
    #[arg(long, value_name = "SPEC")]
    a: Option<String>,
    /// Hankel arc list as a JSON literal; defaults to the zero symbol.
    #[arg(long, value_name = "SPEC")]
    b: Option<String>,
    /// Which of the two operators to test.
    #[arg(long, value_enum, default_value_t = SignArg::Both)]
    sign: SignArg,
    /// Hardy exponent.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Comma-separated exponent list; overrides --p.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    p_sweep: Option<Vec<f64>>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Parses the process arguments, runs the requested mode and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => pair_mode("analyze", args, PairMode::Analyze),
        Command::Factorize(args) => symbol_mode("factorize", args, SymbolMode::Factorize),
        Command::Signature(args) => symbol_mode("signature", args, SymbolMode::Signature),
        Command::Kernel(args) => pair_mode("kernel", args, PairMode::Kernel),
        Command::Oracle(args) => pair_mode("oracle", args, PairMode::Oracle),
        Command::PcCheck(args) => pc_mode(args),
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NotMatchingPair
        | Error::NotMatchingFunction
        | Error::InvalidSymbol(_)
        | Error::ZeroDenominator => 2,
        Error::NotFredholmPair => 3,
        _ => 1,
    }
}

fn emit(report: &Report, out: &OutputArgs) -> i32 {
    let doc = to_json(report);
    if let Some(path) = &out.report {
        if let Err(e) = fs::write(path, format!("{doc}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    if out.json {
        println!("{doc}");
    } else {
        print!("{}", to_text(report));
    }
    0
}

fn finish(mut report: Report, outcome: Result<i32>, out: &OutputArgs) -> i32 {
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            report.error = Some(e.to_string());
            exit_code_for(&e)
        }
    };
    let emit_code = emit(&report, out);
    if code != 0 {
        code
    } else {
        emit_code
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidSymbol(format!("{what}: {e}")))
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidSymbol(format!("cannot read {}: {e}", path.display())))
}

#[derive(Deserialize)]
struct PairFile {
    a: SymbolSpec,
    b: SymbolSpec,
}

#[derive(Deserialize)]
struct PcPairFile {
    a: PcSymbolSpec,
    b: Option<PcSymbolSpec>,
}

fn load_pair(args: &PairArgs) -> Result<(SymbolSpec, SymbolSpec)> {
    if let Some(path) = &args.pair {
        let file: PairFile = read_json("pair file", &read_file(path)?)?;
        Ok((file.a, file.b))
    } else {
        match (&args.a, &args.b) {
            (Some(a), Some(b)) => Ok((
                read_json("symbol a", a)?,
                read_json("symbol b", b)?,
            )),
            _ => Err(Error::InvalidSymbol(
                "either --pair FILE or both --a and --b are required".into(),
            )),
        }
    }
}

fn load_pc_pair(args: &PcArgs) -> Result<(PcSymbolSpec, PcSymbolSpec)> {
    let zero = PcSymbolSpec { arcs: vec![(0.0, 0.0, 0.0)] };
    if let Some(path) = &args.pair {
        let file: PcPairFile = read_json("pair file", &read_file(path)?)?;
        Ok((file.a, file.b.unwrap_or(zero)))
    } else {
        match (&args.a, &args.b) {
            (Some(a), Some(b)) => Ok((read_json("symbol a", a)?, read_json("symbol b", b)?)),
            (Some(a), None) => Ok((read_json("symbol a", a)?, zero)),
            _ => Err(Error::InvalidSymbol(
                "either --pair FILE or --a is required".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairMode {
    Analyze,
    Kernel,
    Oracle,
}

fn pair_mode(mode_name: &str, args: PairArgs, mode: PairMode) -> i32 {
    let mut report = Report::new(RequestEcho {
        mode: mode_name.to_string(),
        a: None,
        b: None,
        pc_a: None,
        pc_b: None,
        sign: args.sign.echo().to_string(),
        n: args.n,
        p: args.p,
        p_sweep: None,
    });
    let outcome = pair_body(&args, mode, &mut report);
    finish(report, outcome, &args.out)
}

fn pair_body(args: &PairArgs, mode: PairMode, report: &mut Report) -> Result<i32> {
    let (spec_a, spec_b) = load_pair(args)?;
    let a = spec_a.to_symbol()?;
    let b = spec_b.to_symbol()?;
    report.request.a = Some(spec_a);
    report.request.b = Some(spec_b);
    if a.is_zero() && b.is_zero() {
        return Err(Error::SymbolDegenerateOnCircle(
            "a and b are both the zero symbol".into(),
        ));
    }

    let m = analyze(&a, &b)?;
    report.matching = Some(true);
    report.subordinated = Some(SubordinatedJson {
        c: SymbolSpec::from_symbol(&m.c),
        d: SymbolSpec::from_symbol(&m.d),
    });
    report.kappa1 = Some(m.kappa1);
    report.kappa2 = Some(m.kappa2);
    report.sigma_c = signature(&m.c).ok().map(|s| s.value());
    report.sigma_d = signature(&m.d).ok().map(|s| s.value());

    let with_oracle = mode != PairMode::Kernel;
    let signs = args.sign.operators();
    let outputs: Vec<Result<(SignResultJson, Vec<String>)>> = if signs.len() == 2 {
        let (a, b, n) = (&a, &b, args.n);
        std::thread::scope(|scope| {
            let handles: Vec<_> = signs
                .iter()
                .map(|&s| scope.spawn(move || sign_result(a, b, s, n, with_oracle)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sign worker panicked"))
                .collect()
        })
    } else {
        signs
            .iter()
            .map(|&s| sign_result(&a, &b, s, args.n, with_oracle))
            .collect()
    };

    for out in outputs {
        let (result, warnings) = out?;
        report.results.push(result);
        report.warnings.extend(warnings);
    }

    if mode == PairMode::Oracle {
        let disagrees = report.results.iter().any(|r| {
            let bad = |o: &Option<OracleJson>| {
                o.as_ref().is_some_and(|o| !o.agrees_with_analytic)
            };
            bad(&r.oracle) || bad(&r.cokernel_oracle)
        });
        if disagrees {
            return Ok(4);
        }
    }
    Ok(0)
}

fn sign_result(
    a: &RationalSymbol,
    b: &RationalSymbol,
    sign: OperatorSign,
    n: usize,
    with_oracle: bool,
) -> Result<(SignResultJson, Vec<String>)> {
    let desc = kernel_cokernel(a, b, sign)?;
    let mut warnings = Vec::new();
    let mut oracle = None;
    let mut cokernel_oracle = None;
    if with_oracle {
        let expected = section_null_count(a, desc.dim_ker)?;
        let cmp = oracle_check(a, b, sign, expected, &desc.kernel_basis, n)?;
        note_retries(&mut warnings, sign, "kernel", &cmp);
        oracle = Some(OracleJson::from_comparison(&cmp));

        let (adj_a, adj_b) = adjoint_pair(a, b)?;
        let expected = section_null_count(&adj_a, desc.dim_coker)?;
        let cmp = oracle_check(&adj_a, &adj_b, sign, expected, &desc.cokernel_basis, n)?;
        note_retries(&mut warnings, sign, "cokernel", &cmp);
        cokernel_oracle = Some(OracleJson::from_comparison(&cmp));
    }
    let result = SignResultJson {
        sign: desc.sign.to_string(),
        branch: desc.branch.to_string(),
        kernel: desc.kernel_basis.iter().map(BasisFnJson::from_hardy).collect(),
        cokernel: desc
            .cokernel_basis
            .iter()
            .map(BasisFnJson::from_hardy)
            .collect(),
        dim_ker: desc.dim_ker,
        dim_coker: desc.dim_coker,
        index: desc.index,
        contributions: (
            desc.contributions.from_c_projection,
            desc.contributions.from_phi_image,
        ),
        oracle,
        cokernel_oracle,
    };
    Ok((result, warnings))
}

fn note_retries(
    warnings: &mut Vec<String>,
    sign: OperatorSign,
    side: &str,
    cmp: &tph_core::OracleComparison,
) {
    if cmp.sizes_tried.len() > 1 {
        let list: Vec<String> = cmp.sizes_tried.iter().map(|n| n.to_string()).collect();
        warnings.push(format!(
            "sign {sign}: {side} finite section disagreed at N = {}; retried at N = {}",
            cmp.sizes_tried[0],
            list[1..].join(", "),
        ));
    }
    if !cmp.report.agrees_with_analytic {
        warnings.push(format!(
            "sign {sign}: {side} finite section still disagrees at N = {}",
            cmp.n_used,
        ));
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SymbolMode {
    Factorize,
    Signature,
}

fn symbol_mode(mode_name: &str, args: SymbolArgs, mode: SymbolMode) -> i32 {
    let mut report = Report::new(RequestEcho {
        mode: mode_name.to_string(),
        a: None,
        b: None,
        pc_a: None,
        pc_b: None,
        sign: "both".to_string(),
        n: 64,
        p: 2.0,
        p_sweep: None,
    });
    let outcome = symbol_body(&args, mode, &mut report);
    finish(report, outcome, &args.out)
}

fn symbol_body(args: &SymbolArgs, mode: SymbolMode, report: &mut Report) -> Result<i32> {
    let spec: SymbolSpec = read_json("symbol a", &args.a)?;
    let g = spec.to_symbol()?;
    report.request.a = Some(spec);
    match mode {
        SymbolMode::Factorize => {
            let f = factorize(&g)?;
            report.factorization = Some(FactorizationJson {
                g_minus: SymbolSpec::from_symbol(&f.g_minus),
                index: f.index_n,
                g_plus: SymbolSpec::from_symbol(&f.g_plus),
                sigma: f.signature.map(|s| s.value()),
            });
        }
        SymbolMode::Signature => {
            report.sigma = Some(signature(&g)?.value());
        }
    }
    Ok(0)
}

fn pc_mode(args: PcArgs) -> i32 {
    let p_list = args.p_sweep.clone().unwrap_or_else(|| vec![args.p]);
    let mut report = Report::new(RequestEcho {
        mode: "pc-check".to_string(),
        a: None,
        b: None,
        pc_a: None,
        pc_b: None,
        sign: args.sign.echo().to_string(),
        n: 64,
        p: args.p,
        p_sweep: args.p_sweep.clone(),
    });
    let outcome = pc_body(&args, &p_list, &mut report);
    finish(report, outcome, &args.out)
}

fn pc_body(args: &PcArgs, p_list: &[f64], report: &mut Report) -> Result<i32> {
    let (spec_a, spec_b) = load_pc_pair(args)?;
    let a = spec_a.to_symbol()?;
    let b = spec_b.to_symbol()?;
    report.request.pc_a = Some(spec_a);
    report.request.pc_b = Some(spec_b);

    let signs = args.sign.operators();
    let outputs: Vec<Result<PcSignJson>> = if signs.len() == 2 {
        let (a, b) = (&a, &b);
        std::thread::scope(|scope| {
            let handles: Vec<_> = signs
                .iter()
                .map(|&s| scope.spawn(move || pc_sign(a, b, s, p_list)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sign worker panicked"))
                .collect()
        })
    } else {
        signs.iter().map(|&s| pc_sign(&a, &b, s, p_list)).collect()
    };
    for out in outputs {
        report.pc.push(out?);
    }
    Ok(0)
}

fn pc_sign(a: &PcSymbol, b: &PcSymbol, sign: OperatorSign, p_list: &[f64]) -> Result<PcSignJson> {
    let b_signed = match sign {
        OperatorSign::Plus => b.clone(),
        OperatorSign::Minus => b.negated(),
    };
    let sweep = pc_p_sweep(a, &b_signed, p_list)?;
    Ok(PcSignJson::from_sweep(&sign.to_string(), &sweep))
}
