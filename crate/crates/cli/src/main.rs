use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmr_cli::{
    parse_complex, parse_rational, parse_series, report_to_json, series_to_json, tensor_to_json, value_to_json,
    y_word_to_json, AnySeries, Coeff,
};
use dmr_core::dmr::{check_dmr, graded_basis, TangentKind, Variant};
use dmr_core::mt::{ihara, mt_mul};
use dmr_core::numeric::{self, NumericConfig};
use dmr_core::torsor::{connect, frobenius_decomposition, lift_full, FreeChoice};
use dmr_core::{Alphabet, CNum, Coproduct, CyclicGroup, Error, Result, Scalar, Series, Tensor, YLetter, YWord, Q};

#[derive(Parser)]
#[command(name = "dmr", version, about = "Double shuffle and distribution relations at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Dmr,
    Dmrp,
    Dmrd,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Dmr => Variant::Dmr,
            VariantArg::Dmrp => Variant::Dmrp,
            VariantArg::Dmrd => Variant::Dmrd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Dmr,
    Dmr0,
    Dmrd,
    Dmrd0,
}

impl From<SpaceArg> for TangentKind {
    fn from(v: SpaceArg) -> TangentKind {
        match v {
            SpaceArg::Dmr => TangentKind::Dmr,
            SpaceArg::Dmr0 => TangentKind::Dmr0,
            SpaceArg::Dmrd => TangentKind::Dmrd,
            SpaceArg::Dmrd0 => TangentKind::Dmrd0,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FreeArg {
    Zero,
    Ones,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of two series.
    #[command(group(ArgGroup::new("op").required(true).args(["shuffle", "concat", "stuffle"])))]
    Product {
        #[arg(long)]
        shuffle: bool,
        #[arg(long)]
        concat: bool,
        #[arg(long)]
        stuffle: bool,
        a: PathBuf,
        b: PathBuf,
    },
    /// Δ or Δ* of a series, as a tensor document.
    #[command(group(ArgGroup::new("op").required(true).args(["delta", "delta_star"])))]
    Coproduct {
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        delta_star: bool,
        input: Option<PathBuf>,
    },
    /// Shuffle antipode: reversal with sign (−1)^weight
    Antipode { input: Option<PathBuf> },
    /// Exponential of a series with zero constant term
    Exp { input: Option<PathBuf> },
    /// Logarithm of a series with constant term 1
    Log { input: Option<PathBuf> },
    /// Drops words ending in x₀; the result is a Y-series
    PiY { input: Option<PathBuf> },
    /// Keeps the convergent words
    PiCv { input: Option<PathBuf> },
    /// Partial products of the colors
    Ps { input: Option<PathBuf> },
    /// Inverse of ps
    Qs { input: Option<PathBuf> },
    /// Checks every defining relation; exit 1 if one fails.
    Check {
        #[arg(long, value_enum, default_value = "dmr")]
        variant: VariantArg,
        /// p/q, or for numeric input also a decimal or `re,im`.
        #[arg(long)]
        lambda: Option<String>,
        /// Evaluate in double-double; rational input is converted.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        input: Option<PathBuf>,
    },
    /// Echelon basis of a graded piece of a tangent space.
    Dmr0 {
        #[arg(long)]
        weight: usize,
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long, value_enum, default_value = "dmr0")]
        variant: SpaceArg,
    },
    /// A rational point of the fiber over λ.
    Lift {
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        weight: usize,
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long, value_enum, default_value = "dmr")]
        variant: VariantArg,
        /// Shorthand for --variant dmrd.
        #[arg(long)]
        dmrd: bool,
        #[arg(long, value_enum, default_value = "zero")]
        free: FreeArg,
        /// With --free ones: first weight whose free variables are 1.
        #[arg(long, default_value_t = 1)]
        ones_from: usize,
    },
    /// The ψ with exp(s_ψ)(A) = B.
    Connect {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "dmr")]
        variant: VariantArg,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Ihara bracket {A, B}.
    Ihara { a: PathBuf, b: PathBuf },
    /// A ⊛ B.
    MtMul { a: PathBuf, b: PathBuf },
    /// Homogeneous components of the ψ with F(Φ) = exp(−s_ψ)(Φ) for the numeric Φ.
    FrobeniusIrreducibles {
        #[arg(long)]
        weight: usize,
        #[arg(long = "N", alias = "n", default_value_t = 1)]
        n: u32,
        /// Tolerance for the connecting solve.
        #[arg(long, default_value_t = 1e-9)]
        prec: f64,
    },
    /// Multiple polylogarithms at roots of unity and the relations they satisfy
    #[command(subcommand)]
    Numeric(NumericCmd),
}

#[derive(Subcommand)]
enum NumericCmd {
    /// ζ(s₁, …, s_r).
    Zeta { s: Vec<u32> },
    /// L_{s}(ξ^{k₁}, …, ξ^{k_r}).
    Polylog {
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<u32>,
    },
    /// The numeric Φ as a complex document.
    Phi {
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long)]
        weight: usize,
    },
    CheckRelations {
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    Distribution {
        #[arg(long = "N", alias = "n")]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 3)]
        weight: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    WeightOne {
        #[arg(long = "N", alias = "n")]
        n: u32,
    },
}

/// Output document plus the exit status it implies.
struct Outcome {
    doc: Value,
    passed: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Result<Outcome> {
        Ok(Outcome { doc, passed: true })
    }
}

fn read(path: Option<&PathBuf>) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn load(path: Option<&PathBuf>) -> Result<AnySeries> {
    parse_series(&read(path)?)
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

fn group(n: u32) -> Result<CyclicGroup> {
    CyclicGroup::new(n)
}

macro_rules! each {
    ($s:expr, $x:ident => $body:expr) => {
        match $s {
            AnySeries::Exact($x) => $body,
            AnySeries::Numeric($x) => $body,
        }
    };
}

macro_rules! both {
    ($a:expr, $b:expr, ($x:ident, $y:ident) => $body:expr) => {
        match ($a, $b) {
            (AnySeries::Exact($x), AnySeries::Exact($y)) => $body,
            (AnySeries::Numeric($x), AnySeries::Numeric($y)) => $body,
            _ => usage("both documents must use the same coefficient mode"),
        }
    };
}

/// Δ on Y-series is the quotient coproduct: tensor terms with a factor ending
/// in x₀ vanish.
fn coproduct_doc<C: Coeff>(s: &Series<C>, kind: Coproduct) -> Result<Value> {
    match (kind, s.alphabet()) {
        (Coproduct::DeltaStar, Alphabet::X) => usage("Δ* needs a Y-series"),
        (Coproduct::Delta, Alphabet::Y) => {
            let full = s.delta();
            let mut t = Tensor::zero(s.group(), Alphabet::Y, s.trunc());
            for ((u, v), c) in full.terms() {
                if !u.ends_with_x0() && !v.ends_with_x0() {
                    t.add_term(u.clone(), v.clone(), c.clone());
                }
            }
            Ok(tensor_to_json(&t))
        }
        _ => Ok(tensor_to_json(&s.coproduct(kind))),
    }
}

fn require_x<C: Scalar>(s: &Series<C>, what: &str) -> Result<()> {
    if s.alphabet() != Alphabet::X {
        return usage(format!("{what} needs a series over X"));
    }
    Ok(())
}

fn check_doc<C: Coeff>(s: &Series<C>, lambda: &C, variant: Variant, tol: f64) -> Result<Outcome> {
    require_x(s, "check")?;
    let report = check_dmr(s, lambda, variant, tol)?;
    Ok(Outcome { passed: report.passed(), doc: report_to_json(&report) })
}

fn run_check(doc: AnySeries, variant: Variant, lambda: Option<&str>, numeric: bool, tol: f64) -> Result<Outcome> {
    let as_numeric = |s: &Series<Q>| s.map_coeffs(CNum::from_rational);
    match (doc, numeric) {
        (AnySeries::Exact(s), false) => {
            let Some(l) = lambda else { return usage("exact check needs --lambda p/q") };
            check_doc(&s, &parse_rational(l)?, variant, 0.0)
        }
        (doc, _) => {
            let s = match doc {
                AnySeries::Exact(s) => as_numeric(&s),
                AnySeries::Numeric(s) => s,
            };
            let l = match lambda {
                Some(l) => parse_complex(l)?,
                None => numeric::numeric_lambda(s.group()),
            };
            check_doc(&s, &l, variant, tol)
        }
    }
}

fn connect_doc<C: Coeff>(a: &Series<C>, b: &Series<C>, kind: TangentKind, tol: f64) -> Result<Value> {
    let tol = if C::EXACT { 0.0 } else { tol };
    Ok(series_to_json(&connect(a, b, kind, tol)?))
}

fn frobenius_doc(n: u32, weight: usize, prec: f64, cfg: &NumericConfig) -> Result<Value> {
    let g = group(n)?;
    let np = numeric::numeric_phi(g, weight, cfg)?;
    let parts = frobenius_decomposition(&np.point(), prec)?;
    let mut depth_one = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let w = i as u32 + 1;
        for nu in g.elements() {
            let y = YWord(vec![YLetter { n: w, nu }]);
            let c = p.coeff(&y.to_x());
            if c.magnitude() > 0.0 {
                depth_one.push(json!({"y": y_word_to_json(&y), "value": c.to_json()}));
            }
        }
    }
    Ok(json!({
        "N": n,
        "weight": weight,
        "components": parts.iter().map(series_to_json).collect::<Vec<_>>(),
        "depth_one": depth_one,
    }))
}

fn run_numeric(cmd: NumericCmd) -> Result<Outcome> {
    let cfg = NumericConfig::from_env();
    match cmd {
        NumericCmd::Zeta { s } => {
            let colors = vec![0; s.len()];
            let (v, e) = numeric::polylog_value(group(1)?, &s, &colors, &cfg)?;
            Outcome::ok(value_to_json(&v, e))
        }
        NumericCmd::Polylog { n, s, colors } => {
            let (v, e) = numeric::polylog_value(group(n)?, &s, &colors, &cfg)?;
            Outcome::ok(value_to_json(&v, e))
        }
        NumericCmd::Phi { n, weight } => {
            Outcome::ok(series_to_json(&numeric::numeric_phi(group(n)?, weight, &cfg)?.phi))
        }
        NumericCmd::CheckRelations { n, weight, tol } => {
            let np = numeric::numeric_phi(group(n)?, weight, &cfg)?;
            let report = numeric::check_relations(&np, tol)?;
            let disc = np.l_discrepancy();
            let passed = report.passed() && disc <= tol;
            Ok(Outcome {
                passed,
                doc: json!({
                    "report": report_to_json(&report),
                    "l_discrepancy": disc,
                    "extrapolation_error": np.error,
                    "passed": passed,
                }),
            })
        }
        NumericCmd::Distribution { n, d, weight, tol } => {
            let r = numeric::distribution_numeric_check(group(n)?, d, weight, &cfg, tol)?;
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| json!({"word": y_word_to_json(&row.word), "lhs": row.lhs.to_json(), "rhs": row.rhs.to_json(), "error": row.error()}))
                .collect();
            Ok(Outcome {
                passed: r.passed,
                doc: json!({"d": d, "rows": rows, "series_residual": r.series_residual, "max_error": r.max_error, "passed": r.passed}),
            })
        }
        NumericCmd::WeightOne { n } => {
            let rows: Vec<Value> = numeric::weight_one_numeric_check(group(n)?, &cfg)?
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "difference": r.difference.to_json(),
                        "error_vs_ipi_n_minus_2k_over_n": r.error_scaled,
                        "error_vs_ipi_n_minus_2k": r.error_unscaled,
                        "ratio": r.ratio.to_json(),
                        "ratio_error": r.ratio_error,
                    })
                })
                .collect();
            Outcome::ok(json!({"N": n, "rows": rows}))
        }
    }
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Product { shuffle, concat, stuffle, a, b } => {
            let (a, b) = (load(Some(&a))?, load(Some(&b))?);
            both!(a, b, (x, y) => {
                let r = if concat {
                    x.concat(&y)?
                } else if shuffle {
                    require_x(&x, "shuffle")?;
                    x.shuffle(&y)?
                } else {
                    debug_assert!(stuffle);
                    x.stuffle(&y)?
                };
                Outcome::ok(series_to_json(&r))
            })
        }
        Cmd::Coproduct { delta, delta_star: _, input } => {
            let kind = if delta { Coproduct::Delta } else { Coproduct::DeltaStar };
            each!(load(input.as_ref())?, s => Outcome::ok(coproduct_doc(&s, kind)?))
        }
        Cmd::Antipode { input } => each!(load(input.as_ref())?, s => {
            require_x(&s, "antipode")?;
            Outcome::ok(series_to_json(&s.antipode()))
        }),
        Cmd::Exp { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.exp()?))),
        Cmd::Log { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.log()?))),
        Cmd::PiY { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.pi_y()))),
        Cmd::PiCv { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.pi_cv()))),
        Cmd::Ps { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.ps()))),
        Cmd::Qs { input } => each!(load(input.as_ref())?, s => Outcome::ok(series_to_json(&s.qs()))),
        Cmd::Check { variant, lambda, numeric, tol, input } => {
            run_check(load(input.as_ref())?, variant.into(), lambda.as_deref(), numeric, tol)
        }
        Cmd::Dmr0 { weight, n, variant } => {
            if weight == 0 {
                return usage("weight must be at least 1");
            }
            let kind: TangentKind = variant.into();
            let b = graded_basis(group(n)?, weight, kind)?;
            Outcome::ok(json!({
                "N": n,
                "weight": weight,
                "space": kind.to_string(),
                "dim": b.dim(),
                "basis": b.basis.iter().map(series_to_json).collect::<Vec<_>>(),
            }))
        }
        Cmd::Lift { lambda, weight, n, variant, dmrd, free, ones_from } => {
            let variant = if dmrd { Variant::Dmrd } else { variant.into() };
            let choice = match free {
                FreeArg::Zero => FreeChoice::Zero,
                FreeArg::Ones => FreeChoice::Ones { from_weight: ones_from },
            };
            let p = lift_full(group(n)?, parse_rational(&lambda)?, variant, weight, choice)?;
            Outcome::ok(series_to_json(&p.phi))
        }
        Cmd::Connect { a, b, variant, tol } => {
            let kind = TangentKind::acting_on(variant.into());
            both!(load(Some(&a))?, load(Some(&b))?, (x, y) => {
                require_x(&x, "connect")?;
                Outcome::ok(connect_doc(&x, &y, kind, tol)?)
            })
        }
        Cmd::Ihara { a, b } => both!(load(Some(&a))?, load(Some(&b))?, (x, y) => {
            require_x(&x, "ihara")?;
            x.check_compatible(&y)?;
            Outcome::ok(series_to_json(&ihara(&x, &y)))
        }),
        Cmd::MtMul { a, b } => both!(load(Some(&a))?, load(Some(&b))?, (x, y) => {
            require_x(&x, "mt-mul")?;
            Outcome::ok(series_to_json(&mt_mul(&x, &y)?))
        }),
        Cmd::FrobeniusIrreducibles { weight, n, prec } => {
            Outcome::ok(frobenius_doc(n, weight, prec, &NumericConfig::from_env())?)
        }
        Cmd::Numeric(c) => run_numeric(c),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Parse(_) => 2,
        Error::Inconsistent(_) => 1,
        Error::Precision(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.doc).expect("JSON values serialize");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("dmr: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
