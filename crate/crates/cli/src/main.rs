//! `modwb`: batch drivers over the modularity workbench library.
//!
//! Exit codes: 0 success, 1 computation error, 2 refuted verdict
//! (`verify`, `trace-check`), 64 malformed arguments.

mod cache;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modwb::codec::{parse_rational, rational_to_string};
use modwb::curves::{ec_ap_table, frobenius_poly, genus2_counts, ApTable, EllipticCurveQ, FrobeniusPoly, Genus2CurveQ};
use modwb::forms::{delta_qexp, eisenstein_qexp, registry_lookup, ClassicalForm, FormCoefficients};
use modwb::modcheck::{
    compare_l_with_zeta, elliptic_factors, galois_trace_check, verify_elliptic_modularity, CompareMode, FormSide,
    FrobeniusSide, Verdict, ZetaSide,
};
use modwb::poly::{ComplexPolynomial, Polynomial};
use modwb::siegel::{build_chi, evaluate_siegel, maass_dirichlet, SiegelExpansion, SiegelPoint};
use modwb::zeta::{
    satake_from_local, sk_eigenvalues, spinor_local_g1, spinor_local_g2_from_eigenvalues, standard_local,
    standard_local_g1, EigenvalueData,
};
use modwb::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

const EXIT_ERROR: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "modwb", version, about = "Modular forms, zeta functions and bounded modularity checks")]
struct Cli {
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// a_p of an elliptic curve for all primes up to a bound.
    Ap(ApArgs),
    /// q-expansion coefficients of a classical form.
    FormCoeffs(FormArgs),
    /// Compare a registry curve with a registry newform prime by prime.
    Verify(PairArgs),
    /// Fourier coefficients of chi_10 or chi_12.
    Igusa(IgusaArgs),
    /// Local spinor factor Z_{F,p}(t).
    Spinor(LocalArgs),
    /// Local standard factor D_{F,p}(t).
    Standard(LocalArgs),
    /// Maass's Dirichlet series D(F, s) of chi_10 or chi_12.
    Dseries(DseriesArgs),
    /// Frobenius polynomials of a genus-2 curve y^2 = f(x).
    Genus2(Genus2Args),
    /// Evaluate chi_10 or chi_12 at a point of the degree-2 Siegel space.
    EvalSiegel(EvalArgs),
    /// Trace and determinant conditions for a registry curve and form.
    TraceCheck(PairArgs),
    /// Compare L(E, s) with Z_f, D_f or D(f, s) for a registry pair.
    CompareL(CompareArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ApArgs {
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, value_parser = parse_curve, allow_hyphen_values = true)]
    curve: [i64; 5],
    #[arg(long, value_parser = positive)]
    pmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "which")]
struct FormChoice {
    /// Registry eta-quotient newform of this level.
    #[arg(long, group = "which")]
    level: Option<u64>,
    /// The discriminant function Delta.
    #[arg(long, group = "which")]
    delta: bool,
    /// Normalized Eisenstein series E_k.
    #[arg(long, group = "which")]
    eisenstein: Option<i64>,
}

#[derive(Args, Debug)]
struct FormArgs {
    #[command(flatten)]
    form: FormChoice,
    #[arg(long, value_parser = positive)]
    precision: u64,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Level of the registry curve.
    #[arg(long)]
    level: u64,
    /// Level of the registry form, if different from the curve's.
    #[arg(long)]
    form_level: Option<u64>,
    /// Compare against Delta instead of a registry form.
    #[arg(long, conflicts_with = "form_level")]
    delta: bool,
    #[arg(long, value_parser = positive)]
    pmax: u64,
}

#[derive(Args, Debug)]
struct IgusaArgs {
    /// Weight: 10 or 12.
    #[arg(long)]
    k: i64,
    #[arg(long, value_parser = positive)]
    det_bound: u64,
}

#[derive(Args, Debug)]
struct LocalArgs {
    /// Degree: 1 or 2.
    #[arg(long)]
    g: usize,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    p: u64,
    /// g = 1: the eigenvalue a_p.
    #[arg(long, allow_hyphen_values = true)]
    ap: Option<String>,
    /// g = 2: the eigenvalue of T(p).
    #[arg(long, allow_hyphen_values = true, requires = "lambda_p2")]
    lambda_p: Option<String>,
    /// g = 2: the eigenvalue of T(p^2).
    #[arg(long, allow_hyphen_values = true, requires = "lambda_p")]
    lambda_p2: Option<String>,
    /// g = 2: Saito-Kurokawa lift of a weight 2k-2 eigenform with this a_p ...
    #[arg(long, allow_hyphen_values = true, requires = "sk_ap2")]
    sk_ap: Option<String>,
    /// ... and this a_{p^2}.
    #[arg(long, allow_hyphen_values = true, requires = "sk_ap")]
    sk_ap2: Option<String>,
}

#[derive(Args, Debug)]
struct DseriesArgs {
    #[arg(long)]
    k: i64,
    #[arg(long, value_parser = positive)]
    det_bound: u64,
    /// Real part of s.
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
}

#[derive(Args, Debug)]
struct Genus2Args {
    /// Coefficients f_0,...,f_6 of f(x), constant term first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    f: Vec<i64>,
    #[arg(long, value_parser = positive)]
    pmax: u64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    k: i64,
    #[arg(long, value_parser = positive)]
    trace_bound: u64,
    /// Real parts of omega_11, omega_12, omega_22.
    #[arg(long, value_parser = parse_f64_triple, allow_hyphen_values = true, default_value = "0,0,0")]
    re: [f64; 3],
    /// Imaginary parts of omega_11, omega_12, omega_22.
    #[arg(long, value_parser = parse_f64_triple, allow_hyphen_values = true)]
    im: [f64; 3],
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    level: u64,
    #[arg(long, value_parser = positive)]
    pmax: u64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Real sample points for the maassD mode.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    s: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Spinor,
    Standard,
    #[value(name = "maassD")]
    MaassD,
}

fn positive(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_i64_list(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x}: {e}"))).collect()
}

fn parse_f64_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}"))).collect()
}

fn parse_curve(s: &str) -> std::result::Result<[i64; 5], String> {
    parse_i64_list(s)?.try_into().map_err(|v: Vec<i64>| format!("expected 5 coefficients, got {}", v.len()))
}

fn parse_f64_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_f64_list(s)?.try_into().map_err(|v: Vec<f64>| format!("expected 3 entries, got {}", v.len()))
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

/// What a command produced: the artifact text and whether its verdict is a
/// refutation.
struct Outcome {
    text: String,
    refuted: bool,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome { text, refuted: false }
    }

    fn json<T: Serialize>(value: &T) -> Self {
        Self::plain(pretty(value))
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("artifact serializes")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let mut text = outcome.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(if outcome.refuted { EXIT_REFUTED } else { 0 })
}

fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Ap(a) => {
            let table = ap_table(a.curve, a.pmax)?;
            Ok(match a.format {
                Format::Csv => Outcome::plain(table.to_csv()),
                Format::Json => Outcome::json(&table),
            })
        }
        Command::FormCoeffs(a) => {
            let f = choose_form(&a.form, a.precision as usize)?;
            Ok(Outcome::json(&FormCoefficients::from(&f)))
        }
        Command::Verify(a) => {
            let (curve, form, form_id) = pair(a)?;
            let report = verify_elliptic_modularity(&curve, &form, &form_id, a.pmax)?;
            Ok(Outcome {
                refuted: report.verdict == Verdict::Refuted,
                text: report.to_json(),
            })
        }
        Command::Igusa(a) => Ok(Outcome::plain(igusa(a.k, a.det_bound)?.to_json())),
        Command::Spinor(a) => spinor(a),
        Command::Standard(a) => standard(a),
        Command::Dseries(a) => {
            let f = igusa(a.k, a.det_bound)?;
            let eval = maass_dirichlet(&f, Complex64::new(a.s, a.t), a.det_bound)?;
            Ok(Outcome::json(&eval))
        }
        Command::Genus2(a) => genus2(a),
        Command::EvalSiegel(a) => {
            let tb = a.trace_bound;
            let det_bound = (tb * tb).div_ceil(4).max(tb);
            let f = igusa(a.k, det_bound)?;
            let entry = |i: usize| Complex64::new(a.re[i], a.im[i]);
            let omega = SiegelPoint::new(DMatrix::from_row_slice(2, 2, &[entry(0), entry(1), entry(1), entry(2)]))?;
            Ok(Outcome::json(&evaluate_siegel(&f, &omega, tb)?))
        }
        Command::TraceCheck(a) => {
            let (curve, form, _) = pair(a)?;
            let table = ap_table(curve.a, a.pmax)?;
            let report = galois_trace_check(FrobeniusSide::Elliptic(&table), FormSide::Classical(&form), a.pmax)?;
            Ok(Outcome {
                refuted: report.verdict == Verdict::Refuted,
                text: pretty(&report),
            })
        }
        Command::CompareL(a) => compare(a),
    }
}

fn ap_table(curve: [i64; 5], pmax: u64) -> Result<ApTable> {
    let [a1, a2, a3, a4, a6] = curve;
    cache::cached(&format!("ap-table:[{a1},{a2},{a3},{a4},{a6}]:{pmax}"), || {
        ec_ap_table(&EllipticCurveQ::new(curve)?, pmax)
    })
}

fn igusa(k: i64, det_bound: u64) -> Result<SiegelExpansion> {
    let key = format!("igusa:{k}:{det_bound}");
    let text = cache::cached_text(&key, || build_chi(k, det_bound).map(|f| f.to_json()))?;
    SiegelExpansion::from_json(&text)
}

fn choose_form(choice: &FormChoice, precision: usize) -> Result<ClassicalForm> {
    if let Some(level) = choice.level {
        registry_form(level, precision)
    } else if let Some(k) = choice.eisenstein {
        eisenstein_qexp(k, precision)
    } else {
        Ok(delta_qexp(precision))
    }
}

fn registry_form(level: u64, precision: usize) -> Result<ClassicalForm> {
    registry_lookup(level)
        .ok_or_else(|| Error::InvalidInput(format!("no registry newform of level {level}")))?
        .form(precision)
}

fn pair(a: &PairArgs) -> Result<(EllipticCurveQ, ClassicalForm, String)> {
    let rec = registry_lookup(a.level).ok_or_else(|| Error::InvalidInput(format!("no registry curve of level {}", a.level)))?;
    let curve = EllipticCurveQ::new(rec.curve)?;
    let precision = a.pmax as usize + 1;
    if a.delta {
        return Ok((curve, delta_qexp(precision), "delta".into()));
    }
    let level = a.form_level.unwrap_or(a.level);
    let form_rec = registry_lookup(level).ok_or_else(|| Error::InvalidInput(format!("no registry newform of level {level}")))?;
    Ok((curve, form_rec.form(precision)?, form_rec.label.clone()))
}

#[derive(Serialize)]
struct LocalOutput {
    kind: &'static str,
    p: u64,
    g: usize,
    k: i64,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct ComplexLocalOutput {
    kind: &'static str,
    p: u64,
    g: usize,
    k: i64,
    coeffs: Vec<[f64; 2]>,
}

fn eigen_data(a: &LocalArgs) -> Result<EigenvalueData> {
    match (&a.lambda_p, &a.lambda_p2, &a.sk_ap, &a.sk_ap2) {
        (Some(l1), Some(l2), None, None) => Ok(EigenvalueData {
            p: a.p,
            k: a.k,
            lambda_p: rational(l1)?,
            lambda_p2: rational(l2)?,
        }),
        (None, None, Some(ap), Some(ap2)) => sk_eigenvalues(&rational(ap)?, &rational(ap2)?, a.k, a.p),
        _ => Err(Error::InvalidInput("g = 2 needs --lambda-p/--lambda-p2 or --sk-ap/--sk-ap2".into())),
    }
}

fn g1_ap(a: &LocalArgs) -> Result<BigRational> {
    rational(a.ap.as_deref().ok_or_else(|| Error::InvalidInput("g = 1 needs --ap".into()))?)
}

fn exact(kind: &'static str, a: &LocalArgs, poly: &Polynomial) -> Outcome {
    Outcome::json(&LocalOutput {
        kind,
        p: a.p,
        g: a.g,
        k: a.k,
        coeffs: poly.coeffs().iter().map(rational_to_string).collect(),
    })
}

fn check_prime(p: u64) -> Result<()> {
    if modwb::arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

fn spinor(a: &LocalArgs) -> Result<Outcome> {
    check_prime(a.p)?;
    let poly = match a.g {
        1 => spinor_local_g1(&g1_ap(a)?, a.p, a.k),
        2 => spinor_local_g2_from_eigenvalues(&eigen_data(a)?),
        g => return Err(Error::Unsupported(format!("spinor factor from eigenvalues at g = {g}"))),
    };
    Ok(exact("spinor", a, &poly))
}

fn standard(a: &LocalArgs) -> Result<Outcome> {
    check_prime(a.p)?;
    match a.g {
        1 => Ok(exact("standard", a, &standard_local_g1(&g1_ap(a)?, a.p, a.k))),
        2 => {
            let spin = spinor_local_g2_from_eigenvalues(&eigen_data(a)?);
            let sd = satake_from_local(&spin, a.p, 2, a.k)?;
            let poly: ComplexPolynomial = standard_local(&sd)?;
            Ok(Outcome::json(&ComplexLocalOutput {
                kind: "standard",
                p: a.p,
                g: 2,
                k: a.k,
                coeffs: poly.coeffs().iter().map(|z| [z.re, z.im]).collect(),
            }))
        }
        g => Err(Error::Unsupported(format!("standard factor from eigenvalues at g = {g}"))),
    }
}

#[derive(Serialize)]
struct Genus2Output {
    f: Vec<i64>,
    bound: u64,
    polys: Vec<FrobeniusPoly>,
    skipped: Vec<u64>,
}

fn genus2(a: &Genus2Args) -> Result<Outcome> {
    let curve = Genus2CurveQ::new(a.f.clone())?;
    let mut polys = Vec::new();
    let mut skipped = Vec::new();
    for p in modwb::arith::primes_up_to(a.pmax) {
        if p == 2 || !curve.is_good_prime(p) {
            skipped.push(p);
            continue;
        }
        let (n1, n2) = genus2_counts(&curve, p)?;
        polys.push(frobenius_poly(n1, n2, p)?);
    }
    Ok(Outcome::json(&Genus2Output {
        f: curve.f.clone(),
        bound: a.pmax,
        polys,
        skipped,
    }))
}

fn compare(a: &CompareArgs) -> Result<Outcome> {
    let rec = registry_lookup(a.level).ok_or_else(|| Error::InvalidInput(format!("no registry pair of level {}", a.level)))?;
    let table = ap_table(rec.curve, a.pmax)?;
    let abelian = elliptic_factors(&table);
    let form = rec.form(a.pmax as usize + 1)?;
    let local = |build: fn(&BigRational, u64, i64) -> Polynomial| -> Result<BTreeMap<u64, Polynomial>> {
        abelian
            .keys()
            .map(|&p| Ok((p, build(&form.coeff(p as usize)?, p, form.weight))))
            .collect()
    };
    let samples: Vec<Complex64> = a.s.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    let report = match a.mode {
        ModeArg::Spinor => {
            let z = local(spinor_local_g1)?;
            compare_l_with_zeta(&abelian, ZetaSide::Local(&z), CompareMode::Spinor, a.pmax, &[], 0.5)?
        }
        ModeArg::Standard => {
            let d = local(standard_local_g1)?;
            compare_l_with_zeta(&abelian, ZetaSide::Local(&d), CompareMode::Standard, a.pmax, &[], 0.5)?
        }
        ModeArg::MaassD => {
            compare_l_with_zeta(&abelian, ZetaSide::Classical(&form), CompareMode::MaassD, a.pmax, &samples, 0.5)?
        }
    };
    Ok(Outcome::json(&report))
}
