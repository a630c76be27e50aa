//! Bounded modularity checks: `a_p` matching between curves and forms, the
//! trace and determinant conditions on Frobenius, and comparison of
//! L-functions with the zeta functions of Siegel forms.
//!
//! A finite computation only ever yields evidence up to a prime bound, so
//! every report carries its bound and a three-way verdict.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{mod_big, primes_up_to};
use crate::codec::rational_to_string;
use crate::curves::{ec_ap, global_l_eval, ApTable, EllipticCurveQ, FrobeniusPoly};
use crate::dirichlet::{dirichlet_partial, GrowthBound};
use crate::error::{Error, Result};
use crate::forms::ClassicalForm;
use crate::local::{FactorKind, LocalFactor};
use crate::poly::Polynomial;
use crate::siegel::{maass_dirichlet, HalfIntegralMatrix, SiegelExpansion};

/// Smallest bound at which agreement counts as verified.
pub const MIN_VERIFIED_BOUND: u64 = 100;

/// Fixed note on the conditions that no computation here addresses.
pub const UNCHECKED_NOTE: &str = "non-constant holomorphic maps from the toroidal compactification and from the \
     Jacobian of the level-N Siegel modular variety to the abelian variety are not machine-checkable and are not tested";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedToBound,
    Refuted,
    Inconclusive,
}

impl Verdict {
    fn decide(bound: u64, compared: usize, mismatches: usize) -> Self {
        if mismatches > 0 {
            Verdict::Refuted
        } else if compared > 0 && bound >= MIN_VERIFIED_BOUND {
            Verdict::VerifiedToBound
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub p: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of comparing `a_p(E)` with `a_p(f)` at the good primes up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularityReport {
    pub curve: String,
    pub form: String,
    pub bound: u64,
    pub verdict: Verdict,
    pub matched: Vec<(u64, i64)>,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<u64>,
    pub notes: Vec<String>,
}

impl ModularityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn curve_id(e: &EllipticCurveQ) -> String {
    let [a1, a2, a3, a4, a6] = e.a;
    format!("[{a1},{a2},{a3},{a4},{a6}]")
}

/// Compares `a_p(E)` by point counting with `a_p(f)` for every prime
/// `p <= bound` not dividing `N disc(E)`. Equal good Euler factors
/// `1 - a_p t + p t^2` are the same as equal `a_p`.
pub fn verify_elliptic_modularity(
    e: &EllipticCurveQ,
    f: &ClassicalForm,
    form_id: &str,
    bound: u64,
) -> Result<ModularityReport> {
    if f.precision() <= bound as usize {
        return Err(Error::InsufficientCoefficients(format!(
            "form known to precision {}, need {}",
            f.precision(),
            bound + 1
        )));
    }
    let disc = e.discriminant();
    let primes = primes_up_to(bound);
    let (good, skipped): (Vec<u64>, Vec<u64>) =
        primes.into_iter().partition(|&p| f.level % p != 0 && mod_big(&disc, p) != 0);
    let rows: Vec<(u64, i64, BigRational)> = good
        .par_iter()
        .map(|&p| Ok((p, ec_ap(e, p)?, f.coeff(p as usize)?)))
        .collect::<Result<_>>()?;
    let mut matched = Vec::new();
    let mut mismatches = Vec::new();
    for (p, a_e, a_f) in rows {
        if BigRational::from_integer(BigInt::from(a_e)) == a_f {
            matched.push((p, a_e));
        } else {
            mismatches.push(Mismatch {
                p,
                lhs: a_e.to_string(),
                rhs: rational_to_string(&a_f),
            });
        }
    }
    let mut notes = Vec::new();
    if f.weight != 2 {
        notes.push(format!("weight mismatch: the form has weight {}, curves pair with weight 2", f.weight));
    }
    Ok(ModularityReport {
        curve: curve_id(e),
        form: form_id.to_string(),
        bound,
        verdict: Verdict::decide(bound, matched.len() + mismatches.len(), mismatches.len()),
        matched,
        mismatches,
        skipped,
        notes,
    })
}

/// Frobenius data on the Galois side.
#[derive(Clone, Copy, Debug)]
pub enum FrobeniusSide<'a> {
    /// `g = 1`: `a_p` of an elliptic curve; the Weil factor is `1 - a_p t + p t^2`.
    Elliptic(&'a ApTable),
    /// `g >= 1`: characteristic polynomials at good primes.
    Abelian(&'a BTreeMap<u64, FrobeniusPoly>),
}

/// The modular side: `a(p I_g; F)`.
#[derive(Clone, Copy, Debug)]
pub enum FormSide<'a> {
    Classical(&'a ClassicalForm),
    Siegel(&'a SiegelExpansion),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub p: u64,
    pub trace: String,
    pub form_coefficient: String,
    pub det: String,
    pub expected_det: String,
}

/// Result of checking `Tr rho(Frob_p) = a(p I_g; F)` and `det rho(Frob_p) = p^g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCheckReport {
    pub g: usize,
    pub bound: u64,
    pub verdict: Verdict,
    pub rows: Vec<TraceRow>,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<u64>,
    pub notes: Vec<String>,
}

/// Checks the trace and determinant conditions at every good prime
/// `p <= bound`. The trace is `-c_1` of `det(1 - Frob t)` and the
/// determinant is its top coefficient `c_{2g}`.
pub fn galois_trace_check(frob: FrobeniusSide<'_>, form: FormSide<'_>, bound: u64) -> Result<TraceCheckReport> {
    let (g, data): (usize, Vec<(u64, Option<Vec<i64>>)>) = match frob {
        FrobeniusSide::Elliptic(t) => (
            1,
            t.entries
                .iter()
                .filter(|(p, _)| **p <= bound)
                .map(|(&p, &a)| (p, (!t.bad_primes.contains(&p)).then(|| vec![1, -a, p as i64])))
                .collect(),
        ),
        FrobeniusSide::Abelian(m) => {
            let g = m.values().next().map_or(2, |f| f.g);
            (g, m.iter().filter(|(p, _)| **p <= bound).map(|(&p, f)| (p, Some(f.coeffs.clone()))).collect())
        }
    };
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    let mut skipped = Vec::new();
    for (p, coeffs) in data {
        let Some(c) = coeffs else {
            skipped.push(p);
            continue;
        };
        if c.len() != 2 * g + 1 {
            return Err(Error::DegreeMismatch { p, lhs: c.len() - 1, rhs: 2 * g });
        }
        let trace = BigRational::from_integer(BigInt::from(-c[1]));
        let form_coeff = match form {
            FormSide::Classical(f) => {
                if g != 1 {
                    return Err(Error::InvalidInput("a classical form pairs with g = 1".into()));
                }
                f.coeff(p as usize)?
            }
            FormSide::Siegel(f) => {
                if g != 2 {
                    return Err(Error::InvalidInput("a degree-2 Siegel form pairs with g = 2".into()));
                }
                let t = HalfIntegralMatrix::new(p as i64, 0, p as i64);
                if !f.covers(&t) {
                    return Err(Error::InsufficientCoefficients(format!("class ({p}, 0, {p}) not stored")));
                }
                f.coeff(&t)?
            }
        };
        let det = BigInt::from(c[2 * g]);
        let expected_det = BigInt::from(p).pow(g as u32);
        if trace != form_coeff {
            mismatches.push(Mismatch {
                p,
                lhs: rational_to_string(&trace),
                rhs: rational_to_string(&form_coeff),
            });
        }
        if det != expected_det {
            mismatches.push(Mismatch {
                p,
                lhs: format!("det {det}"),
                rhs: format!("det {expected_det}"),
            });
        }
        rows.push(TraceRow {
            p,
            trace: rational_to_string(&trace),
            form_coefficient: rational_to_string(&form_coeff),
            det: det.to_string(),
            expected_det: expected_det.to_string(),
        });
    }
    let mut notes = vec![UNCHECKED_NOTE.to_string()];
    if let FormSide::Classical(f) = form {
        if f.weight != (g as i64) + 1 {
            notes.push(format!("the form has weight {}, the condition is stated for weight {}", f.weight, g + 1));
        }
    }
    Ok(TraceCheckReport {
        g,
        bound,
        verdict: Verdict::decide(bound, rows.len(), mismatches.len()),
        rows,
        mismatches,
        skipped,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompareMode {
    #[serde(rename = "spinor")]
    Spinor,
    #[serde(rename = "standard")]
    Standard,
    #[serde(rename = "maassD")]
    MaassD,
}

/// Zeta data of the form.
#[derive(Clone, Copy, Debug)]
pub enum ZetaSide<'a> {
    /// Local factors `Z_{F,p}` or `D_{F,p}`, for the spinor and standard modes.
    Local(&'a BTreeMap<u64, Polynomial>),
    /// Fourier coefficients, for `D(F, s)`: a degree-2 expansion (with the
    /// determinant bound to sum to) or, at `g = 1`, a classical form, where
    /// `epsilon(n) = 2` gives `D(f, s) = L(f, s) / 2`.
    Siegel(&'a SiegelExpansion, u64),
    Classical(&'a ClassicalForm),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleComparison {
    pub s: [f64; 2],
    pub l_value: [f64; 2],
    pub d_value: [f64; 2],
    pub difference: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub mode: CompareMode,
    pub bound: u64,
    pub verdict: Verdict,
    pub matched: Vec<u64>,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<u64>,
    pub samples: Vec<SampleComparison>,
    pub notes: Vec<String>,
}

fn poly_string(p: &Polynomial) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(rational_to_string).collect();
    format!("[{}]", coeffs.join(","))
}

/// Compares `L(A, s)` with `Z_F(s)`, `D_F(s)` or `D(F, s)`.
///
/// `abelian` maps each good prime to `det(1 - Frob_p t)` (or any local
/// L-polynomial). Spinor and standard modes compare polynomials exactly per
/// prime. `D(F, s)` has no Euler product, so the maassD mode compares values
/// at `sample_points`, with `L(A, s)` from its Euler product over
/// `p <= bound` (inverse roots of modulus `p^{root_exponent}`) and `D(F, s)`
/// truncated with its own tail bound; a sample disagrees when the gap exceeds
/// the sum of both bounds.
pub fn compare_l_with_zeta(
    abelian: &BTreeMap<u64, Polynomial>,
    zeta: ZetaSide<'_>,
    mode: CompareMode,
    bound: u64,
    sample_points: &[Complex64],
    root_exponent: f64,
) -> Result<CompareReport> {
    let mut matched = Vec::new();
    let mut mismatches = Vec::new();
    let mut skipped = Vec::new();
    let mut samples = Vec::new();
    let mut notes = vec![UNCHECKED_NOTE.to_string()];
    match (mode, zeta) {
        (CompareMode::Spinor | CompareMode::Standard, ZetaSide::Local(local)) => {
            for (&p, a_poly) in abelian.range(..=bound) {
                let Some(f_poly) = local.get(&p) else {
                    skipped.push(p);
                    continue;
                };
                let (dl, dr) = (a_poly.degree().unwrap_or(0), f_poly.degree().unwrap_or(0));
                if dl != dr {
                    return Err(Error::DegreeMismatch { p, lhs: dl, rhs: dr });
                }
                if a_poly == f_poly {
                    matched.push(p);
                } else {
                    mismatches.push(Mismatch {
                        p,
                        lhs: poly_string(a_poly),
                        rhs: poly_string(f_poly),
                    });
                }
            }
        }
        (CompareMode::MaassD, ZetaSide::Siegel(..) | ZetaSide::Classical(_)) => {
            let factors: BTreeMap<u64, LocalFactor> = abelian
                .range(..=bound)
                .map(|(&p, poly)| (p, LocalFactor::new(p, FactorKind::Frobenius, poly.clone())))
                .collect();
            for &s in sample_points {
                let l = global_l_eval(&factors, s, bound, root_exponent)?.euler;
                let d = match zeta {
                    ZetaSide::Siegel(f, det_bound) => maass_dirichlet(f, s, det_bound)?,
                    ZetaSide::Classical(f) => {
                        let n_max = f.precision() - 1;
                        let half: Vec<BigRational> = f
                            .expansion
                            .coefficients()
                            .iter()
                            .map(|c| c / BigRational::from_integer(2.into()))
                            .collect();
                        // |a(n)| <= d(n) n^{(k-1)/2} <= C n^{k/2}, C fitted on the summed terms.
                        let growth = GrowthBound::empirical(f.weight as f64 / 2.0);
                        dirichlet_partial(&half, s, n_max, &growth)?
                    }
                    ZetaSide::Local(_) => unreachable!(),
                };
                let difference = (l.value() - d.value()).norm();
                let tol = l.error_bound() + d.error_bound();
                if difference > tol {
                    mismatches.push(Mismatch {
                        p: 0,
                        lhs: format!("L({s}) = {}", l.value()),
                        rhs: format!("D({s}) = {}", d.value()),
                    });
                }
                samples.push(SampleComparison {
                    s: [s.re, s.im],
                    l_value: [l.value().re, l.value().im],
                    d_value: [d.value().re, d.value().im],
                    difference,
                    bound: tol,
                });
            }
            notes.push("D(F, s) is compared numerically at sample points; mismatches carry p = 0".into());
        }
        _ => return Err(Error::InvalidInput(format!("zeta data does not fit mode {mode:?}"))),
    }
    let compared = matched.len() + mismatches.len() + samples.len();
    let verdict = if mode == CompareMode::MaassD {
        if !mismatches.is_empty() {
            Verdict::Refuted
        } else if !samples.is_empty() && bound >= MIN_VERIFIED_BOUND {
            Verdict::VerifiedToBound
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::decide(bound, compared, mismatches.len())
    };
    Ok(CompareReport {
        mode,
        bound,
        verdict,
        matched,
        mismatches,
        skipped,
        samples,
        notes,
    })
}

/// `det(1 - Frob_p t)` for every prime in the map.
pub fn frobenius_factors(frob: &BTreeMap<u64, FrobeniusPoly>) -> BTreeMap<u64, Polynomial> {
    frob.iter().map(|(&p, f)| (p, f.polynomial())).collect()
}

/// Good-prime factors `1 - a_p t + p t^2` of an elliptic curve.
pub fn elliptic_factors(table: &ApTable) -> BTreeMap<u64, Polynomial> {
    table
        .entries
        .iter()
        .filter(|(p, _)| !table.bad_primes.contains(p))
        .map(|(&p, &a)| (p, Polynomial::from_i64(&[1, -a, p as i64])))
        .collect()
}
