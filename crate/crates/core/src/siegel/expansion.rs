//! Fourier expansions `F(Omega) = sum_T a(T) e^{2 pi i Tr(T Omega)}` of
//! degree-2 Siegel forms, the Maass lift, the Phi operator, Maass's Dirichlet
//! series and truncated point evaluation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cohen::JacobiCoefficients;
use super::jacobi::jacobi_cusp_form;
use super::quadratic::{class_key, epsilon_units, mat2_det, reduce_class, HalfIntegralMatrix};
use super::symplectic::SiegelPoint;
use crate::arith::{divisors, rational_to_f64};
use crate::codec::{parse_rational, rational_to_string};
use crate::dirichlet::{n_pow_neg_s, DirichletEval};
use crate::error::{Error, Result};
use crate::forms::ClassicalForm;
use crate::series::QExpansion;

/// Fourier coefficients of a degree-2 form with all `T` of `det T <= det_bound`
/// (semidefinite `T` of content `<= det_bound`) covered; coefficients not
/// stored inside that range are zero.
///
/// At level 1 the keys are class representatives (see [`class_key`]) and
/// `a(T[U]) = det(U)^k a(T)` recovers every other `T`. At higher level the
/// keys are the matrices themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionJson", into = "ExpansionJson")]
pub struct SiegelExpansion {
    weight: i64,
    level: u64,
    det_bound: u64,
    coeffs: BTreeMap<HalfIntegralMatrix, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    weight: i64,
    level: u64,
    det_bound: u64,
    coeffs: Vec<(i64, i64, i64, String)>,
}

impl From<SiegelExpansion> for ExpansionJson {
    fn from(f: SiegelExpansion) -> Self {
        ExpansionJson {
            weight: f.weight,
            level: f.level,
            det_bound: f.det_bound,
            coeffs: f.coeffs.iter().map(|(t, v)| (t.a, t.b, t.c, rational_to_string(v))).collect(),
        }
    }
}

impl TryFrom<ExpansionJson> for SiegelExpansion {
    type Error = Error;

    fn try_from(j: ExpansionJson) -> Result<Self> {
        let entries = j
            .coeffs
            .iter()
            .map(|(a, b, c, v)| Ok((HalfIntegralMatrix::new(*a, *b, *c), parse_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        SiegelExpansion::from_entries(j.weight, j.level, j.det_bound, entries)
    }
}

impl SiegelExpansion {
    pub fn zero(weight: i64, level: u64, det_bound: u64) -> Self {
        SiegelExpansion {
            weight,
            level: level.max(1),
            det_bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds an expansion from `(T, a(T))` pairs. At level 1 several
    /// representatives of one class may be given; they must agree.
    pub fn from_entries(
        weight: i64,
        level: u64,
        det_bound: u64,
        entries: impl IntoIterator<Item = (HalfIntegralMatrix, BigRational)>,
    ) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        let mut out = SiegelExpansion::zero(weight, level, det_bound);
        for (t, v) in entries {
            if !t.is_semi_positive() {
                return Err(Error::NotPositiveDefinite { a: t.a, b: t.b, c: t.c });
            }
            let (key, value) = out.normalize(&t, v)?;
            if let Some(old) = out.coeffs.get(&key) {
                if *old != value {
                    return Err(Error::InvalidInput(format!(
                        "conflicting coefficients for the class of ({}, {}, {})",
                        t.a, t.b, t.c
                    )));
                }
            }
            if !value.is_zero() {
                out.coeffs.insert(key, value);
            }
        }
        Ok(out)
    }

    /// Storage key and value for `a(T) = v`.
    fn normalize(&self, t: &HalfIntegralMatrix, v: BigRational) -> Result<(HalfIntegralMatrix, BigRational)> {
        if !self.uses_classes() {
            return Ok((*t, v));
        }
        if t.discriminant() == 0 {
            // diag(1, -1) fixes (0, 0, n), so odd weight forces a(T) = 0.
            if self.weight % 2 != 0 && !v.is_zero() {
                return Err(Error::InvalidInput("odd weight with nonzero semidefinite coefficient".into()));
            }
            return Ok((class_key(t)?, v));
        }
        let (r, u) = reduce_class(t)?;
        let sign = if self.weight % 2 != 0 && mat2_det(&u) < 0 { -v } else { v };
        Ok((r, sign))
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn det_bound(&self) -> u64 {
        self.det_bound
    }

    /// Whether keys are class representatives (level 1).
    pub fn uses_classes(&self) -> bool {
        self.level == 1
    }

    /// Stored nonzero coefficients in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&HalfIntegralMatrix, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn covers(&self, t: &HalfIntegralMatrix) -> bool {
        if t.discriminant() == 0 {
            t.content().unsigned_abs() <= self.det_bound
        } else {
            t.discriminant().unsigned_abs() <= 4 * self.det_bound
        }
    }

    /// `a(T)`; zero for `T` not semi-positive.
    pub fn coeff(&self, t: &HalfIntegralMatrix) -> Result<BigRational> {
        if !t.is_semi_positive() {
            return Ok(BigRational::zero());
        }
        if !self.covers(t) {
            return Err(Error::InsufficientCoefficients(format!(
                "({}, {}, {}) lies beyond det_bound {}",
                t.a, t.b, t.c, self.det_bound
            )));
        }
        if !self.uses_classes() {
            return Ok(self.coeffs.get(t).cloned().unwrap_or_else(BigRational::zero));
        }
        if t.discriminant() == 0 {
            return Ok(self.coeffs.get(&class_key(t)?).cloned().unwrap_or_else(BigRational::zero));
        }
        let (r, u) = reduce_class(t)?;
        let v = self.coeffs.get(&r).cloned().unwrap_or_else(BigRational::zero);
        Ok(if self.weight % 2 != 0 && mat2_det(&u) < 0 { -v } else { v })
    }

    /// Same expansion with coverage lowered to `det_bound`.
    pub fn truncate(&self, det_bound: u64) -> Self {
        let det_bound = det_bound.min(self.det_bound);
        let mut out = SiegelExpansion::zero(self.weight, self.level, det_bound);
        out.coeffs = self
            .coeffs
            .iter()
            .filter(|(t, _)| out.covers(t))
            .map(|(t, v)| (*t, v.clone()))
            .collect();
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
        } else {
            out.coeffs.values_mut().for_each(|v| *v *= c);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("expansion serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

/// Maass lift of an index-1 Jacobi cusp form:
/// `a(T) = sum_{d | gcd(a, b, c)} d^{k-1} c((4ac - b^2) / d^2)` for `T > 0`.
pub fn maass_lift(phi: &JacobiCoefficients, det_bound: u64) -> Result<SiegelExpansion> {
    if !phi.is_cuspidal() {
        return Err(Error::InvalidInput("the Maass lift needs a Jacobi cusp form".into()));
    }
    let d_max = 4 * det_bound;
    if phi.d_max() < d_max {
        return Err(Error::PrecisionExhausted {
            requested: d_max as usize,
            precision: phi.d_max() as usize,
        });
    }
    let k = phi.weight;
    let d_max = d_max as i64;
    let rows: Vec<i64> = (1..).take_while(|a| 3 * a * a <= d_max).collect();
    let entries: Vec<(HalfIntegralMatrix, BigRational)> = rows
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut row = Vec::new();
            for b in 0..=a {
                let mut c = a;
                while 4 * a * c - b * b <= d_max {
                    let t = HalfIntegralMatrix::new(a, b, c);
                    let disc = t.discriminant();
                    let g = t.content() as u64;
                    let mut v = BigRational::zero();
                    for d in divisors(g) {
                        let d2 = (d * d) as i64;
                        let cd = &phi.coeffs[(disc / d2) as usize];
                        if !cd.is_zero() {
                            v += cd * BigRational::from_integer(BigInt::from(d).pow((k - 1) as u32));
                        }
                    }
                    if !v.is_zero() {
                        row.push((t, v));
                    }
                    c += 1;
                }
            }
            row
        })
        .collect();
    SiegelExpansion::from_entries(k, 1, det_bound, entries)
}

/// The level-1 cusp forms of weight 10 and 12 as Maass lifts of
/// `phi_{10,1}` and `phi_{12,1}`, normalized by `a((1, 1, 1)) = 1`.
pub fn build_chi(k: i64, det_bound: u64) -> Result<SiegelExpansion> {
    if k != 10 && k != 12 {
        return Err(Error::UnsupportedWeight(k));
    }
    if det_bound == 0 {
        return Err(Error::InvalidInput("det_bound must be at least 1".into()));
    }
    let phi = jacobi_cusp_form(k, 4 * det_bound)?;
    let f = maass_lift(&phi, det_bound)?;
    let a111 = f.coeff(&HalfIntegralMatrix::new(1, 1, 1))?;
    Ok(f.scale(&a111.recip()))
}

/// Degree-2 Phi operator: `sum_n a((n, 0, 0)) q^n` to precision
/// `det_bound + 1`.
pub fn phi_operator(f: &SiegelExpansion) -> Result<ClassicalForm> {
    let n_max = f.det_bound as i64;
    let coeffs = (0..=n_max)
        .map(|n| f.coeff(&HalfIntegralMatrix::new(n, 0, 0)))
        .collect::<Result<Vec<_>>>()?;
    let cusp = coeffs[0].is_zero();
    ClassicalForm::new(QExpansion::from_rationals(coeffs.len(), &coeffs)?, f.weight, f.level, cusp)
}

/// `D(F, s) = sum_{T > 0 mod GL_2(Z), det T <= det_bound} a(T) / epsilon(T) (det T)^{-s}`.
///
/// The tail assumes `|a(T)| <= C (det T)^e` with `C` fitted on the stored
/// classes, `e = k/2` when the Phi-image is zero on the stored range and
/// `e = k - 3/2` otherwise. At most `D` reduced classes have
/// `4 det T = D >= 9`, and `epsilon >= 2`, which gives a convergent tail
/// for `Re s > e + 2`. Only stored keys that are reduced contribute, so at
/// level above 1 the table must carry reduced representatives.
pub fn maass_dirichlet(f: &SiegelExpansion, s: Complex64, det_bound: u64) -> Result<DirichletEval> {
    if f.weight % 2 != 0 {
        return Err(Error::Unsupported("D(F, s) for odd weight".into()));
    }
    if det_bound > f.det_bound {
        return Err(Error::InsufficientCoefficients(format!(
            "det_bound {det_bound} exceeds stored {}",
            f.det_bound
        )));
    }
    if det_bound == 0 {
        return Err(Error::InvalidInput("det_bound must be at least 1".into()));
    }
    let cusp = phi_operator(f)?.expansion.is_zero();
    let e = if cusp { f.weight as f64 / 2.0 } else { f.weight as f64 - 1.5 };
    if s.re <= e + 2.0 {
        return Err(Error::DivergenceRisk { re_s: s.re, abscissa: e + 2.0 });
    }
    let classes: Vec<(HalfIntegralMatrix, f64)> = f
        .coeffs
        .iter()
        .filter(|(t, _)| t.is_positive_definite() && t.is_reduced())
        .map(|(t, v)| (*t, rational_to_f64(v)))
        .collect();
    let constant = classes
        .iter()
        .map(|(t, v)| v.abs() / t.det_f64().powf(e))
        .fold(0.0, f64::max);
    let mut value = Complex64::zero();
    let mut abs_sum = 0.0;
    let mut terms = 0;
    for (t, v) in &classes {
        if t.discriminant() as u64 > 4 * det_bound {
            continue;
        }
        let eps = epsilon_units(t)? as f64;
        let term = n_pow_neg_s(t.det_f64(), s) * (*v / eps);
        value += term;
        abs_sum += term.norm();
        terms += 1;
    }
    let sigma = s.re;
    let d0 = (4 * det_bound) as f64;
    let scale = constant / 2.0 * 4f64.powf(sigma - e);
    let tail = scale * (d0.powf(e - sigma + 2.0) / (sigma - e - 2.0) + 9.0 * d0.powf(e - sigma + 1.0) / (sigma - e - 1.0));
    let rounding = abs_sum * f64::EPSILON * (terms as f64 + 8.0);
    Ok(DirichletEval::new(
        s,
        terms,
        value,
        tail,
        rounding,
        format!("|a(T)| <= {constant:.6e} (det T)^{e} (fitted on stored classes)"),
    ))
}

/// A truncated Fourier sum with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiegelValue {
    pub value: [f64; 2],
    pub terms_used: usize,
    pub trace_bound: u64,
    pub min_imaginary_eigenvalue: f64,
    pub tail_bound: f64,
    pub rounding_bound: f64,
}

impl SiegelValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }

    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// Sums `a(T) e^{2 pi i (a w11 + b w12 + c w22)}` over all semi-positive
/// `T = (a, b, c)` with `a + c <= trace_bound`.
///
/// With `lambda` the smallest eigenvalue of `Im Omega`,
/// `|e^{2 pi i Tr(T Omega)}| <= e^{-2 pi lambda (a + c)}`; at most
/// `(m + 1)^2` matrices have trace `m`, and `|a(T)| <= C m^k` with `C`
/// fitted on the summed range. The tail bound is the sum of these majorants
/// over `m > trace_bound`.
pub fn evaluate_siegel(f: &SiegelExpansion, omega: &SiegelPoint, trace_bound: u64) -> Result<SiegelValue> {
    if omega.g() != 2 {
        return Err(Error::InvalidInput("degree-2 point expected".into()));
    }
    let tb = trace_bound as i64;
    if trace_bound * trace_bound > 4 * f.det_bound || trace_bound > f.det_bound {
        return Err(Error::InsufficientCoefficients(format!(
            "trace_bound {trace_bound} needs det_bound >= {}",
            (trace_bound * trace_bound).div_ceil(4).max(trace_bound)
        )));
    }
    let w = omega.omega();
    let (w11, w12, w22) = (w[(0, 0)], w[(0, 1)], w[(1, 1)]);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let lambda = omega.min_imaginary_eigenvalue();
    let k = f.weight as f64;

    let mut value = Complex64::zero();
    let mut abs_sum = 0.0;
    let mut terms = 0;
    let mut constant: f64 = 0.0;
    for a in 0..=tb {
        for c in 0..=tb - a {
            let bmax = (4 * a * c).isqrt();
            for b in -bmax..=bmax {
                let t = HalfIntegralMatrix::new(a, b, c);
                let coeff = f.coeff(&t)?;
                if coeff.is_zero() {
                    continue;
                }
                let x = rational_to_f64(&coeff);
                let trace = a + c;
                if trace > 0 {
                    constant = constant.max(x.abs() / (trace as f64).powf(k));
                }
                let phase = (w11 * a as f64 + w12 * b as f64 + w22 * c as f64) * two_pi_i;
                let term = phase.exp() * x;
                value += term;
                abs_sum += term.norm();
                terms += 1;
            }
        }
    }
    let tail = if lambda <= 0.0 {
        f64::INFINITY
    } else {
        theta_tail(constant, k, lambda, trace_bound)
    };
    Ok(SiegelValue {
        value: [value.re, value.im],
        terms_used: terms,
        trace_bound,
        min_imaginary_eigenvalue: lambda,
        tail_bound: tail,
        rounding_bound: abs_sum * f64::EPSILON * 16.0,
    })
}

/// `sum_{m > m0} C m^k (m + 1)^2 e^{-2 pi lambda m}`, summed until the terms
/// are decreasing and negligible.
fn theta_tail(constant: f64, k: f64, lambda: f64, m0: u64) -> f64 {
    if constant == 0.0 {
        return 0.0;
    }
    let rate = 2.0 * std::f64::consts::PI * lambda;
    let peak = (k + 2.0) / rate;
    let ln_c = constant.ln();
    let mut total = 0.0;
    let mut m = m0 + 1;
    loop {
        let mf = m as f64;
        let ln_term = ln_c + k * mf.ln() + 2.0 * (mf + 1.0).ln() - rate * mf;
        let term = ln_term.exp();
        total += term;
        if mf > peak && (term <= total * 1e-18 || ln_term < -745.0) {
            // Remaining terms shrink at least geometrically with ratio r.
            let ratio = ((k + 2.0) * ((mf + 1.0) / mf).ln() - rate).exp();
            if ratio < 1.0 {
                return total + term * ratio / (1.0 - ratio);
            }
        }
        m += 1;
        if m > m0 + 10_000_000 {
            return f64::INFINITY;
        }
    }
}

/// Whether `a(T)` depends only on `(content, 4ac - b^2)` over the stored
/// classes, the shape of a Maass lift.
pub fn satisfies_maass_relation(f: &SiegelExpansion) -> bool {
    let mut seen: BTreeMap<(i64, i64), &BigRational> = BTreeMap::new();
    f.coeffs.iter().filter(|(t, _)| t.is_positive_definite()).all(|(t, v)| {
        *seen.entry((t.content(), t.discriminant())).or_insert(v) == v
    }) && {
        // Classes with zero coefficient must not share invariants with a
        // stored nonzero class.
        let det_bound = f.det_bound as i64;
        let mut ok = true;
        'outer: for a in (1..).take_while(|a| 3 * a * a <= 4 * det_bound) {
            for b in 0..=a {
                let mut c = a;
                while 4 * a * c - b * b <= 4 * det_bound {
                    let t = HalfIntegralMatrix::new(a, b, c);
                    if !f.coeffs.contains_key(&t) && seen.contains_key(&(t.content(), t.discriminant())) {
                        ok = false;
                        break 'outer;
                    }
                    c += 1;
                }
            }
        }
        ok
    }
}

/// Largest `|a(T)|` over the stored classes, as `f64`.
pub fn max_abs_coefficient(f: &SiegelExpansion) -> f64 {
    f.coeffs.values().map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn t(a: i64, b: i64, c: i64) -> HalfIntegralMatrix {
        HalfIntegralMatrix::new(a, b, c)
    }

    #[test]
    fn lift_examples() {
        let phi = jacobi_cusp_form(10, 48).unwrap();
        let f = maass_lift(&phi, 12).unwrap();
        assert_eq!(f.coeff(&t(1, 1, 1)).unwrap(), phi.get(3).unwrap());
        let expected = phi.get(12).unwrap() + r(512) * phi.get(3).unwrap();
        assert_eq!(f.coeff(&t(2, 2, 2)).unwrap(), expected);
        assert_eq!(f.coeff(&t(1, 2, 2)).unwrap(), f.coeff(&t(1, 0, 1)).unwrap());
        assert_eq!(f.coeff(&t(4, 4, 1)).unwrap(), r(0));
        assert!(satisfies_maass_relation(&f));
    }

    #[test]
    fn chi10_values() {
        let f = build_chi(10, 4).unwrap();
        assert_eq!(f.coeff(&t(1, 1, 1)).unwrap(), r(1));
        // Coefficient of q^1 zeta^0 in the product formula for phi_{10,1}.
        assert_eq!(f.coeff(&t(1, 0, 1)).unwrap(), r(-2));
        assert!(phi_operator(&f).unwrap().expansion.is_zero());
        let g = build_chi(12, 4).unwrap();
        assert_eq!(g.coeff(&t(1, 0, 1)).unwrap(), r(10));
        assert!(build_chi(14, 4).is_err());
    }

    #[test]
    fn coverage_is_enforced() {
        let f = build_chi(10, 4).unwrap();
        assert!(f.coeff(&t(3, 0, 3)).is_err());
        assert_eq!(f.coeff(&t(1, 3, 1)).unwrap(), r(0));
        assert!(f.coeff(&t(5, 0, 0)).is_err());
    }

    #[test]
    fn phi_operator_examples() {
        let z = SiegelExpansion::zero(10, 1, 5);
        assert!(phi_operator(&z).unwrap().expansion.is_zero());
        let f = SiegelExpansion::from_entries(4, 1, 3, [(t(1, 0, 0), r(5)), (t(0, 0, 0), r(1))]).unwrap();
        let phi = phi_operator(&f).unwrap();
        assert_eq!(phi.coeff(1).unwrap(), r(5));
        assert_eq!(phi.coeff(0).unwrap(), r(1));
        assert_eq!(phi.coeff(2).unwrap(), r(0));
    }

    #[test]
    fn conflicting_imports_are_rejected() {
        let ok = SiegelExpansion::from_entries(10, 1, 3, [(t(1, 0, 1), r(2)), (t(1, 2, 2), r(2))]);
        assert!(ok.is_ok());
        let bad = SiegelExpansion::from_entries(10, 1, 3, [(t(1, 0, 1), r(2)), (t(1, 2, 2), r(3))]);
        assert!(bad.is_err());
        // Raw keys at higher level.
        let lvl = SiegelExpansion::from_entries(3, 2, 3, [(t(1, 0, 1), r(2)), (t(1, 2, 2), r(3))]).unwrap();
        assert_eq!(lvl.coeff(&t(1, 2, 2)).unwrap(), r(3));
    }

    #[test]
    fn json_round_trip() {
        let f = build_chi(10, 3).unwrap();
        let json = f.to_json();
        assert!(json.contains("\"coeffs\":[[1,0,1,\"-2\"]"));
        assert_eq!(SiegelExpansion::from_json(&json).unwrap(), f);
    }

    #[test]
    fn dirichlet_single_class() {
        let f = SiegelExpansion::from_entries(10, 1, 3, [(t(1, 1, 1), r(1))]).unwrap();
        let s = Complex64::new(12.0, 0.0);
        let d = maass_dirichlet(&f, s, 3).unwrap();
        let expected = 0.75f64.powf(-12.0) / 12.0;
        assert!((d.value().re - expected).abs() < 1e-12 * expected);
        let z = maass_dirichlet(&SiegelExpansion::zero(10, 1, 3), s, 3).unwrap();
        assert_eq!(z.value(), Complex64::zero());
        assert!(maass_dirichlet(&f, Complex64::new(6.0, 0.0), 3).is_err());
    }

    #[test]
    fn dirichlet_truncation_shrinks() {
        let f = build_chi(10, 64).unwrap();
        let s = Complex64::new(12.0, 0.0);
        let mut prev = f64::INFINITY;
        for b in [4u64, 8, 16, 32] {
            let d1 = maass_dirichlet(&f, s, b).unwrap().value();
            let d2 = maass_dirichlet(&f, s, 2 * b).unwrap();
            let gap = (d1 - d2.value()).norm();
            assert!(gap < prev, "B = {b}");
            prev = gap;
        }
    }

    #[test]
    fn evaluation_of_one_class() {
        // a = 1 on the class of (1, 0, 1); within trace 4 the class is
        // (1, 0, 1), (1, +-2, 2) and (2, +-2, 1).
        let f = SiegelExpansion::from_entries(10, 1, 4, [(t(1, 0, 1), r(1))]).unwrap();
        let mut last = f64::INFINITY;
        for y in [0.8, 1.0, 1.5] {
            let v = evaluate_siegel(&f, &SiegelPoint::scalar_imaginary(2, y), 4).unwrap();
            let pi = std::f64::consts::PI;
            let expected = (-4.0 * pi * y).exp() + 4.0 * (-6.0 * pi * y).exp();
            assert!((v.value().re - expected).abs() < 1e-15);
            assert!(v.value().re < last);
            last = v.value().re;
        }
        let z = evaluate_siegel(&SiegelExpansion::zero(10, 1, 4), &SiegelPoint::scalar_imaginary(2, 1.0), 4).unwrap();
        assert_eq!(z.value(), Complex64::zero());
        assert!(evaluate_siegel(&f, &SiegelPoint::scalar_imaginary(2, 1.0), 5).is_err());
    }

    #[test]
    fn chi10_transforms_under_j() {
        let f = build_chi(10, 100).unwrap();
        let omega = SiegelPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.1, 1.1), Complex64::new(0.2, 0.3), Complex64::new(0.2, 0.3), Complex64::new(-0.3, 1.3)],
        ))
        .unwrap();
        let j = super::super::symplectic::SymplecticMatrix::j(2);
        let image = super::super::symplectic::sp_action(&j, &omega).unwrap();
        let lhs = evaluate_siegel(&f, &image, 20).unwrap();
        let rhs = evaluate_siegel(&f, &omega, 20).unwrap();
        let factor = super::super::symplectic::automorphy_factor(&j, &omega).powi(10);
        let diff = (lhs.value() - factor * rhs.value()).norm();
        assert!(diff <= 1e-8 * lhs.value().norm(), "diff {diff}, |F| {}", lhs.value().norm());
        // The wrong weight is detected.
        let wrong = super::super::symplectic::automorphy_factor(&j, &omega).powi(12);
        assert!((lhs.value() - wrong * rhs.value()).norm() > 1e-3 * lhs.value().norm());
    }
}
