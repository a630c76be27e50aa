//! Numeric evaluation of truncated Dirichlet series and Euler products,
//! each carrying an explicit truncation bound.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, rational_to_f64};
use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;

const EPS: f64 = f64::EPSILON;

/// Coefficient growth assumption `|a_n| <= constant * n^exponent`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub exponent: f64,
    /// Explicit constant; when absent it is taken as the maximum of
    /// `|a_n| / n^exponent` over the summed terms (recorded as empirical).
    pub constant: Option<f64>,
}

impl GrowthBound {
    pub fn empirical(exponent: f64) -> Self {
        GrowthBound { exponent, constant: None }
    }

    pub fn explicit(constant: f64, exponent: f64) -> Self {
        GrowthBound { exponent, constant: Some(constant) }
    }
}

/// A truncated evaluation. `tail_bound` bounds the truncation error under the
/// recorded assumption; `rounding_bound` bounds floating-point error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletEval {
    pub s: [f64; 2],
    pub terms_used: usize,
    pub value: [f64; 2],
    pub tail_bound: f64,
    pub rounding_bound: f64,
    pub assumption: String,
}

impl DirichletEval {
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.s[0], self.s[1])
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }

    /// Total error bound: truncation plus rounding.
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }

    pub(crate) fn new(s: Complex64, terms_used: usize, value: Complex64, tail: f64, rounding: f64, assumption: String) -> Self {
        DirichletEval {
            s: [s.re, s.im],
            terms_used,
            value: [value.re, value.im],
            tail_bound: tail,
            rounding_bound: rounding,
            assumption,
        }
    }
}

/// `n^{-s}` for complex `s`.
pub fn n_pow_neg_s(n: f64, s: Complex64) -> Complex64 {
    let ln = n.ln();
    Complex64::from_polar((-s.re * ln).exp(), -s.im * ln)
}

/// Integral-test bound on `sum_{n > n_max} C n^{e - sigma}`.
fn power_tail(constant: f64, exponent: f64, sigma: f64, n_max: usize) -> f64 {
    let gap = sigma - exponent - 1.0;
    constant * (n_max as f64).powf(-gap) / gap
}

/// Partial sum `sum_{1 <= n <= n_max} a_n n^{-s}` of the series whose
/// coefficients are `coeffs[n]` (index 0 ignored).
pub fn dirichlet_partial(coeffs: &[BigRational], s: Complex64, n_max: usize, growth: &GrowthBound) -> Result<DirichletEval> {
    let floats: Vec<f64> = coeffs.iter().map(rational_to_f64).collect();
    dirichlet_partial_f64(&floats, s, n_max, growth)
}

/// As [`dirichlet_partial`] with coefficients already converted to floats.
pub fn dirichlet_partial_f64(coeffs: &[f64], s: Complex64, n_max: usize, growth: &GrowthBound) -> Result<DirichletEval> {
    let abscissa = growth.exponent + 1.0;
    if s.re <= abscissa {
        return Err(Error::DivergenceRisk { re_s: s.re, abscissa });
    }
    if coeffs.len() <= n_max {
        return Err(Error::PrecisionExhausted {
            requested: n_max,
            precision: coeffs.len().saturating_sub(1),
        });
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut empirical: f64 = 0.0;
    for (n, &a) in coeffs.iter().enumerate().take(n_max + 1).skip(1) {
        if a == 0.0 {
            continue;
        }
        let term = n_pow_neg_s(n as f64, s) * a;
        value += term;
        abs_sum += term.norm();
        empirical = empirical.max(a.abs() / (n as f64).powf(growth.exponent));
    }
    let (constant, kind) = match growth.constant {
        Some(c) => (c, "explicit"),
        None => (empirical, "empirical"),
    };
    let tail = if constant == 0.0 {
        0.0
    } else {
        power_tail(constant, growth.exponent, s.re, n_max)
    };
    let rounding = (n_max as f64 + 8.0) * EPS * abs_sum;
    let assumption = format!("|a_n| <= {constant:e} * n^{} ({kind} constant)", growth.exponent);
    Ok(DirichletEval::new(s, n_max, value, tail, rounding, assumption))
}

/// Truncated Euler product `prod_{p <= p_max} P_p(p^{-s})^{-1}`.
///
/// `factors` lists `(p, P_p)`; primes without an entry contribute 1. The tail
/// bound assumes every omitted factor (`p > p_max`) has degree at most the
/// largest supplied degree and inverse roots of modulus at most
/// `p^root_exponent`: then `|log prod_{p > P}| <= T` with
/// `T = d / (1 - x) * P^{1 + w - sigma} / (sigma - w - 1)`, `x = P^{w - sigma}`,
/// and the relative error is at most `e^T - 1`.
pub fn euler_product(factors: &[(u64, ComplexPolynomial)], s: Complex64, p_max: u64, root_exponent: f64) -> Result<DirichletEval> {
    let abscissa = root_exponent + 1.0;
    if s.re <= abscissa {
        return Err(Error::DivergenceRisk { re_s: s.re, abscissa });
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut degree = 0usize;
    let mut ops = 0usize;
    let mut sorted: Vec<&(u64, ComplexPolynomial)> = factors.iter().filter(|(p, _)| *p <= p_max).collect();
    sorted.sort_by_key(|(p, _)| *p);
    for (p, poly) in sorted {
        let t = n_pow_neg_s(*p as f64, s);
        let v = poly.eval(t);
        if v.norm() <= 1e-14 * poly.eval_abs(t) {
            return Err(Error::PoleAtPrime(*p));
        }
        value /= v;
        let d = poly.degree().unwrap_or(0);
        degree = degree.max(d);
        ops += d + 2;
    }
    let tail = if degree == 0 {
        0.0
    } else {
        let big_p = p_max.max(1) as f64;
        let gap = s.re - root_exponent - 1.0;
        let x = big_p.powf(root_exponent - s.re);
        let t = degree as f64 / (1.0 - x) * big_p.powf(-gap) / gap;
        value.norm() * t.exp_m1()
    };
    let rounding = value.norm() * (ops as f64 + 8.0) * 4.0 * EPS;
    let assumption = format!(
        "omitted factors of degree <= {degree} with inverse roots |beta| <= p^{root_exponent}"
    );
    let terms = primes_up_to(p_max).len();
    Ok(DirichletEval::new(s, terms, value, tail, rounding, assumption))
}
