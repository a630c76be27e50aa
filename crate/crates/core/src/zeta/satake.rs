//! Satake parameters and the local spinor and standard factors built from
//! them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, pow_u64, rational_to_f64};
use crate::error::{Error, Result};
use crate::poly::{round_exact_integer, ComplexPolynomial, Polynomial};

/// Relative tolerance for the normalization `alpha_0^2 prod alpha_i = p^{gk - g(g+1)/2}`.
pub const SATAKE_TOL: f64 = 1e-9;

/// `p`-Satake parameters `alpha_0, ..., alpha_g` of a degree-`g`, weight-`k`
/// eigenform, normalized by `alpha_0^2 alpha_1 ... alpha_g = p^{gk - g(g+1)/2}`.
/// At `g = 1` this makes the spinor factor `1 - a_p t + p^{k-1} t^2`.
///
/// `exact` marks data derived from rational eigenvalues, for which the spinor
/// factor has integer coefficients and is reconstructed exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatakeData {
    pub p: u64,
    pub g: usize,
    pub k: i64,
    pub alpha: Vec<[f64; 2]>,
    pub exact: bool,
}

impl SatakeData {
    pub fn new(p: u64, g: usize, k: i64, alpha: &[Complex64], exact: bool) -> Result<Self> {
        if g == 0 || alpha.len() != g + 1 {
            return Err(Error::InvalidInput(format!("need {} Satake parameters, got {}", g + 1, alpha.len())));
        }
        let sd = SatakeData {
            p,
            g,
            k,
            alpha: alpha.iter().map(|z| [z.re, z.im]).collect(),
            exact,
        };
        let prod = alpha[0] * alpha[0] * alpha[1..].iter().product::<Complex64>();
        let target = (p as f64).powi(sd.weight_exponent() as i32);
        if (prod - target).norm() > SATAKE_TOL * target {
            return Err(Error::InvalidInput(format!(
                "alpha_0^2 prod alpha_i = {prod} differs from p^{} = {target}",
                sd.weight_exponent()
            )));
        }
        Ok(sd)
    }

    pub fn alphas(&self) -> Vec<Complex64> {
        self.alpha.iter().map(|a| Complex64::new(a[0], a[1])).collect()
    }

    /// `gk - g(g+1)/2`, twice the exponent `w` of the root modulus `p^w`.
    pub fn weight_exponent(&self) -> i64 {
        weight_exponent(self.g, self.k)
    }

    /// Inverse roots `alpha_0 prod_{i in S} alpha_i` of the spinor factor,
    /// indexed by the bitmask of `S`.
    pub fn spinor_inverse_roots(&self) -> Vec<Complex64> {
        let a = self.alphas();
        (0..1usize << self.g)
            .map(|mask| {
                (0..self.g)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(a[0], |acc, i| acc * a[i + 1])
            })
            .collect()
    }
}

pub fn weight_exponent(g: usize, k: i64) -> i64 {
    let g = g as i64;
    g * k - g * (g + 1) / 2
}

/// `Z_{F,p}(t) = (1 - alpha_0 t) prod_{r=1}^{g} prod_{i_1 < ... < i_r} (1 - alpha_0 alpha_{i_1} ... alpha_{i_r} t)`
/// in floating point.
pub fn spinor_local_complex(sd: &SatakeData) -> ComplexPolynomial {
    ComplexPolynomial::from_reciprocal_roots(&sd.spinor_inverse_roots())
}

/// The spinor factor with integer coefficients, for data flagged exact.
///
/// The inverse roots pair up as `x, p^{2w}/x`, so `c_{d-j} = p^{2w(d/2-j)} c_j`
/// with `d = 2^g`; only `c_0, ..., c_{d/2}` are rounded, each from a value
/// whose floating-point error is bounded by `binom(d, j) M^j` times a small
/// multiple of the unit roundoff, `M` the largest root modulus.
pub fn spinor_local(sd: &SatakeData) -> Result<Polynomial> {
    if !sd.exact {
        return Err(Error::PrecisionLoss("Satake data is not flagged exact".into()));
    }
    let roots = sd.spinor_inverse_roots();
    let numeric = ComplexPolynomial::from_reciprocal_roots(&roots);
    let d = roots.len();
    let m = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut lower = Vec::with_capacity(d / 2 + 1);
    for j in 0..=d / 2 {
        let c = numeric.coeff(j);
        let scale = rational_to_f64(&BigRational::from_integer(binomial(d as u64, j as u64))) * m.powi(j as i32);
        let err = scale * 64.0 * f64::EPSILON * d as f64;
        if err >= 0.25 {
            return Err(Error::PrecisionLoss(format!("coefficient of t^{j} has magnitude up to {scale:.3e}")));
        }
        if c.im.abs() > err.max(1e-9) {
            return Err(Error::PrecisionLoss(format!("coefficient of t^{j} is not real: {c}")));
        }
        let v = round_exact_integer(c.re, err.max(1e-9))
            .ok_or_else(|| Error::PrecisionLoss(format!("coefficient of t^{j} = {} is not integral", c.re)))?;
        lower.push(v);
    }
    let two_w = sd.weight_exponent();
    let mut coeffs: Vec<BigInt> = lower.clone();
    for j in d / 2 + 1..=d {
        let i = d - j;
        let e = two_w * (d as i64 / 2 - i as i64);
        coeffs.push(&lower[i] * pow_u64(sd.p, e as u32));
    }
    Ok(Polynomial::from_integers(&coeffs))
}

/// `D_{F,p}(t) = (1 - t) prod_{i=1}^{g} (1 - alpha_i t)(1 - alpha_i^{-1} t)`.
pub fn standard_local(sd: &SatakeData) -> Result<ComplexPolynomial> {
    let a = sd.alphas();
    let mut roots = vec![Complex64::new(1.0, 0.0)];
    for (i, &x) in a.iter().enumerate().skip(1) {
        if x.norm() == 0.0 {
            return Err(Error::SingularSatake(i));
        }
        roots.push(x);
        roots.push(x.inv());
    }
    Ok(ComplexPolynomial::from_reciprocal_roots(&roots))
}

/// `1 - a_p t + p^{k-1} t^2`.
pub fn spinor_local_g1(ap: &BigRational, p: u64, k: i64) -> Polynomial {
    Polynomial::new(vec![
        BigRational::from_integer(1.into()),
        -ap.clone(),
        BigRational::from_integer(pow_u64(p, (k - 1) as u32)),
    ])
}

/// Exact `g = 1` standard factor: `alpha_1 + alpha_1^{-1} = (a_p^2 - 2 p^{k-1}) / p^{k-1}`, so
/// `D_p(t) = (1 - t)(1 - (a_p^2 / p^{k-1} - 2) t + t^2)`.
pub fn standard_local_g1(ap: &BigRational, p: u64, k: i64) -> Polynomial {
    let pk = BigRational::from_integer(pow_u64(p, (k - 1) as u32));
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    let trace = ap * ap / pk - &two;
    let quad = Polynomial::new(vec![one.clone(), -trace, one.clone()]);
    &Polynomial::new(vec![one.clone(), -one]) * &quad
}

/// Satake parameters at `g = 1` from `a_p`: `alpha_0` and `alpha_0 alpha_1`
/// are the roots of `x^2 - a_p x + p^{k-1}`.
pub fn satake_g1(ap: &BigRational, p: u64, k: i64) -> Result<SatakeData> {
    let a = rational_to_f64(ap);
    let pk = (p as f64).powi(k as i32 - 1);
    let disc = Complex64::new(a * a - 4.0 * pk, 0.0).sqrt();
    // Avoid cancellation: take the root of larger modulus first.
    let x1 = if a >= 0.0 { (a + disc) / 2.0 } else { (a - disc) / 2.0 };
    if x1.norm() == 0.0 {
        return Err(Error::SingularSatake(0));
    }
    let x2 = pk / x1;
    SatakeData::new(p, 1, k, &[x1, x2 / x1], true)
}

/// Recovers Satake parameters from a degree-`2^g` spinor factor: the inverse
/// roots are `alpha_0 prod_{i in S} alpha_i`; every choice of `alpha_0` and of
/// the `g` roots `alpha_0 alpha_i` is tried until the rebuilt factor matches
/// to `1e-8` in the normalized variable `u = p^w t`.
pub fn satake_from_local(poly: &Polynomial, p: u64, g: usize, k: i64) -> Result<SatakeData> {
    let d = 1usize << g;
    if poly.degree() != Some(d) || poly.coeff(0) != BigRational::from_integer(1.into()) {
        return Err(Error::InvalidInput(format!("expected a degree-{d} factor with constant term 1")));
    }
    let two_w = weight_exponent(g, k);
    let pw = (p as f64).powf(two_w as f64 / 2.0);
    let normalized: Vec<Complex64> = (0..=d)
        .map(|j| Complex64::new(rational_to_f64(&poly.coeff(j)) / pw.powi(j as i32), 0.0))
        .collect();
    let u_roots = ComplexPolynomial::new(normalized.clone()).roots();
    if u_roots.len() != d {
        return Err(Error::UnresolvedSatake(format!("found {} of {d} roots", u_roots.len())));
    }
    let x: Vec<Complex64> = u_roots.iter().map(|u| pw / u).collect();
    let matches = |sd: &SatakeData| {
        let rebuilt = spinor_local_complex(sd);
        (0..=d).all(|j| {
            let c = rebuilt.coeff(j) / pw.powi(j as i32);
            (c - normalized[j]).norm() <= 1e-8 * normalized[j].norm().max(1.0)
        })
    };
    for i0 in 0..d {
        let a0 = x[i0];
        let rest: Vec<usize> = (0..d).filter(|&i| i != i0).collect();
        for combo in combinations(rest.len(), g) {
            let mut alpha = vec![a0];
            alpha.extend(combo.iter().map(|&c| x[rest[c]] / a0));
            if let Ok(sd) = SatakeData::new(p, g, k, &alpha, true) {
                if matches(&sd) {
                    return Ok(sd);
                }
            }
        }
    }
    Err(Error::UnresolvedSatake(format!("no labeling of the roots at p = {p} reproduces the factor")))
}

/// All `r`-element index subsets of `0..n`, lexicographic.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}
