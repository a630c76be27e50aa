//! Dense univariate polynomials in `t`: exact rational ones for local
//! factors, complex floating ones for Satake-parameter work, and a numeric
//! root finder.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational_to_f64;
use crate::codec;

/// Polynomial with rational coefficients in ascending degree. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "codec::rational_vec")]
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 - c t`
    pub fn linear_factor(c: BigRational) -> Self {
        Self::new(vec![BigRational::one(), -c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if the polynomial is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division: `(quotient, remainder)`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free factorization: squarefree, pairwise coprime factors
    /// `(f_i, i)` with `self = c * prod f_i^i`.
    pub fn squarefree_factorization(&self) -> Vec<(Polynomial, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(rational_to_f64(c), 0.0))
                .collect(),
        )
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.to_complex().eval(t)
    }

    /// Complex roots with multiplicity. Multiplicities are found exactly by
    /// square-free factorization; only simple roots are computed numerically.
    pub fn roots(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (factor, mult) in self.squarefree_factorization() {
            let r = factor.to_complex().roots();
            for _ in 0..mult {
                out.extend(r.iter().copied());
            }
        }
        out
    }

    /// Reverse polynomial `t^d P(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with complex floating coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        ComplexPolynomial { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)])
    }

    /// `prod_i (1 - beta_i t)`
    pub fn from_reciprocal_roots(betas: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &b in betas {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &x) in c.iter().enumerate() {
                next[i] += x;
                next[i + 1] -= x * b;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// `sum |c_i| |t|^i`, the natural scale for rounding errors of `eval`.
    pub fn eval_abs(&self, t: Complex64) -> f64 {
        let r = t.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Roots by the Aberth-Ehrlich iteration on a rescaled polynomial,
    /// followed by Newton polishing. Intended for squarefree input of modest
    /// degree; repeated roots converge only to about half precision.
    pub fn roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        let mut zeros = 0;
        while zeros < n && self.coeffs[zeros].norm() == 0.0 {
            zeros += 1;
        }
        let c = &self.coeffs[zeros..];
        let n = c.len() - 1;
        let mut out = vec![Complex64::new(0.0, 0.0); zeros];
        if n == 0 {
            return out;
        }
        // x = rho y puts the roots near the unit circle.
        let rho = (c[0].norm() / c[n].norm()).powf(1.0 / n as f64);
        let mut scaled: Vec<Complex64> = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| ci * rho.powi(i as i32))
            .collect();
        let m = scaled.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for x in scaled.iter_mut() {
            *x /= m;
        }
        let p = ComplexPolynomial { coeffs: scaled };
        let dp = p.derivative();
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
            .collect();
        for _ in 0..1000 {
            let mut max_step: f64 = 0.0;
            for k in 0..n {
                let pv = p.eval(z[k]);
                let dv = dp.eval(z[k]);
                if pv.norm() == 0.0 {
                    continue;
                }
                let ratio = pv / dv;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[k] -= step;
                    max_step = max_step.max(step.norm() / z[k].norm().max(1e-300));
                }
            }
            if max_step < 1e-15 {
                break;
            }
        }
        for zk in z.iter_mut() {
            for _ in 0..3 {
                let dv = dp.eval(*zk);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = p.eval(*zk) / dv;
                if step.is_finite() {
                    *zk -= step;
                }
            }
        }
        out.extend(z.into_iter().map(|y| y * rho));
        out
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it lies within `tol` of `x`.
pub fn rational_approximation(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let rounded = x.round();
    if (x - rounded).abs() <= tol {
        return Some(BigRational::from_integer(BigInt::from(rounded as i128)));
    }
    // Continued-fraction convergents.
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            break;
        }
        let a = a as i128;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 as u128 > max_den as u128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        let frac = r - r.floor();
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Rounds a real number to the nearest integer when that is exactly
/// representable, i.e. `|x| < 2^52`.
pub fn round_exact_integer(x: f64, tol: f64) -> Option<BigInt> {
    if !x.is_finite() || x.abs() >= 4_503_599_627_370_496.0 {
        return None;
    }
    let r = x.round();
    ((x - r).abs() <= tol).then(|| BigInt::from(r.to_i64().expect("in range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_and_gcd() {
        // (t - 1)^2 (t + 2)
        let f = Polynomial::from_i64(&[2, -3, 0, 1]);
        let g = Polynomial::from_i64(&[-1, 1]);
        let (q, rem) = f.div_rem(&g);
        assert!(rem.is_zero());
        assert_eq!(&q * &g, f);
        assert_eq!(f.gcd(&f.derivative()), g);
    }

    #[test]
    fn squarefree_factorization_recovers_multiplicities() {
        let a = Polynomial::from_i64(&[1, 1]);
        let b = Polynomial::from_i64(&[-2, 0, 1]);
        let f = &a.pow(3) * &b;
        let sf = f.squarefree_factorization();
        assert_eq!(sf, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn roots_of_repeated_factors_are_accurate() {
        // (1 + 7 t^2)^2: four roots of modulus 7^{-1/2}.
        let f = Polynomial::from_i64(&[1, 0, 14, 0, 49]);
        let roots = f.roots();
        assert_eq!(roots.len(), 4);
        for z in roots {
            assert!((z.norm() - 7f64.powf(-0.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn roots_with_wide_coefficient_range() {
        let betas = [
            Complex64::new(512.0, 0.0),
            Complex64::new(256.0, 0.0),
            Complex64::new(-100.0, 300.0),
            Complex64::new(-100.0, -300.0),
        ];
        let p = ComplexPolynomial::from_reciprocal_roots(&betas);
        let roots = p.roots();
        assert_eq!(roots.len(), 4);
        for e in betas.iter().map(|b| b.inv()) {
            let best = roots.iter().map(|z| (z - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(best / e.norm() < 1e-12, "{e} not found in {roots:?}");
        }
    }

    #[test]
    fn rational_approximation_recovers_fractions() {
        assert_eq!(rational_approximation(0.333333333333, 100, 1e-9), Some(r(1, 3)));
        assert_eq!(rational_approximation(-2048.0000000001, 10, 1e-6), Some(r(-2048, 1)));
        assert_eq!(rational_approximation(std::f64::consts::PI, 100, 1e-9), None);
    }

    #[test]
    fn display() {
        let p = Polynomial::from_i64(&[1, -1, 5]);
        assert_eq!(p.to_string(), "1 - t + 5t^2");
    }
}
