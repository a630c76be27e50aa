//! Truncated q-expansions with exact rational coefficients.
//!
//! A [`QExpansion`] of precision `N` knows its coefficients for exponents
//! `0..=N`. Coefficients are stored densely as integer numerators over one
//! shared positive denominator, which keeps products of integral series
//! (the common case) free of rational normalization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::divisor_sigma_table;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QExpansion {
    precision: usize,
    numer: Vec<BigInt>,
    denom: BigInt,
    weight: Option<i64>,
    level: Option<u64>,
}

impl QExpansion {
    /// Builds an integral expansion. Missing trailing coefficients are zero.
    pub fn from_integers(precision: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        Self::from_parts(precision, coeffs, BigInt::one())
    }

    pub fn from_i64(precision: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_integers(precision, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(precision: usize, coeffs: &[BigRational]) -> Result<Self> {
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Self::from_parts(precision, numer, denom)
    }

    /// `(1 / denom) * sum numer[n] q^n`.
    pub fn from_parts(precision: usize, mut numer: Vec<BigInt>, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if numer.len() > precision + 1 {
            return Err(Error::InvalidInput(format!(
                "{} coefficients exceed precision {precision}",
                numer.len()
            )));
        }
        numer.resize(precision + 1, BigInt::zero());
        let mut out = QExpansion {
            precision,
            numer,
            denom,
            weight: None,
            level: None,
        };
        out.normalize();
        Ok(out)
    }

    pub fn zero(precision: usize) -> Self {
        QExpansion {
            precision,
            numer: vec![BigInt::zero(); precision + 1],
            denom: BigInt::one(),
            weight: None,
            level: None,
        }
    }

    pub fn one(precision: usize) -> Self {
        let mut z = Self::zero(precision);
        z.numer[0] = BigInt::one();
        z
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_level(mut self, level: u64) -> Self {
        self.level = Some(level);
        self
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn level(&self) -> Option<u64> {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Coefficient of `q^n`. Reading past the precision is an error.
    pub fn coeff(&self, n: usize) -> Result<BigRational> {
        if n > self.precision {
            return Err(Error::PrecisionExhausted {
                requested: n,
                precision: self.precision,
            });
        }
        Ok(BigRational::new(self.numer[n].clone(), self.denom.clone()))
    }

    /// Coefficient of `q^n` as an integer, when the series is integral.
    pub fn coeff_integer(&self, n: usize) -> Result<BigInt> {
        let c = self.coeff(n)?;
        if !c.is_integer() {
            return Err(Error::InvalidInput(format!("coefficient {n} is not integral")));
        }
        Ok(c.to_integer())
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.numer
            .iter()
            .map(|c| BigRational::new(c.clone(), self.denom.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.iter().all(Zero::is_zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.numer.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        let mut out = self.clone();
        out.numer.truncate(precision + 1);
        out.precision = precision;
        out.normalize();
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for x in out.numer.iter_mut() {
            *x *= c.numer();
        }
        out.denom *= c.denom();
        out.normalize();
        out
    }

    /// Multiplies by `q^k`; the result is known up to `precision + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut numer = vec![BigInt::zero(); k];
        numer.extend(self.numer.iter().cloned());
        QExpansion {
            precision: self.precision + k,
            numer,
            denom: self.denom.clone(),
            weight: self.weight,
            level: self.level,
        }
    }

    /// Multiplicative inverse up to precision.
    pub fn invert(&self) -> Result<Self> {
        let f0 = &self.numer[0];
        if f0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.precision;
        // 1/F = H_m / F_0^{m+1} with integral H, F the numerator series.
        let mut h: Vec<BigInt> = Vec::with_capacity(n + 1);
        h.push(BigInt::one());
        let mut f0_pows = vec![BigInt::one()];
        for m in 1..=n {
            f0_pows.push(&f0_pows[m - 1] * f0);
            let mut acc = BigInt::zero();
            for k in 1..=m {
                if !self.numer[k].is_zero() {
                    acc -= &self.numer[k] * &h[m - k] * &f0_pows[k - 1];
                }
            }
            h.push(acc);
        }
        let top = &f0_pows[n] * f0;
        let numer = h
            .into_iter()
            .enumerate()
            .map(|(m, hm)| hm * &f0_pows[n - m] * &self.denom)
            .collect();
        let mut out = QExpansion {
            precision: n,
            numer,
            denom: top,
            weight: self.weight.map(|w| -w),
            level: self.level,
        };
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = QExpansion::one(self.precision);
        acc.weight = self.weight.map(|_| 0);
        acc.level = self.level;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn normalize(&mut self) {
        if self.denom.is_negative() {
            self.denom = -&self.denom;
            for x in self.numer.iter_mut() {
                *x = -&*x;
            }
        }
        if self.denom.is_one() {
            return;
        }
        let mut g = self.denom.clone();
        for x in &self.numer {
            if g.is_one() {
                return;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            for x in self.numer.iter_mut() {
                *x /= &g;
            }
            self.denom /= &g;
        }
    }

    fn combine_tags(&self, other: &Self, weight: Option<i64>) -> (Option<i64>, Option<u64>) {
        let level = match (self.level, other.level) {
            (Some(a), Some(b)) => Some(a.lcm(&b)),
            _ => None,
        };
        (weight, level)
    }
}

impl PartialEq for QExpansion {
    /// Exact equality of precision and coefficient tables; weight and level
    /// tags are metadata and do not participate.
    fn eq(&self, other: &Self) -> bool {
        self.precision == other.precision && self.denom == other.denom && self.numer == other.numer
    }
}

impl Eq for QExpansion {}

impl<'a> Add<&'a QExpansion> for &'a QExpansion {
    type Output = QExpansion;

    fn add(self, rhs: &QExpansion) -> QExpansion {
        let precision = self.precision.min(rhs.precision);
        let l = self.denom.lcm(&rhs.denom);
        let fa = &l / &self.denom;
        let fb = &l / &rhs.denom;
        let numer = (0..=precision)
            .map(|i| &self.numer[i] * &fa + &rhs.numer[i] * &fb)
            .collect();
        let weight = (self.weight == rhs.weight).then_some(self.weight).flatten();
        let (weight, level) = self.combine_tags(rhs, weight);
        let mut out = QExpansion {
            precision,
            numer,
            denom: l,
            weight,
            level,
        };
        out.normalize();
        out
    }
}

impl Neg for &QExpansion {
    type Output = QExpansion;

    fn neg(self) -> QExpansion {
        let mut out = self.clone();
        for x in out.numer.iter_mut() {
            *x = -&*x;
        }
        out
    }
}

impl<'a> Sub<&'a QExpansion> for &'a QExpansion {
    type Output = QExpansion;

    fn sub(self, rhs: &QExpansion) -> QExpansion {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QExpansion> for &'a QExpansion {
    type Output = QExpansion;

    /// Cauchy product truncated to the smaller precision.
    fn mul(self, rhs: &QExpansion) -> QExpansion {
        let precision = self.precision.min(rhs.precision);
        let mut numer = vec![BigInt::zero(); precision + 1];
        for (i, a) in self.numer.iter().take(precision + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.numer.iter().take(precision + 1 - i).enumerate() {
                if !b.is_zero() {
                    numer[i + j] += a * b;
                }
            }
        }
        let weight = match (self.weight, rhs.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let (weight, level) = self.combine_tags(rhs, weight);
        let mut out = QExpansion {
            precision,
            numer,
            denom: &self.denom * &rhs.denom,
            weight,
            level,
        };
        out.normalize();
        out
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision + 1)
    }
}

/// Expands the eta quotient `prod_d eta(d tau)^{r_d}` to the given precision.
///
/// The exponent shift `sum d r_d / 24` must be a nonnegative integer. The
/// product `prod_d (q^d; q^d)^{r_d}` is generated from its logarithmic
/// derivative, `q h'/h = -sum_n (sum_{d | n} d r_d sigma(n/d)) q^n`, which
/// handles negative `r_d` without series inversion.
pub fn eta_expand(quotient: &[(u64, i64)], precision: usize) -> Result<QExpansion> {
    if quotient.iter().any(|&(d, _)| d == 0) {
        return Err(Error::UnsupportedEtaQuotient("d must be positive".into()));
    }
    let total: i64 = quotient.iter().map(|&(d, r)| d as i64 * r).sum();
    if total.rem_euclid(24) != 0 {
        return Err(Error::UnsupportedEtaQuotient(format!(
            "leading exponent {total}/24 is not integral"
        )));
    }
    if total < 0 {
        return Err(Error::UnsupportedEtaQuotient(format!(
            "leading exponent {} is negative",
            total / 24
        )));
    }
    let shift = (total / 24) as usize;
    if shift > precision {
        return Ok(QExpansion::zero(precision));
    }
    let m = precision - shift;
    let sigma = divisor_sigma_table(1, m);
    let mut log_deriv = vec![BigInt::zero(); m + 1];
    for &(d, r) in quotient {
        let d = d as usize;
        if r == 0 {
            continue;
        }
        let mut k = 1;
        while d * k <= m {
            log_deriv[d * k] -= &sigma[k] * BigInt::from(d as i64 * r);
            k += 1;
        }
    }
    let mut h = Vec::with_capacity(m + 1);
    h.push(BigInt::one());
    for n in 1..=m {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            if !log_deriv[j].is_zero() && !h[n - j].is_zero() {
                acc += &log_deriv[j] * &h[n - j];
            }
        }
        debug_assert!((&acc % BigInt::from(n)).is_zero());
        h.push(acc / BigInt::from(n));
    }
    let weight: i64 = quotient.iter().map(|&(_, r)| r).sum();
    let body = QExpansion::from_integers(m, h)?;
    let mut out = body.shift_up(shift);
    if weight % 2 == 0 {
        out.weight = Some(weight / 2);
    }
    Ok(out)
}
