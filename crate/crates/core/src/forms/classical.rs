use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, divisor_sigma_table, is_prime, pow_u64, smallest_prime_factors};
use crate::error::{Error, Result};
use crate::series::QExpansion;

/// A q-expansion tagged with weight `k` and level `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalForm {
    pub expansion: QExpansion,
    pub weight: i64,
    pub level: u64,
    pub is_cusp: bool,
}

impl ClassicalForm {
    pub fn new(expansion: QExpansion, weight: i64, level: u64, is_cusp: bool) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        if is_cusp && !expansion.coeff(0)?.is_zero() {
            return Err(Error::InvalidInput("cusp form with nonzero constant term".into()));
        }
        let expansion = expansion.with_weight(weight).with_level(level);
        Ok(ClassicalForm { expansion, weight, level, is_cusp })
    }

    pub fn precision(&self) -> usize {
        self.expansion.precision()
    }

    pub fn coeff(&self, n: usize) -> Result<BigRational> {
        self.expansion.coeff(n)
    }

    /// `a_n` as an integer; fails for non-integral coefficients.
    pub fn coeff_integer(&self, n: usize) -> Result<BigInt> {
        self.expansion.coeff_integer(n)
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.coeff(1), Ok(c) if c.is_one()) && matches!(self.coeff(0), Ok(c) if c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> Self {
        ClassicalForm {
            expansion: self.expansion.truncate(precision),
            ..self.clone()
        }
    }

    /// Product of forms: weights add, levels combine by lcm.
    pub fn product(&self, other: &ClassicalForm) -> Self {
        let level = num_integer::lcm(self.level, other.level);
        let weight = self.weight + other.weight;
        ClassicalForm {
            expansion: (&self.expansion * &other.expansion).with_weight(weight).with_level(level),
            weight,
            level,
            is_cusp: self.is_cusp || other.is_cusp,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassicalForm {
            expansion: self.expansion.scale(c),
            ..self.clone()
        }
    }
}

/// `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein_qexp(k: i64, precision: usize) -> Result<ClassicalForm> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    let sigma = divisor_sigma_table((k - 1) as u32, precision);
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigRational::one());
    for s in sigma.into_iter().skip(1) {
        coeffs.push(&factor * BigRational::from_integer(s));
    }
    ClassicalForm::new(QExpansion::from_rationals(precision, &coeffs)?, k, 1, false)
}

/// `Delta = (E_4^3 - E_6^2) / 1728`.
pub fn delta_qexp(precision: usize) -> ClassicalForm {
    let e4 = eisenstein_qexp(4, precision).expect("weight 4 is supported");
    let e6 = eisenstein_qexp(6, precision).expect("weight 6 is supported");
    let e4_cubed = e4.expansion.pow(3);
    let e6_squared = e6.expansion.pow(2);
    let diff = &e4_cubed - &e6_squared;
    let delta = diff.scale(&BigRational::new(BigInt::one(), BigInt::from(1728)));
    ClassicalForm::new(delta, 12, 1, true).expect("Delta has zero constant term")
}

/// Hecke operator on coefficients: `a_n(T_p f) = a_{np} + p^{k-1} a_{n/p}`.
/// The output precision is `floor(precision / p)`.
pub fn hecke_tp(f: &ClassicalForm, p: u64) -> Result<ClassicalForm> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if f.level % p == 0 {
        return Err(Error::BadPrimeForLevel { p, level: f.level });
    }
    if f.weight < 1 {
        return Err(Error::UnsupportedWeight(f.weight));
    }
    let pu = p as usize;
    let out_prec = f.precision() / pu;
    if out_prec == 0 {
        return Err(Error::PrecisionExhausted {
            requested: pu,
            precision: f.precision(),
        });
    }
    let pk1 = BigRational::from_integer(pow_u64(p, (f.weight - 1) as u32));
    let mut coeffs = Vec::with_capacity(out_prec + 1);
    for n in 0..=out_prec {
        let mut c = f.coeff(n * pu)?;
        if n % pu == 0 {
            c += &pk1 * f.coeff(n / pu)?;
        }
        coeffs.push(c);
    }
    ClassicalForm::new(QExpansion::from_rationals(out_prec, &coeffs)?, f.weight, f.level, f.is_cusp)
}

/// Returns `lambda_p` with `T_p f = lambda_p f` on every computable
/// coefficient. For a normalized eigenform `lambda_p = a_p(f)`.
pub fn eigenvalue_check(f: &ClassicalForm, p: u64) -> Result<BigRational> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized(format!(
            "a_0 = {}, a_1 = {}",
            f.coeff(0)?,
            f.coeff(1)?
        )));
    }
    let tf = hecke_tp(f, p)?;
    let lambda = tf.coeff(1)?;
    for n in 0..=tf.precision() {
        if tf.coeff(n)? != &lambda * f.coeff(n)? {
            return Err(Error::NotAnEigenvector { p, n });
        }
    }
    Ok(lambda)
}

/// Multiplicative extension of Hecke eigenvalues to `a_1, ..., a_{n_max}`
/// (index 0 holds 0). `eigen` covers good primes, `bad` primes dividing `N`.
pub fn coeffs_from_eigenvalues(
    eigen: &BTreeMap<u64, BigRational>,
    bad: &BTreeMap<u64, BigRational>,
    k: i64,
    level: u64,
    n_max: usize,
) -> Result<Vec<BigRational>> {
    let spf = smallest_prime_factors(n_max.max(1));
    let mut a = vec![BigRational::zero(); n_max + 1];
    if n_max >= 1 {
        a[1] = BigRational::one();
    }
    for n in 2..=n_max {
        let p = spf[n];
        let pu = p as usize;
        let mut pe = 1usize;
        let mut m = n;
        while m % pu == 0 {
            m /= pu;
            pe *= pu;
        }
        if m > 1 {
            a[n] = &a[pe] * &a[m];
            continue;
        }
        let good = level % p != 0;
        let ap = if good { eigen.get(&p) } else { bad.get(&p) }.ok_or(Error::IncompleteEigenData(p))?;
        a[n] = if pe == pu {
            ap.clone()
        } else if good {
            let pk1 = BigRational::from_integer(pow_u64(p, (k - 1) as u32));
            ap * &a[pe / pu] - pk1 * &a[pe / (pu * pu)]
        } else {
            ap * &a[pe / pu]
        };
    }
    Ok(a)
}

/// Serializable coefficient table `{weight, level, precision, coeffs}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCoefficients {
    pub weight: i64,
    pub level: u64,
    pub precision: usize,
    #[serde(with = "crate::codec::rational_vec")]
    pub coeffs: Vec<BigRational>,
}

impl From<&ClassicalForm> for FormCoefficients {
    fn from(f: &ClassicalForm) -> Self {
        FormCoefficients {
            weight: f.weight,
            level: f.level,
            precision: f.precision(),
            coeffs: f.expansion.coefficients(),
        }
    }
}
