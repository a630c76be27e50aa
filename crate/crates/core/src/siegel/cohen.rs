use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli_numbers, binomial, divisor_sigma, divisors, kronecker, mobius, squarefree_decomposition};
use crate::error::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

type LKey = (u32, i64);

fn l_cache() -> &'static RwLock<HashMap<LKey, BigRational>> {
    static CACHE: OnceLock<RwLock<HashMap<LKey, BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `L(1 - r, chi_D) = -B_{r, chi} / r` for a fundamental discriminant `D`
/// (`D = 1` gives the Riemann zeta value), with
/// `B_{r, chi} = f^{r-1} sum_{a=1}^{f} chi(a) B_r(a / f)`, `f = |D|`.
pub fn l_value_negative(r: u32, d: i64) -> BigRational {
    if let Some(v) = l_cache().read().expect("cache lock").get(&(r, d)) {
        return v.clone();
    }
    let ru = r as usize;
    let value = if d == 1 {
        // zeta(1 - r) = -B_r / r with B_1 = +1/2 for the trivial character.
        if r == 1 {
            rat(-1) / rat(2)
        } else {
            -crate::arith::bernoulli(ru) / rat(r as i64)
        }
    } else {
        // B_{r,chi} = sum_j C(r, j) B_j f^{j-1} S_{r-j} with S_m = sum_a chi(a) a^m.
        let b = bernoulli_numbers(ru);
        let f = d.unsigned_abs();
        let mut power_sums = vec![BigInt::zero(); ru + 1];
        for a in 1..=f {
            let chi = kronecker(d, a);
            if chi == 0 {
                continue;
            }
            let mut pw = BigInt::one();
            for sm in power_sums.iter_mut() {
                if chi > 0 {
                    *sm += &pw;
                } else {
                    *sm -= &pw;
                }
                pw *= a;
            }
        }
        let fr = BigRational::from_integer(BigInt::from(f));
        let mut bchi = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            let fpow = if j == 0 { fr.recip() } else { num_traits::pow(fr.clone(), j - 1) };
            bchi += BigRational::from_integer(binomial(r as u64, j as u64) * &power_sums[ru - j]) * bj * fpow;
        }
        -bchi / rat(r as i64)
    };
    l_cache().write().expect("cache lock").insert((r, d), value.clone());
    value
}

/// Splits `m = D f^2` with `D` a fundamental discriminant; `m` must be
/// nonzero and `0` or `1 mod 4`.
pub fn fundamental_part(m: i64) -> (i64, u64) {
    let (core, s) = squarefree_decomposition(m.unsigned_abs());
    let d0 = if m < 0 { -(core as i64) } else { core as i64 };
    if d0.rem_euclid(4) == 1 {
        (d0, s)
    } else {
        (4 * d0, s / 2)
    }
}

/// Cohen's function `H(r, N)`: `H(r, 0) = zeta(1 - 2r)`, and for `N > 0`
/// with `(-1)^r N = D f^2`,
/// `H(r, N) = L(1 - r, chi_D) sum_{d | f} mu(d) chi_D(d) d^{r-1} sigma_{2r-1}(f/d)`;
/// zero when `(-1)^r N = 2, 3 mod 4`.
pub fn cohen_h(r: u32, n: u64) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    if n == 0 {
        let two_r = 2 * r as usize;
        return Ok(-crate::arith::bernoulli(two_r) / rat(two_r as i64));
    }
    let m = if r % 2 == 0 { n as i64 } else { -(n as i64) };
    if matches!(m.rem_euclid(4), 2 | 3) {
        return Ok(BigRational::zero());
    }
    let (d, f) = fundamental_part(m);
    let mut sum = BigInt::zero();
    for e in divisors(f) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d, e);
        if chi == 0 {
            continue;
        }
        let term = BigInt::from(e).pow(r - 1) * divisor_sigma(2 * r - 1, f / e);
        sum += term * (mu * chi);
    }
    Ok(l_value_negative(r, d) * BigRational::from_integer(sum))
}

/// Coefficients `c(D)`, `0 <= D <= D_max`, of an index-1 Jacobi form
/// `sum c(4n - r^2) q^n zeta^r`; `c(D) = 0` unless `D = 0, 3 mod 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiCoefficients {
    pub weight: i64,
    #[serde(with = "crate::codec::rational_vec")]
    pub coeffs: Vec<BigRational>,
}

/// Coefficient table of the normalized index-1 Jacobi Eisenstein series.
pub type JacobiEisensteinTable = JacobiCoefficients;

impl JacobiCoefficients {
    pub fn d_max(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn get(&self, d: u64) -> Result<BigRational> {
        self.coeffs.get(d as usize).cloned().ok_or(Error::PrecisionExhausted {
            requested: d as usize,
            precision: self.coeffs.len() - 1,
        })
    }
}

/// `E_{k,1}`: `c_k(D) = H(k - 1, D) / H(k - 1, 0)`.
pub fn jacobi_eisenstein(k: i64, d_max: u64) -> Result<JacobiEisensteinTable> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    let r = (k - 1) as u32;
    let h0 = cohen_h(r, 0)?;
    let coeffs = (0..=d_max)
        .into_par_iter()
        .map(|d| cohen_h(r, d).map(|h| h / &h0))
        .collect::<Result<Vec<_>>>()?;
    Ok(JacobiCoefficients { weight: k, coeffs })
}
