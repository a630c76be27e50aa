use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::{FactorKind, LocalFactor};
use crate::poly::Polynomial;

/// `P(t) = det(1 - Frob_p t)` on an abelian variety of dimension `g`:
/// integer coefficients `c_0 = 1, ..., c_{2g} = p^g`.
///
/// JSON form: `{"p": 7, "g": 2, "coeffs": [1, c1, c2, 7 c1, 49]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusPoly {
    pub p: u64,
    pub g: usize,
    pub coeffs: Vec<i64>,
}

fn overflow(p: u64) -> Error {
    Error::InconsistentCounts {
        p,
        reason: "coefficient overflow".into(),
    }
}

/// Builds `P(t)` from the point counts `N_1, ..., N_g` over `F_{p^r}`. The
/// power sums `s_r = p^r + 1 - N_r` of the Frobenius eigenvalues determine
/// `c_1..c_g` through Newton's identities, and `c_{2g-i} = p^{g-i} c_i`
/// determines the rest.
pub fn frobenius_from_counts(counts: &[u64], p: u64, g: usize) -> Result<FrobeniusPoly> {
    if counts.len() != g || g == 0 {
        return Err(Error::InvalidInput(format!("need {g} counts, got {}", counts.len())));
    }
    let pi = p as i64;
    let mut s = vec![0i64];
    for (r, &n) in counts.iter().enumerate() {
        let pr = pi.checked_pow(r as u32 + 1).ok_or_else(|| overflow(p))?;
        s.push(pr + 1 - n as i64);
    }
    let mut c = vec![1i64];
    for j in 1..=g {
        let mut acc = 0i64;
        for i in 1..=j {
            acc = acc
                .checked_sub(s[i].checked_mul(c[j - i]).ok_or_else(|| overflow(p))?)
                .ok_or_else(|| overflow(p))?;
        }
        if acc % j as i64 != 0 {
            return Err(Error::InconsistentCounts {
                p,
                reason: format!("Newton identity for c_{j} gives {acc}/{j}"),
            });
        }
        c.push(acc / j as i64);
    }
    for j in g + 1..=2 * g {
        let scale = pi.checked_pow((j - g) as u32).ok_or_else(|| overflow(p))?;
        c.push(c[2 * g - j].checked_mul(scale).ok_or_else(|| overflow(p))?);
    }
    Ok(FrobeniusPoly { p, g, coeffs: c })
}

/// The genus-2 case: `P(t) = 1 + c1 t + c2 t^2 + p c1 t^3 + p^2 t^4`.
pub fn frobenius_poly(n1: u64, n2: u64, p: u64) -> Result<FrobeniusPoly> {
    frobenius_from_counts(&[n1, n2], p, 2)
}

impl FrobeniusPoly {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_i64(&self.coeffs)
    }

    /// `t^{2g} P(p / t) = p^g P(t)`, checked as `c_{2g-i} = p^{g-i} c_i`.
    pub fn weil_symmetric(&self) -> bool {
        let d = 2 * self.g;
        if self.coeffs.len() != d + 1 || self.coeffs[0] != 1 {
            return false;
        }
        let p = BigInt::from(self.p);
        (0..=d).all(|i| {
            // c_{2g-i} p^{i} = p^{g} c_i, valid for every i without division.
            BigInt::from(self.coeffs[d - i]) * p.pow(i as u32) == BigInt::from(self.coeffs[i]) * p.pow(self.g as u32)
        })
    }

    /// Largest deviation of `|root|` from `p^{-1/2}` over the complex roots.
    pub fn root_modulus_deviation(&self) -> f64 {
        let target = (self.p as f64).powf(-0.5);
        self.polynomial()
            .roots()
            .iter()
            .map(|z| (z.norm() - target).abs() / target)
            .fold(0.0, f64::max)
    }

    /// Power sums `s_1..s_m` of the Frobenius eigenvalues.
    pub fn power_sums(&self, m: usize) -> Vec<i128> {
        let c: Vec<i128> = self.coeffs.iter().map(|&x| x as i128).collect();
        let d = c.len() - 1;
        let mut s = vec![0i128; m + 1];
        for r in 1..=m {
            // Newton: s_r + sum_{i=1}^{r-1} c_i s_{r-i} + r c_r = 0, c_i = 0 for i > 2g.
            let mut acc = if r <= d { -(r as i128) * c[r] } else { 0 };
            for i in 1..r.min(d + 1) {
                acc -= c[i] * s[r - i];
            }
            s[r] = acc;
        }
        s.split_off(1)
    }

    /// `N_r = p^r + 1 - s_r`, the number of points of the curve over `F_{p^r}`.
    pub fn curve_count(&self, r: usize) -> i128 {
        let s = self.power_sums(r);
        (self.p as i128).pow(r as u32) + 1 - s[r - 1]
    }
}

/// The local L-factor of the abelian variety is `P(p^{-s})^{-1}`; the stored
/// polynomial is `P` itself.
pub fn abelian_local_lfactor(frob: &FrobeniusPoly) -> LocalFactor {
    LocalFactor::new(frob.p, FactorKind::Frobenius, frob.polynomial())
}
