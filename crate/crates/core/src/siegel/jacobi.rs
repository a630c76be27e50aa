//! Index-1 Jacobi forms through their coefficients `c(D)`, and the Jacobi
//! cusp forms of weight 10 and 12 built from Eisenstein series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cohen::{jacobi_eisenstein, JacobiCoefficients};
use crate::error::{Error, Result};
use crate::forms::{eisenstein_qexp, ClassicalForm};

impl JacobiCoefficients {
    /// `g * phi` for an elliptic form `g = sum b_m q^m`:
    /// `c'(D) = sum_{4m <= D} b_m c(D - 4m)`.
    pub fn times_modular(&self, g: &ClassicalForm) -> Result<Self> {
        let d_max = self.d_max();
        let needed = (d_max / 4) as usize;
        if g.precision() <= needed {
            return Err(Error::PrecisionExhausted {
                requested: needed,
                precision: g.precision(),
            });
        }
        let b: Vec<BigRational> = (0..=needed).map(|m| g.coeff(m)).collect::<Result<_>>()?;
        let coeffs = (0..=d_max as usize)
            .map(|d| {
                let mut acc = BigRational::zero();
                for (m, bm) in b.iter().enumerate().take(d / 4 + 1) {
                    if !bm.is_zero() {
                        acc += bm * &self.coeffs[d - 4 * m];
                    }
                }
                acc
            })
            .collect();
        Ok(JacobiCoefficients {
            weight: self.weight + g.weight,
            coeffs,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        JacobiCoefficients {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Difference of two forms of equal weight, truncated to the shorter table.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::UnsupportedWeight(other.weight));
        }
        Ok(JacobiCoefficients {
            weight: self.weight,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn is_cuspidal(&self) -> bool {
        self.coeffs.first().is_none_or(Zero::is_zero)
    }
}

/// `phi_{10,1} = (E6 E_{4,1} - E4 E_{6,1}) / 144` and
/// `phi_{12,1} = (E4^2 E_{4,1} - E6 E_{6,1}) / 144`, both with `c(3) = 1`.
pub fn jacobi_cusp_form(k: i64, d_max: u64) -> Result<JacobiCoefficients> {
    let prec = (d_max / 4) as usize + 1;
    let e41 = jacobi_eisenstein(4, d_max)?;
    let e61 = jacobi_eisenstein(6, d_max)?;
    let e4 = eisenstein_qexp(4, prec)?;
    let e6 = eisenstein_qexp(6, prec)?;
    let (x, y) = match k {
        10 => (e41.times_modular(&e6)?, e61.times_modular(&e4)?),
        12 => (e41.times_modular(&e4.product(&e4))?, e61.times_modular(&e6)?),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    Ok(x.sub(&y)?.scale(&BigRational::new(BigInt::from(1), BigInt::from(144))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    type Bivariate = BTreeMap<(i64, i64), i64>;

    fn mul(x: &Bivariate, y: &Bivariate, n_max: i64) -> Bivariate {
        let mut out = Bivariate::new();
        for (&(n1, r1), &c1) in x {
            for (&(n2, r2), &c2) in y {
                if n1 + n2 <= n_max {
                    *out.entry((n1 + n2, r1 + r2)).or_insert(0) += c1 * c2;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// `q (zeta - 2 + zeta^{-1}) prod_n (1-q^n)^20 (1-q^n zeta)^2 (1-q^n zeta^{-1})^2`.
    fn phi10_product(n_max: i64) -> Bivariate {
        let mut acc: Bivariate = [((1, 1), 1), ((1, 0), -2), ((1, -1), 1)].into_iter().collect();
        for n in 1..=n_max {
            for (rr, e) in [(0, 20), (1, 2), (-1, 2)] {
                let f: Bivariate = [((0, 0), 1), ((n, rr), -1)].into_iter().collect();
                for _ in 0..e {
                    acc = mul(&acc, &f, n_max);
                }
            }
        }
        acc
    }

    #[test]
    fn phi10_matches_product_formula() {
        let n_max = 6;
        let phi = jacobi_cusp_form(10, 4 * n_max as u64).unwrap();
        let prod = phi10_product(n_max);
        for (&(n, rr), &c) in &prod {
            let d = 4 * n - rr * rr;
            assert!(d >= 0, "({n}, {rr})");
            assert_eq!(phi.get(d as u64).unwrap(), r(c), "D = {d}");
        }
        assert_eq!(phi.get(3).unwrap(), r(1));
        assert_eq!(phi.get(4).unwrap(), r(-2));
        assert!(phi.is_cuspidal());
    }

    #[test]
    fn phi12_leading_values() {
        let phi = jacobi_cusp_form(12, 8).unwrap();
        assert_eq!(phi.get(0).unwrap(), r(0));
        assert_eq!(phi.get(3).unwrap(), r(1));
        assert_eq!(phi.get(4).unwrap(), r(10));
        assert!(jacobi_cusp_form(8, 8).is_err());
    }
}
