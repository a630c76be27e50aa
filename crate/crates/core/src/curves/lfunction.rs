use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisor_bound_constant, smallest_prime_factors};
use crate::dirichlet::{dirichlet_partial, euler_product, DirichletEval, GrowthBound};
use crate::error::Result;
use crate::local::LocalFactor;
use crate::poly::Polynomial;

/// A global L-value computed twice: as a truncated Euler product and as a
/// truncated Dirichlet series of the expanded coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LEval {
    pub euler: DirichletEval,
    /// Absent when `Re s` lies outside the half-plane where the explicit
    /// coefficient bound gives a convergent tail.
    pub dirichlet: Option<DirichletEval>,
}

impl LEval {
    /// `|euler - dirichlet|` against the sum of both error bounds.
    pub fn routes_agree(&self) -> Option<bool> {
        self.dirichlet
            .as_ref()
            .map(|d| (self.euler.value() - d.value()).norm() <= self.euler.error_bound() + d.error_bound())
    }
}

/// Power series of `1 / P(t)` up to `t^m`, for `P(0) = 1`.
fn inverse_series(poly: &Polynomial, m: usize) -> Vec<BigRational> {
    let mut h = vec![BigRational::zero(); m + 1];
    h[0] = BigRational::one();
    for n in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..=n.min(poly.degree().unwrap_or(0)) {
            acc -= poly.coeff(i) * &h[n - i];
        }
        h[n] = acc;
    }
    h
}

/// Dirichlet coefficients `a_1..a_{n_max}` (index 0 holds 0) of
/// `prod_p P_p(p^{-s})^{-1}`; primes without a factor contribute 1.
pub fn expand_dirichlet_coefficients(factors: &BTreeMap<u64, LocalFactor>, n_max: usize) -> Vec<BigRational> {
    let spf = smallest_prime_factors(n_max.max(1));
    let mut local: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
    let mut a = vec![BigRational::zero(); n_max + 1];
    if n_max >= 1 {
        a[1] = BigRational::one();
    }
    for n in 2..=n_max {
        let p = spf[n];
        let pu = p as usize;
        let (mut m, mut e) = (n, 0usize);
        while m % pu == 0 {
            m /= pu;
            e += 1;
        }
        if m > 1 {
            a[n] = &a[n / m] * &a[m];
            continue;
        }
        let series = local.entry(p).or_insert_with(|| {
            let mut top = 0;
            let mut pk = 1usize;
            while pk <= n_max / pu {
                pk *= pu;
                top += 1;
            }
            match factors.get(&p) {
                Some(lf) => inverse_series(&lf.poly, top.max(1)),
                None => {
                    let mut v = vec![BigRational::zero(); top.max(1) + 1];
                    v[0] = BigRational::one();
                    v
                }
            }
        });
        a[n] = series[e].clone();
    }
    a
}

/// Evaluates `prod_{p <= p_max} P_p(p^{-s})^{-1}` and, for cross-validation,
/// the Dirichlet series of its expansion to `n_max = p_max`.
///
/// `root_exponent` is `w` with every inverse root of modulus at most `p^w`
/// (`w = 1/2` for curves). With `D` the largest factor degree, the expanded
/// coefficients satisfy `|a_n| <= d(n)^{D-1} n^w`, bounded explicitly by
/// `C^{D-1} n^{w + 1/4}` with `d(n) <= C n^{1/(4(D-1))}`.
pub fn global_l_eval(
    factors: &BTreeMap<u64, LocalFactor>,
    s: Complex64,
    p_max: u64,
    root_exponent: f64,
) -> Result<LEval> {
    let complex: Vec<(u64, _)> = factors.iter().map(|(&p, lf)| (p, lf.poly.to_complex())).collect();
    let euler = euler_product(&complex, s, p_max, root_exponent)?;
    let degree = factors.values().map(LocalFactor::degree).max().unwrap_or(0);
    let growth = if degree <= 1 {
        GrowthBound::explicit(1.0, root_exponent)
    } else {
        let eps = 0.25 / (degree - 1) as f64;
        GrowthBound::explicit(divisor_bound_constant(eps).powi(degree as i32 - 1), root_exponent + 0.25)
    };
    let dirichlet = if s.re > growth.exponent + 1.0 {
        let n_max = p_max as usize;
        let coeffs = expand_dirichlet_coefficients(factors, n_max);
        Some(dirichlet_partial(&coeffs, s, n_max, &growth)?)
    } else {
        None
    };
    Ok(LEval { euler, dirichlet })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{ec_local_factor, EllipticCurveQ};
    use crate::arith::primes_up_to;
    use crate::local::FactorKind;

    #[test]
    fn empty_product_is_one() {
        let ev = global_l_eval(&BTreeMap::new(), Complex64::new(2.0, 0.0), 100, 0.5).unwrap();
        assert_eq!(ev.euler.value(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn single_geometric_factor() {
        let mut f = BTreeMap::new();
        f.insert(2, LocalFactor::new(2, FactorKind::Frobenius, Polynomial::from_i64(&[1, -1])));
        let s = Complex64::new(3.0, 0.0);
        let ev = global_l_eval(&f, s, 2, 0.0).unwrap();
        assert!((ev.euler.value().re - 1.0 / (1.0 - 0.125)).abs() < 1e-15);
    }

    #[test]
    fn level_eleven_routes_agree_at_two() {
        let e = EllipticCurveQ::new([0, -1, 1, 0, 0]).unwrap();
        let factors: BTreeMap<u64, LocalFactor> =
            primes_up_to(2000).into_iter().map(|p| (p, ec_local_factor(&e, p).unwrap())).collect();
        let ev = global_l_eval(&factors, Complex64::new(2.0, 0.0), 2000, 0.5).unwrap();
        assert_eq!(ev.routes_agree(), Some(true));
        // Coefficients of the expansion are the eta-product coefficients.
        let a = expand_dirichlet_coefficients(&factors, 10);
        let expected = [0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2];
        for (n, &x) in expected.iter().enumerate() {
            assert_eq!(a[n], BigRational::from_integer(x.into()), "n = {n}");
        }
    }
}
