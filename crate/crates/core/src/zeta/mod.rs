//! Spinor and standard zeta functions: Satake parameters, local factors,
//! Saito-Kurokawa eigenvalues and Euler products.

mod saito;
mod satake;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisor_bound_constant, primes_up_to, rational_to_f64, smallest_prime_factors};
use crate::dirichlet::{dirichlet_partial, euler_product, DirichletEval, GrowthBound};
use crate::error::{Error, Result};
use crate::forms::ClassicalForm;
use crate::poly::{ComplexPolynomial, Polynomial};

pub use saito::{
    eigenvalue_from_expansion, hecke_tp_coefficient, sk_eigenvalues, spinor_local_g2_from_eigenvalues,
    EigenvalueData,
};
pub use satake::{
    satake_from_local, satake_g1, spinor_local, spinor_local_complex, spinor_local_g1, standard_local,
    standard_local_g1, weight_exponent, SatakeData, SATAKE_TOL,
};

/// `prod_{p <= p_max} P_p(p^{-s})^{-1}` over the supplied factors, with
/// inverse roots of modulus at most `p^{root_exponent}` assumed for the tail.
pub fn euler_eval(local: &BTreeMap<u64, Polynomial>, s: Complex64, p_max: u64, root_exponent: f64) -> Result<DirichletEval> {
    let factors: Vec<(u64, ComplexPolynomial)> = local.iter().map(|(&p, poly)| (p, poly.to_complex())).collect();
    euler_product(&factors, s, p_max, root_exponent)
}

/// Both sides of the `g = 1` standard-zeta identity, product reading:
/// `LHS = D_f(s - k + 1)` and `RHS = prod_p (1 + p^{k-s-1})^{-1} sum_n a(n^2) n^{-s}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardIdentityReport {
    pub weight: i64,
    pub s: f64,
    pub p_max: u64,
    pub n_max: usize,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub difference: f64,
    /// Bound on `|LHS - RHS|` from truncation and rounding alone, valid if
    /// the identity holds exactly.
    pub tail_bound: f64,
    /// `prod_{p <= p_max} (1 - p^{k-s-1})^{-1}`, a truncated `zeta(s - k + 1)`.
    pub zeta_shift: f64,
    /// `|LHS - zeta_shift RHS|`: the gap after restoring the factor
    /// `zeta(s - k + 1)`.
    pub corrected_difference: f64,
    pub corrected_tail_bound: f64,
    pub reading: String,
}

impl StandardIdentityReport {
    /// The identity as stated holds within the combined truncation bound.
    pub fn holds(&self) -> bool {
        self.difference <= self.tail_bound
    }

    /// `D_f(s - k + 1) = zeta(s - k + 1) prod_p (1 + p^{k-s-1})^{-1} sum a(n^2) n^{-s}`
    /// holds within its bound.
    pub fn corrected_holds(&self) -> bool {
        self.corrected_difference <= self.corrected_tail_bound
    }
}

/// `a(n^2) / a(1)`, `1 <= n <= n_max` (index 0 holds 0), from the normalized
/// eigenvalues `lambda_p` through `lambda(p^{j+1}) = lambda_p lambda(p^j) - p^{k-1} lambda(p^{j-1})`.
fn square_index_coefficients(lambda: &BTreeMap<u64, BigRational>, k: i64, n_max: usize) -> Result<Vec<BigRational>> {
    let spf = smallest_prime_factors(n_max.max(1));
    let mut out = vec![BigRational::zero(); n_max + 1];
    if n_max >= 1 {
        out[1] = BigRational::one();
    }
    let mut prime_power: BTreeMap<(u64, usize), BigRational> = BTreeMap::new();
    for n in 2..=n_max {
        let p = spf[n];
        let (mut m, mut e) = (n, 0usize);
        while m % p as usize == 0 {
            m /= p as usize;
            e += 1;
        }
        if m > 1 {
            out[n] = &out[n / m] * &out[m];
            continue;
        }
        let key = (p, e);
        if !prime_power.contains_key(&key) {
            let lp = lambda.get(&p).ok_or(Error::IncompleteEigenData(p))?;
            let pk = BigRational::from_integer(crate::arith::pow_u64(p, (k - 1) as u32));
            let mut seq = vec![BigRational::one(), lp.clone()];
            while seq.len() <= 2 * e {
                let j = seq.len() - 1;
                let next = lp * &seq[j] - &pk * &seq[j - 1];
                seq.push(next);
            }
            prime_power.insert(key, seq[2 * e].clone());
        }
        out[n] = prime_power[&key].clone();
    }
    Ok(out)
}

/// Evaluates both sides of `D_f(s - k + 1) = prod_p (1 + p^{k-s-1})^{-1} sum a(n^2) n^{-s}`
/// for a level-1 eigenform `f`, reading the printed sum over primes as an
/// Euler product. Also reports the gap against
/// `zeta(s - k + 1) prod_p (1 + p^{k-s-1})^{-1} sum a(n^2) n^{-s}`, the form the
/// identity takes with `D_{f,p}(t) = (1 - t)(1 - alpha_1 t)(1 - alpha_1^{-1} t)`.
///
/// The eigenvalues `lambda_p = a_p / a_1` feed both sides and the left side
/// is scaled by `a_1`, so the zero form gives `0 = 0`.
pub fn remark_standard_identity_check(f: &ClassicalForm, s: f64, p_max: u64, n_max: usize) -> Result<StandardIdentityReport> {
    let k = f.weight;
    if s <= k as f64 + 1.0 {
        return Err(Error::DivergenceRisk { re_s: s, abscissa: k as f64 + 1.0 });
    }
    let top = (p_max as usize).max(n_max);
    if f.precision() <= top {
        return Err(Error::PrecisionExhausted { requested: top, precision: f.precision() });
    }
    let a1 = f.coeff(1)?;
    let a1f = rational_to_f64(&a1);
    let primes = primes_up_to(top as u64);
    let lambda: BTreeMap<u64, BigRational> = if a1.is_zero() {
        primes.iter().map(|&p| (p, BigRational::zero())).collect()
    } else {
        primes.iter().map(|&p| Ok((p, f.coeff(p as usize)? / &a1))).collect::<Result<_>>()?
    };

    let shifted = Complex64::new(s - k as f64 + 1.0, 0.0);
    let standard: BTreeMap<u64, Polynomial> = primes
        .iter()
        .filter(|&&p| p <= p_max)
        .map(|&p| (p, standard_local_g1(&lambda[&p], p, k)))
        .collect();
    let lhs_eval = euler_eval(&standard, shifted, p_max, 0.0)?;
    let lhs = lhs_eval.value() * a1f;
    let lhs_err = lhs_eval.error_bound() * a1f.abs();

    let plus: BTreeMap<u64, Polynomial> = primes
        .iter()
        .filter(|&&p| p <= p_max)
        .map(|&p| (p, Polynomial::from_i64(&[1, 1])))
        .collect();
    let prod_eval = euler_eval(&plus, shifted, p_max, 0.0)?;

    let squares: Vec<BigRational> = square_index_coefficients(&lambda, k, n_max)?
        .into_iter()
        .map(|x| x * &a1)
        .collect();
    // |a(n^2)| <= |a_1| d(n^2) n^{k-1} <= |a_1| d(n)^2 n^{k-1}, d(n) <= C n^{1/8}.
    let growth = GrowthBound::explicit(a1f.abs() * divisor_bound_constant(0.125).powi(2), k as f64 - 1.0 + 0.25);
    let sum_eval = dirichlet_partial(&squares, Complex64::new(s, 0.0), n_max, &growth)?;

    let (pv, pe) = (prod_eval.value(), prod_eval.error_bound());
    let (sv, se) = (sum_eval.value(), sum_eval.error_bound());
    let rhs = pv * sv;
    let rhs_err = pv.norm() * se + sv.norm() * pe + pe * se;

    let minus: BTreeMap<u64, Polynomial> = primes
        .iter()
        .filter(|&&p| p <= p_max)
        .map(|&p| (p, Polynomial::from_i64(&[1, -1])))
        .collect();
    let zeta_eval = euler_eval(&minus, shifted, p_max, 0.0)?;
    let (zv, ze) = (zeta_eval.value(), zeta_eval.error_bound());
    let corrected = zv * rhs;
    let corrected_err = zv.norm() * rhs_err + rhs.norm() * ze + ze * rhs_err;

    Ok(StandardIdentityReport {
        weight: k,
        s,
        p_max,
        n_max,
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
        difference: (lhs - rhs).norm(),
        tail_bound: lhs_err + rhs_err,
        zeta_shift: zv.re,
        corrected_difference: (lhs - corrected).norm(),
        corrected_tail_bound: lhs_err + corrected_err,
        reading: "sum over primes read as an Euler product".into(),
    })
}
