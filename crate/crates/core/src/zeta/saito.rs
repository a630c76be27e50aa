//! Degree-2 Hecke eigenvalues: the spinor factor through `lambda(p)` and
//! `lambda(p^2)`, the Saito-Kurokawa relations, and `T(p)` acting on Fourier
//! coefficients.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_u64};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::siegel::{HalfIntegralMatrix, SiegelExpansion};

/// Eigenvalues of `T(p)` and `T(p^2)` on a degree-2, weight-`k` eigenform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueData {
    pub p: u64,
    pub k: i64,
    #[serde(with = "crate::codec::rational")]
    pub lambda_p: BigRational,
    #[serde(with = "crate::codec::rational")]
    pub lambda_p2: BigRational,
}

impl EigenvalueData {
    pub const G: usize = 2;
}

fn pw(p: u64, e: i64) -> BigRational {
    BigRational::from_integer(pow_u64(p, e as u32))
}

/// `1 - lambda(p) t + (lambda(p)^2 - lambda(p^2) - p^{2k-4}) t^2 - lambda(p) p^{2k-3} t^3 + p^{4k-6} t^4`.
pub fn spinor_local_g2_from_eigenvalues(ev: &EigenvalueData) -> Polynomial {
    let (p, k) = (ev.p, ev.k);
    let l = &ev.lambda_p;
    Polynomial::new(vec![
        BigRational::from_integer(1.into()),
        -l.clone(),
        l * l - &ev.lambda_p2 - pw(p, 2 * k - 4),
        -(l * pw(p, 2 * k - 3)),
        pw(p, 4 * k - 6),
    ])
}

/// Eigenvalues of the Saito-Kurokawa lift of weight `k` attached to the
/// weight-`2k-2` eigenform `f`, from `a_p(f)` and `a_{p^2}(f)`:
/// `lambda(p) = a_p + p^{k-1} + p^{k-2}` and, from matching the spinor factor
/// with `(1 - p^{k-1} t)(1 - p^{k-2} t)(1 - a_p t + p^{2k-3} t^2)`,
/// `lambda(p^2) = lambda(p)^2 - p^{2k-4} - 2 p^{2k-3} - a_p (p^{k-1} + p^{k-2})`.
///
/// `a_{p^2} = a_p^2 - p^{2k-3}` is checked first.
pub fn sk_eigenvalues(ap_f: &BigRational, ap2_f: &BigRational, k: i64, p: u64) -> Result<EigenvalueData> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k < 2 {
        return Err(Error::UnsupportedWeight(k));
    }
    if *ap2_f != ap_f * ap_f - pw(p, 2 * k - 3) {
        return Err(Error::InconsistentEigenData(format!(
            "a_{{p^2}} = {ap2_f} but a_p^2 - p^{{2k-3}} = {}",
            ap_f * ap_f - pw(p, 2 * k - 3)
        )));
    }
    let lambda_p = ap_f + pw(p, k - 1) + pw(p, k - 2);
    let lambda_p2 = &lambda_p * &lambda_p - pw(p, 2 * k - 4) - pw(p, 2 * k - 3) * BigRational::from_integer(2.into())
        - ap_f * (pw(p, k - 1) + pw(p, k - 2));
    Ok(EigenvalueData { p, k, lambda_p, lambda_p2 })
}

/// The Fourier coefficient of `F | T(p)` at `T`:
/// `a(pT) + p^{k-2} sum_M a(T[M] / p) + p^{2k-3} a(T / p)`,
/// with `M` over `[[1, 0], [alpha, p]]` (`alpha mod p`) and `[[p, 0], [0, 1]]`;
/// terms whose matrix is not half-integral vanish.
pub fn hecke_tp_coefficient(f: &SiegelExpansion, t: &HalfIntegralMatrix, p: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let k = f.weight();
    let pi = p as i64;
    let mut total = f.coeff(&HalfIntegralMatrix::new(pi * t.a, pi * t.b, pi * t.c))?;
    let mut middle = BigRational::zero();
    for alpha in 0..pi {
        let m = t.transform(&[[1, 0], [alpha, pi]]);
        if m.a % pi == 0 && m.b % pi == 0 && m.c % pi == 0 {
            middle += f.coeff(&HalfIntegralMatrix::new(m.a / pi, m.b / pi, m.c / pi))?;
        }
    }
    let m = t.transform(&[[pi, 0], [0, 1]]);
    if m.a % pi == 0 && m.b % pi == 0 && m.c % pi == 0 {
        middle += f.coeff(&HalfIntegralMatrix::new(m.a / pi, m.b / pi, m.c / pi))?;
    }
    total += middle * pw(p, k - 2);
    if t.a % pi == 0 && t.b % pi == 0 && t.c % pi == 0 {
        total += f.coeff(&HalfIntegralMatrix::new(t.a / pi, t.b / pi, t.c / pi))? * pw(p, 2 * k - 3);
    }
    Ok(total)
}

/// `lambda(p)` read off the expansion at the first stored class with a
/// nonzero coefficient, after checking the eigen-relation at every stored
/// class that the expansion covers after scaling by `p`.
pub fn eigenvalue_from_expansion(f: &SiegelExpansion, p: u64) -> Result<BigRational> {
    let mut lambda: Option<BigRational> = None;
    let pi = p as i64;
    for (t, v) in f.entries() {
        if !t.is_positive_definite() {
            continue;
        }
        let scaled = HalfIntegralMatrix::new(pi * t.a, pi * t.b, pi * t.c);
        if !f.covers(&scaled) {
            continue;
        }
        let image = hecke_tp_coefficient(f, t, p)?;
        match &lambda {
            None => lambda = Some(image / v),
            Some(l) => {
                if image != l * v {
                    return Err(Error::NotAnEigenvector { p, n: t.discriminant() as usize });
                }
            }
        }
    }
    lambda.ok_or_else(|| Error::InsufficientCoefficients(format!("no stored class T with pT covered, p = {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel::build_chi;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sk_examples() {
        let ev = sk_eigenvalues(&r(-528), &r(528 * 528 - (1 << 17)), 10, 2).unwrap();
        assert_eq!(ev.lambda_p, r(240));
        let z = spinor_local_g2_from_eigenvalues(&ev);
        assert_eq!(z.coeff(0), r(1));
        assert_eq!(z.coeff(4), pw(2, 34));
        assert_eq!(z.coeff(3), z.coeff(1) * pw(2, 17));
        let zero = sk_eigenvalues(&r(0), &-pw(3, 17), 10, 3).unwrap();
        assert_eq!(zero.lambda_p, pw(3, 9) + pw(3, 8));
        assert!(sk_eigenvalues(&r(-528), &r(1), 10, 2).is_err());
    }

    #[test]
    fn chi10_hecke_eigenvalues_match_sk() {
        let f18 = crate::forms::delta_qexp(10).product(&crate::forms::eisenstein_qexp(6, 10).unwrap());
        let f = build_chi(10, 40).unwrap();
        for p in [2u64, 3] {
            let ap = f18.coeff(p as usize).unwrap();
            let ev = sk_eigenvalues(&ap, &f18.coeff((p * p) as usize).unwrap(), 10, p).unwrap();
            assert_eq!(eigenvalue_from_expansion(&f, p).unwrap(), ev.lambda_p, "p = {p}");
        }
        assert_eq!(f18.coeff(2).unwrap(), r(-528));
    }

    #[test]
    fn perturbed_form_is_not_an_eigenform() {
        let f = build_chi(10, 12).unwrap();
        let mut entries: Vec<_> = f.entries().map(|(t, v)| (*t, v.clone())).collect();
        for e in entries.iter_mut() {
            if e.0 == HalfIntegralMatrix::new(2, 2, 2) {
                e.1 += r(1);
            }
        }
        let bumped = SiegelExpansion::from_entries(10, 1, 12, entries).unwrap();
        assert!(matches!(eigenvalue_from_expansion(&bumped, 2), Err(Error::NotAnEigenvector { .. })));
    }
}
