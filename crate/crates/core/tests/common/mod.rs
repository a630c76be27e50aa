//! Invariant checks shared by the property suite and the acceptance run.
//! Each check returns `Err` with a description of the first violation.

#![allow(dead_code)]

use modwb::arith::{is_prime, primes_up_to};
use modwb::curves::{ec_ap, EllipticCurveQ};
use modwb::forms::{hecke_tp, ClassicalForm};
use modwb::poly::Polynomial;
use modwb::series::QExpansion;
use modwb::Error;
use modwb::siegel::{
    automorphy_factor, class_key, congruence_member, epsilon_units, maass_dirichlet, sp_action, Congruence,
    HalfIntegralMatrix, Mat2, SiegelExpansion, SiegelPoint, SymplecticMatrix,
};
use modwb::zeta::{
    satake_from_local, satake_g1, sk_eigenvalues, spinor_local, spinor_local_complex, spinor_local_g1,
    spinor_local_g2_from_eigenvalues,
};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

pub type Check = Result<(), String>;

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A product of `len` generators of Sp_4(Z): `J`, upper and lower
/// translations by small symmetric matrices, and rotations by unimodular `U`.
pub fn random_symplectic(rng: &mut StdRng, len: usize) -> SymplecticMatrix {
    let mut m = SymplecticMatrix::identity(2);
    for _ in 0..len {
        let step = match rng.random_range(0..4) {
            0 => SymplecticMatrix::j(2),
            1 | 2 => {
                let (a, b, c) = (rng.random_range(-2..=2), rng.random_range(-2..=2), rng.random_range(-2..=2));
                let s = DMatrix::from_row_slice(2, 2, &[a, b, b, c]);
                if rng.random_bool(0.5) {
                    SymplecticMatrix::translation(&s).unwrap()
                } else {
                    SymplecticMatrix::lower_translation(&s).unwrap()
                }
            }
            _ => {
                let u = random_unimodular(rng, 3);
                SymplecticMatrix::rotation(&DMatrix::from_row_slice(2, 2, &[u[0][0], u[0][1], u[1][0], u[1][1]]))
                    .unwrap()
            }
        };
        m = m.compose(&step);
    }
    m
}

/// A word of `len` elementary matrices in GL_2(Z).
pub fn random_unimodular(rng: &mut StdRng, len: usize) -> Mat2 {
    const GENS: [Mat2; 5] = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]];
    let mut u: Mat2 = [[1, 0], [0, 1]];
    for _ in 0..len {
        let g = GENS[rng.random_range(0..GENS.len())];
        u = [
            [u[0][0] * g[0][0] + u[0][1] * g[1][0], u[0][0] * g[0][1] + u[0][1] * g[1][1]],
            [u[1][0] * g[0][0] + u[1][1] * g[1][0], u[1][0] * g[0][1] + u[1][1] * g[1][1]],
        ];
    }
    u
}

pub fn random_point(rng: &mut StdRng) -> SiegelPoint {
    let (x11, x12, x22) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let (y11, y22) = (rng.random_range(0.6..2.0), rng.random_range(0.6..2.0));
    let y12 = rng.random_range(-0.4..0.4) * (y11 * y22 as f64).sqrt();
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(x11, y11),
            Complex64::new(x12, y12),
            Complex64::new(x12, y12),
            Complex64::new(x22, y22),
        ],
    );
    SiegelPoint::new(m).unwrap()
}

/// `j(g1 g2, Omega) = j(g1, g2 Omega) j(g2, Omega)`.
pub fn cocycle(g1: &SymplecticMatrix, g2: &SymplecticMatrix, omega: &SiegelPoint, tol: f64) -> Check {
    let lhs = automorphy_factor(&g1.compose(g2), omega);
    let moved = sp_action(g2, omega).map_err(|e| e.to_string())?;
    let rhs = automorphy_factor(g1, &moved) * automorphy_factor(g2, omega);
    let rel = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0);
    if rel > tol {
        return Err(format!("cocycle: {lhs} vs {rhs}, relative {rel:e}"));
    }
    let two_step = sp_action(g1, &moved).map_err(|e| e.to_string())?;
    let direct = sp_action(&g1.compose(g2), omega).map_err(|e| e.to_string())?;
    let gap = (two_step.omega() - direct.omega()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = direct.omega().iter().map(|z| z.norm()).fold(1.0, f64::max);
    if gap > tol * scale {
        return Err(format!("action is not a group action: gap {gap:e}"));
    }
    Ok(())
}

/// An element of Gamma_2(N) built from `N`-multiples of translations.
pub fn random_principal(rng: &mut StdRng, n: i64, len: usize) -> SymplecticMatrix {
    let mut m = SymplecticMatrix::identity(2);
    for _ in 0..len {
        let (a, b, c) = (rng.random_range(-2..=2) * n, rng.random_range(-2..=2) * n, rng.random_range(-2..=2) * n);
        let s = DMatrix::from_row_slice(2, 2, &[a, b, b, c]);
        let step = if rng.random_bool(0.5) {
            SymplecticMatrix::translation(&s).unwrap()
        } else {
            SymplecticMatrix::lower_translation(&s).unwrap()
        };
        m = m.compose(&step);
    }
    m
}

/// `Gamma(N) < Gamma_1(N) < Gamma_0(N)` on a principal-level element and
/// the implications on an arbitrary one.
pub fn membership_chain(principal: &SymplecticMatrix, any: &SymplecticMatrix, n: u64) -> Check {
    for which in [Congruence::Principal, Congruence::Gamma1, Congruence::Gamma0, Congruence::Full] {
        if !congruence_member(principal, n, which) {
            return Err(format!("element of Gamma({n}) rejected by {which:?}"));
        }
    }
    let member = |w| congruence_member(any, n, w);
    if member(Congruence::Principal) && !member(Congruence::Gamma1) {
        return Err(format!("Gamma({n}) member outside Gamma_1({n})"));
    }
    if member(Congruence::Gamma1) && !member(Congruence::Gamma0) {
        return Err(format!("Gamma_1({n}) member outside Gamma_0({n})"));
    }
    Ok(())
}

/// `a_p^2 <= 4p` at every good prime `5 <= p <= bound`.
pub fn hasse(a: [i64; 5], bound: u64) -> Check {
    let Ok(e) = EllipticCurveQ::new(a) else { return Ok(()) };
    let disc = e.discriminant();
    for p in primes_up_to(bound).into_iter().filter(|&p| p >= 5) {
        if (&disc % BigInt::from(p)) == BigInt::from(0) {
            continue;
        }
        let ap = ec_ap(&e, p).map_err(|e| e.to_string())?;
        if (ap * ap) as u64 > 4 * p {
            return Err(format!("{a:?}: a_{p} = {ap} violates the Hasse bound"));
        }
    }
    Ok(())
}

/// Satake parameters from a local spinor factor rebuild that factor: exactly
/// at `g = 1` from `a_p`, and to `tol` in the normalized variable for both
/// `g = 1` and the Saito-Kurokawa factors at `g = 2`.
pub fn satake_round_trip(ap: i64, p: u64, k: i64, tol: f64) -> Check {
    let a = rational(ap);
    let poly = spinor_local_g1(&a, p, k);
    let sd = satake_g1(&a, p, k).map_err(|e| e.to_string())?;
    match spinor_local(&sd) {
        Ok(rebuilt) if rebuilt == poly => {}
        Ok(_) => return Err(format!("g = 1 exact round trip failed at a_p = {ap}, p = {p}, k = {k}")),
        // Refusing is allowed once p^{k-1} leaves the double mantissa.
        Err(Error::PrecisionLoss(_)) if (p as f64).powi(k as i32 - 1) > 2f64.powi(50) => {}
        Err(e) => return Err(e.to_string()),
    }
    normalized_match(&poly, p, 1, k, tol)
}

/// Saito-Kurokawa spinor factor of weight `k` from an `f` of weight
/// `2k - 2` with eigenvalue `ap`, sent through the Satake recovery.
pub fn satake_round_trip_g2(ap: i64, p: u64, k: i64, tol: f64) -> Check {
    let a = rational(ap);
    let ap2 = &a * &a - BigRational::from_integer(BigInt::from(p).pow((2 * k - 3) as u32));
    let ev = sk_eigenvalues(&a, &ap2, k, p).map_err(|e| e.to_string())?;
    normalized_match(&spinor_local_g2_from_eigenvalues(&ev), p, 2, k, tol)
}

fn normalized_match(poly: &Polynomial, p: u64, g: usize, k: i64, tol: f64) -> Check {
    let sd = satake_from_local(poly, p, g, k).map_err(|e| e.to_string())?;
    let rebuilt = spinor_local_complex(&sd);
    let w = sd.weight_exponent() as f64 / 2.0;
    for j in 0..poly.coeffs().len() {
        let scale = (p as f64).powf(w * j as f64);
        let want = modwb::arith::rational_to_f64(&poly.coeff(j)) / scale;
        let got = rebuilt.coeff(j) / scale;
        if (got - want).norm() > tol {
            return Err(format!("g = {g}, p = {p}, k = {k}: coefficient {j} is {got}, want {want}"));
        }
    }
    Ok(())
}

/// `epsilon(T[U]) = epsilon(T)` and the class key is `U`-invariant.
pub fn epsilon_invariance(t: HalfIntegralMatrix, u: &Mat2) -> Check {
    let moved = t.transform(u);
    let (e1, e2) = (epsilon_units(&t), epsilon_units(&moved));
    if e1 != e2 {
        return Err(format!("epsilon({t:?}) = {e1:?} but epsilon({moved:?}) = {e2:?}"));
    }
    if class_key(&t) != class_key(&moved) {
        return Err(format!("class key of {t:?} changes under {u:?}"));
    }
    Ok(())
}

/// Successive truncations of `D(F, s)` at `B, 2B, 4B, ...` move by
/// non-increasing amounts.
pub fn dirichlet_monotone(f: &SiegelExpansion, s: f64, bounds: &[u64]) -> Check {
    let s = Complex64::new(s, 0.0);
    let vals: Vec<Complex64> = bounds
        .iter()
        .map(|&b| maass_dirichlet(f, s, b).map(|d| d.value()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let gaps: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let floor = 1e-14 * vals.last().map_or(1.0, |v| v.norm().max(1.0));
    for (i, w) in gaps.windows(2).enumerate() {
        if w[1] > w[0] + floor {
            return Err(format!("gap grows at B = {}: {:e} -> {:e}", bounds[i + 1], w[0], w[1]));
        }
    }
    Ok(())
}

pub fn series_ring_axioms(a: &QExpansion, b: &QExpansion, c: &QExpansion) -> Check {
    if &(a * b) != &(b * a) {
        return Err("multiplication is not commutative".into());
    }
    if &(&(a * b) * c) != &(a * &(b * c)) {
        return Err("multiplication is not associative".into());
    }
    if &(&(a + b) * c) != &(&(a * c) + &(b * c)) {
        return Err("distributivity fails".into());
    }
    if &(a + &QExpansion::zero(a.precision())) != a || &(a * &QExpansion::one(a.precision())) != a {
        return Err("identity elements fail".into());
    }
    Ok(())
}

pub fn series_inverse(a: &QExpansion) -> Check {
    let inv = a.invert().map_err(|e| e.to_string())?;
    if &(a * &inv) != &QExpansion::one(a.precision()) {
        return Err("a * a^{-1} != 1".into());
    }
    Ok(())
}

/// `T_p T_q f = T_q T_p f` for distinct good primes.
pub fn hecke_commute(f: &ClassicalForm, p: u64, q: u64) -> Check {
    assert!(is_prime(p) && is_prime(q) && p != q);
    let pq = hecke_tp(&hecke_tp(f, p).map_err(|e| e.to_string())?, q).map_err(|e| e.to_string())?;
    let qp = hecke_tp(&hecke_tp(f, q).map_err(|e| e.to_string())?, p).map_err(|e| e.to_string())?;
    let n = pq.precision().min(qp.precision());
    if pq.truncate(n) != qp.truncate(n) {
        return Err(format!("T_{p} T_{q} != T_{q} T_{p}"));
    }
    Ok(())
}
