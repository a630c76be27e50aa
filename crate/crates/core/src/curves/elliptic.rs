use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_big, primes_up_to, quadratic_character_table, valuation};
use crate::error::{Error, Result};
use crate::local::{FactorKind, LocalFactor};
use crate::poly::Polynomial;

use super::ApTable;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticCurveQ {
    pub a: [i64; 5],
}

/// Reduction type at a prime, read off a model minimal at that prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl Reduction {
    /// Local `a_p` at a bad prime: 1, -1 or 0.
    pub fn bad_ap(self) -> Option<i64> {
        match self {
            Reduction::Good => None,
            Reduction::SplitMultiplicative => Some(1),
            Reduction::NonsplitMultiplicative => Some(-1),
            Reduction::Additive => Some(0),
        }
    }
}

impl EllipticCurveQ {
    pub fn new(a: [i64; 5]) -> Result<Self> {
        let e = EllipticCurveQ { a };
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve(format!("{a:?} has zero discriminant")));
        }
        Ok(e)
    }

    fn big(&self) -> [BigInt; 5] {
        self.a.map(BigInt::from)
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = self.big();
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> BigInt {
        let [b2, b4, _, _] = self.b_invariants();
        &b2 * &b2 - 24 * b4
    }

    pub fn c6(&self) -> BigInt {
        let [b2, b4, b6, _] = self.b_invariants();
        -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * b6
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Primes dividing the discriminant of this model.
    pub fn discriminant_primes(&self) -> Vec<u64> {
        let d = self.discriminant().abs();
        match d.to_u64() {
            Some(small) => crate::arith::factorize(small).into_iter().map(|(p, _)| p).collect(),
            None => big_prime_factors(&d),
        }
    }

    /// Number of projective points of the reduction mod `p` of this model,
    /// singular point included. For a smooth reduction this is `#E(F_p)`.
    pub fn count_points(&self, p: u64) -> u64 {
        if p == 2 {
            let a = self.a.map(|x| x.rem_euclid(2) as u64);
            let mut n = 1;
            for x in 0..2u64 {
                for y in 0..2u64 {
                    let lhs = y * y + a[0] * x * y + a[2] * y;
                    let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                    if (lhs + rhs) % 2 == 0 {
                        n += 1;
                    }
                }
            }
            return n;
        }
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        let [b2, b4, b6, _] = self.b_invariants();
        let g = [mod_big(&b6, p), mod_big(&(2 * b4), p), mod_big(&b2, p), 4 % p];
        count_on_cubic(&g, p)
    }
}

/// Prime factors of a discriminant too large for `u64` (trial division up
/// to `10^6`, then the cofactor if it is small enough to be prime-tested).
fn big_prime_factors(d: &BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = d.abs();
    for p in primes_up_to(1_000_000) {
        if (&rest % p).is_zero() {
            out.push(p);
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
    }
    if let Some(r) = rest.to_u64() {
        if r > 1 && is_prime(r) {
            out.push(r);
        }
    }
    out
}

/// `1 + sum_x (1 + chi(g(x)))` for `g = g0 + g1 x + g2 x^2 + g3 x^3` over odd `F_p`.
fn count_on_cubic(g: &[u64; 4], p: u64) -> u64 {
    let chi = quadratic_character_table(p);
    let mut total: i64 = 1 + p as i64;
    for x in 0..p {
        let v = (((g[3] * x + g[2]) % p * x + g[1]) % p * x + g[0]) % p;
        total += chi[v as usize] as i64;
    }
    total as u64
}

/// `a_p(E) = p + 1 - #E(F_p)` at a prime of good reduction for this model.
pub fn ec_ap(e: &EllipticCurveQ, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if mod_big(&e.discriminant(), p) == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(p as i64 + 1 - e.count_points(p) as i64)
}

/// `p + 1 - N` with `N` counting every point of the reduced model, also at
/// bad primes. On a model minimal at `p` this is the standard local `a_p`.
pub fn point_count_ap(e: &EllipticCurveQ, p: u64) -> i64 {
    p as i64 + 1 - e.count_points(p) as i64
}

/// `c4`, `c6` and `v(Delta)` after making the model minimal at `p >= 5`.
fn minimal_invariants(e: &EllipticCurveQ, p: u64) -> (BigInt, BigInt, u32) {
    let mut c4 = e.c4();
    let mut c6 = e.c6();
    let mut disc = e.discriminant();
    let (p4, p6, p12) = (BigInt::from(p).pow(4), BigInt::from(p).pow(6), BigInt::from(p).pow(12));
    while valuation(&c4, p) >= 4 && valuation(&c6, p) >= 6 && valuation(&disc, p) >= 12 {
        c4 /= &p4;
        c6 /= &p6;
        disc /= &p12;
    }
    let vd = valuation(&disc, p);
    (c4, c6, vd)
}

/// Whether this model is certainly minimal at `p`.
fn certified_minimal(e: &EllipticCurveQ, p: u64) -> bool {
    valuation(&e.discriminant(), p) < 12 || valuation(&e.c4(), p) < 4 || valuation(&e.c6(), p) < 6
}

/// Reduction type at `p`. For `p >= 5` the model is first made minimal at
/// `p` and the type is read from `c4`, `c6`; for `p` in `{2, 3}` the model
/// must be certifiably minimal, and the type is read from the point count of
/// the singular reduction.
pub fn reduction_type(e: &EllipticCurveQ, p: u64) -> Result<Reduction> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p >= 5 {
        let (c4, c6, vd) = minimal_invariants(e, p);
        return Ok(if vd == 0 {
            Reduction::Good
        } else if mod_big(&c4, p) != 0 {
            let chi = quadratic_character_table(p);
            if chi[mod_big(&(-c6), p) as usize] == 1 {
                Reduction::SplitMultiplicative
            } else {
                Reduction::NonsplitMultiplicative
            }
        } else {
            Reduction::Additive
        });
    }
    if valuation(&e.discriminant(), p) == 0 {
        return Ok(Reduction::Good);
    }
    if !certified_minimal(e, p) {
        return Err(Error::Unsupported(format!(
            "model {:?} is not certifiably minimal at {p}",
            e.a
        )));
    }
    match point_count_ap(e, p) {
        1 => Ok(Reduction::SplitMultiplicative),
        -1 => Ok(Reduction::NonsplitMultiplicative),
        0 => Ok(Reduction::Additive),
        other => Err(Error::InvalidInput(format!("singular reduction at {p} with a_p = {other}"))),
    }
}

/// Local `a_p` of the curve (not the model): Frobenius trace at good primes,
/// 1 / -1 / 0 at split / nonsplit / additive primes.
pub fn local_ap(e: &EllipticCurveQ, p: u64) -> Result<(i64, Reduction)> {
    let red = reduction_type(e, p)?;
    match red.bad_ap() {
        Some(a) => Ok((a, red)),
        None if mod_big(&e.discriminant(), p) != 0 => Ok((ec_ap(e, p)?, red)),
        None => {
            // Good reduction hidden by a model that is not minimal at p >= 5:
            // count on y^2 = x^3 - 27 c4 x - 54 c6 of the minimal invariants.
            let (c4, c6, _) = minimal_invariants(e, p);
            let g = [mod_big(&(-54 * c6), p), mod_big(&(-27 * c4), p), 0, 1];
            Ok((p as i64 + 1 - count_on_cubic(&g, p) as i64, red))
        }
    }
}

/// Euler factor at `p`: `1 - a_p t + p t^2` (good) or `1 - a_p t` (bad).
pub fn ec_local_factor(e: &EllipticCurveQ, p: u64) -> Result<LocalFactor> {
    let (ap, red) = local_ap(e, p)?;
    let poly = if red == Reduction::Good {
        Polynomial::from_i64(&[1, -ap, p as i64])
    } else {
        Polynomial::from_i64(&[1, -ap])
    };
    Ok(LocalFactor::new(p, FactorKind::Frobenius, poly))
}

/// `a_p` for every prime `p <= bound`, computed in parallel.
pub fn ec_ap_table(e: &EllipticCurveQ, bound: u64) -> Result<ApTable> {
    let rows: Vec<(u64, i64, bool)> = primes_up_to(bound)
        .into_par_iter()
        .map(|p| local_ap(e, p).map(|(a, r)| (p, a, r != Reduction::Good)))
        .collect::<Result<_>>()?;
    let [a1, a2, a3, a4, a6] = e.a;
    Ok(ApTable::from_rows(format!("curve:[{a1},{a2},{a3},{a4},{a6}]"), bound, rows))
}
