use num_integer::Integer;
use num_rational::BigRational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `T = (a, b/2; b/2, c)`, i.e. the binary form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfIntegralMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// A 2x2 integer matrix `[[u11, u12], [u21, u22]]`.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY2: Mat2 = [[1, 0], [0, 1]];

pub fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn mat2_det(u: &Mat2) -> i64 {
    u[0][0] * u[1][1] - u[0][1] * u[1][0]
}

impl HalfIntegralMatrix {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        HalfIntegralMatrix { a, b, c }
    }

    /// `4ac - b^2 = 4 det T`.
    pub fn discriminant(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    /// `det T = (4ac - b^2) / 4`.
    pub fn det(&self) -> BigRational {
        BigRational::new(BigInt::from(self.discriminant()), BigInt::from(4))
    }

    pub fn det_f64(&self) -> f64 {
        self.discriminant() as f64 / 4.0
    }

    pub fn is_semi_positive(&self) -> bool {
        self.a >= 0 && self.c >= 0 && self.discriminant() >= 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() > 0
    }

    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn trace(&self) -> i64 {
        self.a + self.c
    }

    /// `T[U] = U^T T U`.
    pub fn transform(&self, u: &Mat2) -> Self {
        let (p, q, r, s) = (u[0][0], u[0][1], u[1][0], u[1][1]);
        let (a, b, c) = (self.a, self.b, self.c);
        HalfIntegralMatrix {
            a: a * p * p + b * p * r + c * r * r,
            b: 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            c: a * q * q + b * q * s + c * s * s,
        }
    }

    /// Reduced in the GL_2(Z) sense: `0 <= b <= a <= c`.
    pub fn is_reduced(&self) -> bool {
        0 <= self.b && self.b <= self.a && self.a <= self.c
    }

    /// Smallest eigenvalue of `T`.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, b, c) = (self.a as f64, self.b as f64 / 2.0, self.c as f64);
        ((a + c) - ((a - c).powi(2) + 4.0 * b * b).sqrt()) / 2.0
    }
}

/// Reduces a positive-definite `T` to the GL_2(Z)-class representative with
/// `0 <= b <= a <= c`, returning it with `U` such that `T[U]` is that
/// representative. Classes are taken under GL_2(Z) because Fourier
/// coefficients of even weight satisfy `a(T[U]) = a(T)` for every unimodular
/// `U` and `epsilon(T)` counts automorphs of either determinant.
pub fn reduce_class(t: &HalfIntegralMatrix) -> Result<(HalfIntegralMatrix, Mat2)> {
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite { a: t.a, b: t.b, c: t.c });
    }
    let mut cur = *t;
    let mut u = IDENTITY2;
    let apply = |cur: &mut HalfIntegralMatrix, m: Mat2, u: &mut Mat2| {
        *cur = cur.transform(&m);
        *u = mat2_mul(u, &m);
    };
    loop {
        // Translate b into (-a, a].
        let k = Integer::div_floor(&(cur.a - cur.b), &(2 * cur.a));
        if k != 0 {
            apply(&mut cur, [[1, k], [0, 1]], &mut u);
        }
        if cur.a > cur.c {
            apply(&mut cur, [[0, 1], [1, 0]], &mut u);
            continue;
        }
        break;
    }
    if cur.b < 0 {
        apply(&mut cur, [[1, 0], [0, -1]], &mut u);
    }
    debug_assert!(cur.is_reduced());
    Ok((cur, u))
}

/// Canonical class key: the reduced form for `T > 0`, `(0, 0, content)` for
/// semidefinite `T`.
pub fn class_key(t: &HalfIntegralMatrix) -> Result<HalfIntegralMatrix> {
    if !t.is_semi_positive() {
        return Err(Error::NotPositiveDefinite { a: t.a, b: t.b, c: t.c });
    }
    if t.discriminant() == 0 {
        return Ok(HalfIntegralMatrix::new(0, 0, t.content()));
    }
    Ok(reduce_class(t)?.0)
}

/// Number of `U` in GL_2(Z) with `T[U] = T`, by enumeration of all integer
/// columns `u` with `T[u] <= max(a, c)`; such vectors satisfy
/// `|u|^2 <= max(a, c) / lambda_min(T)`.
pub fn epsilon_units(t: &HalfIntegralMatrix) -> Result<u64> {
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite { a: t.a, b: t.b, c: t.c });
    }
    let q = |x: i64, y: i64| t.a * x * x + t.b * x * y + t.c * y * y;
    let radius = ((t.a.max(t.c) as f64 / t.min_eigenvalue()).sqrt()).floor() as i64 + 1;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            let v = q(x, y);
            if v == t.a {
                first.push((x, y));
            }
            if v == t.c {
                second.push((x, y));
            }
        }
    }
    let mut count = 0;
    for &(p, r) in &first {
        for &(qq, s) in &second {
            let det = p * s - qq * r;
            // 2 u^T T v = b
            let bil = 2 * t.a * p * qq + t.b * (p * s + qq * r) + 2 * t.c * r * s;
            if det.abs() == 1 && bil == t.b {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        let t = HalfIntegralMatrix::new(1, 0, 1);
        assert_eq!(reduce_class(&t).unwrap(), (t, IDENTITY2));
        let (r, u) = reduce_class(&HalfIntegralMatrix::new(1, 2, 2)).unwrap();
        assert_eq!(r, HalfIntegralMatrix::new(1, 0, 1));
        assert_eq!(HalfIntegralMatrix::new(1, 2, 2).transform(&u), r);
        assert_eq!(mat2_det(&u).abs(), 1);
        assert!(reduce_class(&HalfIntegralMatrix::new(1, 2, 1)).is_err());
    }

    #[test]
    fn reduction_is_idempotent_and_invariant() {
        for a in 1..12 {
            for c in 1..12 {
                for b in -15..=15 {
                    let t = HalfIntegralMatrix::new(a, b, c);
                    if !t.is_positive_definite() {
                        continue;
                    }
                    let (r, u) = reduce_class(&t).unwrap();
                    assert!(r.is_reduced());
                    assert_eq!(t.transform(&u), r);
                    assert_eq!(reduce_class(&r).unwrap().0, r);
                    assert_eq!(r.discriminant(), t.discriminant());
                }
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(1, 0, 1)).unwrap(), 8);
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(1, 1, 1)).unwrap(), 12);
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(3, 1, 4)).unwrap(), 2);
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(2, 0, 3)).unwrap(), 4);
        // Class invariance.
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(1, 2, 2)).unwrap(), 8);
        assert_eq!(epsilon_units(&HalfIntegralMatrix::new(3, 7, 5)).unwrap(), epsilon_units(&reduce_class(&HalfIntegralMatrix::new(3, 7, 5)).unwrap().0).unwrap());
    }

    #[test]
    fn semidefinite_keys() {
        assert_eq!(class_key(&HalfIntegralMatrix::new(4, 4, 1)).unwrap(), HalfIntegralMatrix::new(0, 0, 1));
        assert_eq!(class_key(&HalfIntegralMatrix::new(2, 4, 2)).unwrap(), HalfIntegralMatrix::new(0, 0, 2));
        assert_eq!(class_key(&HalfIntegralMatrix::new(3, 0, 0)).unwrap(), HalfIntegralMatrix::new(0, 0, 3));
        assert_eq!(class_key(&HalfIntegralMatrix::new(0, 0, 0)).unwrap(), HalfIntegralMatrix::new(0, 0, 0));
    }
}
