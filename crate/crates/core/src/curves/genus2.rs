use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, quadratic_character_table};
use crate::error::{Error, Result};

/// `y^2 = f(x)` with `f` an integer polynomial of degree 5 or 6, coefficients
/// in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genus2CurveQ {
    pub f: Vec<i64>,
}

impl Genus2CurveQ {
    pub fn new(mut f: Vec<i64>) -> Result<Self> {
        while f.last() == Some(&0) {
            f.pop();
        }
        if !(f.len() == 6 || f.len() == 7) {
            return Err(Error::InvalidInput(format!(
                "degree {} is not 5 or 6",
                f.len() as i64 - 1
            )));
        }
        let c = Genus2CurveQ { f };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve(format!("{:?} is not squarefree", c.f)));
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.f.last().expect("nonempty")
    }

    /// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let f: Vec<BigInt> = self.f.iter().map(|&c| BigInt::from(c)).collect();
        let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
        let n = self.degree();
        let res = resultant(&f, &df);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        res * sign / BigInt::from(self.leading())
    }

    /// Odd primes of good reduction for this model: `p` divides neither the
    /// leading coefficient nor the discriminant.
    pub fn is_good_prime(&self, p: u64) -> bool {
        p % 2 == 1 && self.leading() % p as i64 != 0 && !(self.discriminant() % p).is_zero()
    }
}

/// Resultant of two polynomials (ascending coefficients) as the determinant
/// of their Sylvester matrix.
fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(rows)
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Arithmetic in `F_{p^2} = F_p[sqrt(r)]` for a nonresidue `r`.
#[derive(Clone, Copy)]
struct Fp2 {
    p: u64,
    r: u64,
}

impl Fp2 {
    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let p = self.p;
        (
            (x.0 * y.0 + self.r * (x.1 * y.1 % p)) % p,
            (x.0 * y.1 + x.1 * y.0) % p,
        )
    }

    fn norm(&self, x: (u64, u64)) -> u64 {
        let p = self.p;
        (x.0 * x.0 % p + p * p - self.r * (x.1 * x.1 % p) % p) % p
    }
}

/// `(#C(F_p), #C(F_{p^2}))` on the smooth projective model.
pub fn genus2_counts(c: &Genus2CurveQ, p: u64) -> Result<(u64, u64)> {
    if p == 2 {
        return Err(Error::Unsupported("genus-2 counts at p = 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if !c.is_good_prime(p) {
        return Err(Error::BadReduction(p));
    }
    let chi = quadratic_character_table(p);
    let f: Vec<u64> = c.f.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
    let eval = |x: u64| f.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p);

    let (inf1, inf2) = if c.degree() == 5 {
        (1, 1)
    } else {
        ((1 + chi[f[6] as usize]) as u64, 2)
    };
    let n1 = inf1 + (0..p).map(|x| (1 + chi[eval(x) as usize]) as u64).sum::<u64>();

    let r = (1..p).find(|&x| chi[x as usize] == -1).expect("odd p has a nonresidue");
    let field = Fp2 { p, r };
    let mut n2 = inf2;
    for u in 0..p {
        for v in 0..p {
            let x = (u, v);
            let y = f.iter().rev().fold((0, 0), |acc, &a| {
                let t = field.mul(acc, x);
                ((t.0 + a) % p, t.1)
            });
            n2 += if y == (0, 0) {
                1
            } else if chi[field.norm(y) as usize] == 1 {
                2
            } else {
                0
            };
        }
    }
    Ok((n1, n2))
}
