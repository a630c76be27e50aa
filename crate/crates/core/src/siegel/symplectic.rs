use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Sp(2g, Z)` stored as a `2g x 2g` integer matrix with
/// blocks `(A, B; C, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMatrix {
    g: usize,
    m: DMatrix<i64>,
}

/// `J = (0, I; -I, 0)`.
pub fn j_matrix(g: usize) -> DMatrix<i64> {
    let mut j = DMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j[(i, g + i)] = 1;
        j[(g + i, i)] = -1;
    }
    j
}

impl SymplecticMatrix {
    pub fn new(m: DMatrix<i64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() % 2 != 0 || m.nrows() == 0 {
            return Err(Error::NotSymplectic);
        }
        let g = m.nrows() / 2;
        let j = j_matrix(g);
        if m.transpose() * &j * &m != j {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticMatrix { g, m })
    }

    pub fn from_blocks(a: &DMatrix<i64>, b: &DMatrix<i64>, c: &DMatrix<i64>, d: &DMatrix<i64>) -> Result<Self> {
        let g = a.nrows();
        let mut m = DMatrix::zeros(2 * g, 2 * g);
        m.view_mut((0, 0), (g, g)).copy_from(a);
        m.view_mut((0, g), (g, g)).copy_from(b);
        m.view_mut((g, 0), (g, g)).copy_from(c);
        m.view_mut((g, g), (g, g)).copy_from(d);
        Self::new(m)
    }

    pub fn identity(g: usize) -> Self {
        SymplecticMatrix { g, m: DMatrix::identity(2 * g, 2 * g) }
    }

    pub fn j(g: usize) -> Self {
        SymplecticMatrix { g, m: j_matrix(g) }
    }

    /// `(I, S; 0, I)` for symmetric integral `S`.
    pub fn translation(s: &DMatrix<i64>) -> Result<Self> {
        let g = s.nrows();
        let i = DMatrix::identity(g, g);
        Self::from_blocks(&i, s, &DMatrix::zeros(g, g), &i)
    }

    /// `(I, 0; S, I)` for symmetric integral `S`.
    pub fn lower_translation(s: &DMatrix<i64>) -> Result<Self> {
        let g = s.nrows();
        let i = DMatrix::identity(g, g);
        Self::from_blocks(&i, &DMatrix::zeros(g, g), s, &i)
    }

    /// `(U, 0; 0, U^{-T})` for unimodular `U`.
    pub fn rotation(u: &DMatrix<i64>) -> Result<Self> {
        let g = u.nrows();
        let uf = u.map(|x| x as f64);
        let inv = uf.try_inverse().ok_or(Error::NotSymplectic)?;
        let inv_t = inv.transpose().map(|x| x.round() as i64);
        Self::from_blocks(u, &DMatrix::zeros(g, g), &DMatrix::zeros(g, g), &inv_t)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &DMatrix<i64> {
        &self.m
    }

    fn block(&self, r: usize, c: usize) -> DMatrix<i64> {
        self.m.view((r * self.g, c * self.g), (self.g, self.g)).into_owned()
    }

    pub fn a(&self) -> DMatrix<i64> {
        self.block(0, 0)
    }

    pub fn b(&self) -> DMatrix<i64> {
        self.block(0, 1)
    }

    pub fn c(&self) -> DMatrix<i64> {
        self.block(1, 0)
    }

    pub fn d(&self) -> DMatrix<i64> {
        self.block(1, 1)
    }

    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix { g: self.g, m: &self.m * &other.m }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.m.map(|x| x as f64)
    }
}

/// A point of the Siegel upper half space: symmetric with positive-definite
/// imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    omega: DMatrix<Complex64>,
}

const MINOR_TOL: f64 = 1e-12;

impl SiegelPoint {
    pub fn new(omega: DMatrix<Complex64>) -> Result<Self> {
        if omega.nrows() != omega.ncols() || omega.nrows() == 0 {
            return Err(Error::NotInUpperHalfSpace("not square".into()));
        }
        if omega != omega.transpose() {
            return Err(Error::NotInUpperHalfSpace("not symmetric".into()));
        }
        let y = omega.map(|z| z.im);
        for k in 1..=y.nrows() {
            let minor = y.view((0, 0), (k, k)).determinant();
            if minor <= MINOR_TOL {
                return Err(Error::NotInUpperHalfSpace(format!("leading minor {k} is {minor:e}")));
            }
        }
        Ok(SiegelPoint { omega })
    }

    /// `i * y * I_g`.
    pub fn scalar_imaginary(g: usize, y: f64) -> Self {
        SiegelPoint {
            omega: DMatrix::from_diagonal_element(g, g, Complex64::new(0.0, y)),
        }
    }

    /// Symmetrizes before validating, for numerically computed matrices.
    pub fn from_numeric(omega: DMatrix<Complex64>) -> Result<Self> {
        let sym = (&omega + omega.transpose()).map(|z| z * 0.5);
        Self::new(sym)
    }

    pub fn g(&self) -> usize {
        self.omega.nrows()
    }

    pub fn omega(&self) -> &DMatrix<Complex64> {
        &self.omega
    }

    pub fn imaginary(&self) -> DMatrix<f64> {
        self.omega.map(|z| z.im)
    }

    /// Smallest eigenvalue of `Im(Omega)`.
    pub fn min_imaginary_eigenvalue(&self) -> f64 {
        self.imaginary().symmetric_eigenvalues().min()
    }
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// `(A Omega + B)(C Omega + D)^{-1}` for a real symplectic matrix.
pub fn sp_action_real(gamma: &DMatrix<f64>, omega: &SiegelPoint) -> Result<SiegelPoint> {
    let g = omega.g();
    if gamma.nrows() != 2 * g || gamma.ncols() != 2 * g {
        return Err(Error::NotSymplectic);
    }
    let j = j_matrix(g).map(|x| x as f64);
    let defect = (gamma.transpose() * &j * gamma - &j).abs().max();
    if defect > 1e-12 * gamma.abs().max().max(1.0).powi(2) {
        return Err(Error::NotSymplectic);
    }
    let blk = |r: usize, c: usize| complexify(&gamma.view((r * g, c * g), (g, g)).into_owned());
    let (a, b, c, d) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
    let num = &a * omega.omega() + b;
    let den = &c * omega.omega() + d;
    let inv = den
        .try_inverse()
        .ok_or_else(|| Error::NotInUpperHalfSpace("C Omega + D is singular".into()))?;
    SiegelPoint::from_numeric(num * inv)
}

pub fn sp_action(gamma: &SymplecticMatrix, omega: &SiegelPoint) -> Result<SiegelPoint> {
    if gamma.g() != omega.g() {
        return Err(Error::InvalidInput("degree mismatch".into()));
    }
    sp_action_real(&gamma.to_f64(), omega)
}

/// `det(C Omega + D)`.
pub fn automorphy_factor(gamma: &SymplecticMatrix, omega: &SiegelPoint) -> Complex64 {
    let c = complexify(&gamma.c().map(|x| x as f64));
    let d = complexify(&gamma.d().map(|x| x as f64));
    (c * omega.omega() + d).determinant()
}

/// The groups `Gamma_g`, `Gamma_g(N)`, `Gamma_{g,1}(N)`, `Gamma_{g,0}(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Congruence {
    Full,
    Principal,
    Gamma1,
    Gamma0,
}

/// Residue tests: `Gamma_g(N)`: `gamma = I mod N`; `Gamma_{g,1}(N)`:
/// `A = D = I`, `C = 0 mod N`; `Gamma_{g,0}(N)`: `C = 0 mod N`.
pub fn congruence_member(gamma: &SymplecticMatrix, n: u64, which: Congruence) -> bool {
    let n = n as i64;
    let zero_mod = |m: &DMatrix<i64>| m.iter().all(|x| x.rem_euclid(n) == 0);
    let eye = DMatrix::<i64>::identity(gamma.g(), gamma.g());
    match which {
        Congruence::Full => true,
        Congruence::Principal => zero_mod(&(gamma.matrix() - DMatrix::identity(2 * gamma.g(), 2 * gamma.g()))),
        Congruence::Gamma1 => zero_mod(&gamma.c()) && zero_mod(&(gamma.a() - &eye)) && zero_mod(&(gamma.d() - &eye)),
        Congruence::Gamma0 => zero_mod(&gamma.c()),
    }
}
