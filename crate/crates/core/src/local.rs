//! Local factors: a polynomial in `t = p^{-s}` attached to a prime.

use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Spinor,
    Standard,
    Frobenius,
}

/// JSON form: `{"p": 5, "kind": "frobenius", "coeffs": ["1", "-1", "5"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub p: u64,
    pub kind: FactorKind,
    #[serde(rename = "coeffs")]
    pub poly: Polynomial,
}

impl LocalFactor {
    pub fn new(p: u64, kind: FactorKind, poly: Polynomial) -> Self {
        LocalFactor { p, kind, poly }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}
