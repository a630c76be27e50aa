//! Classical (degree 1) modular forms: Eisenstein series, the discriminant
//! form, eta-quotient newforms, Hecke operators on Fourier coefficients and
//! multiplicative coefficient generation.

mod classical;
mod registry;

pub use classical::{
    coeffs_from_eigenvalues, delta_qexp, eigenvalue_check, eisenstein_qexp, hecke_tp, ClassicalForm,
    FormCoefficients,
};
pub use registry::{registry_lookup, registry_newforms, NewformRecord};
