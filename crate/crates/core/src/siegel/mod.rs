//! Degree-2 Siegel modular forms: the symplectic action, half-integral
//! matrices and their classes, Jacobi forms and the Maass lift, and Fourier
//! expansions.

pub mod cohen;
pub mod expansion;
pub mod jacobi;
pub mod quadratic;
pub mod symplectic;

pub use cohen::{cohen_h, jacobi_eisenstein, JacobiCoefficients, JacobiEisensteinTable};
pub use expansion::{
    build_chi, evaluate_siegel, maass_dirichlet, maass_lift, phi_operator, satisfies_maass_relation, SiegelExpansion,
    SiegelValue,
};
pub use jacobi::jacobi_cusp_form;
pub use quadratic::{class_key, epsilon_units, reduce_class, HalfIntegralMatrix, Mat2};
pub use symplectic::{
    automorphy_factor, congruence_member, sp_action, sp_action_real, Congruence, SiegelPoint, SymplecticMatrix,
};
