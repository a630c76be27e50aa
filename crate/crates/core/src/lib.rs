//! Exact and certified-numeric machinery for checking modularity statements:
//! q-expansions of elliptic modular forms, point counts and L-factors of
//! elliptic and genus-2 curves, Fourier expansions of degree-2 Siegel forms,
//! and their spinor and standard zeta functions.

pub mod arith;
pub mod codec;
pub mod curves;
pub mod dirichlet;
pub mod error;
pub mod forms;
pub mod local;
pub mod modcheck;
pub mod poly;
pub mod series;
pub mod siegel;
pub mod zeta;

pub use error::{Error, Result};
