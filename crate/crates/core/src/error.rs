use thiserror::Error;

/// Errors raised by the library. Mathematical refutations are never errors;
/// they are reported as data by the `modcheck` module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient at exponent {requested} read past precision {precision}")]
    PrecisionExhausted { requested: usize, precision: usize },
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("unsupported eta quotient: {0}")]
    UnsupportedEtaQuotient(String),
    #[error("Re(s) = {re_s} does not exceed the convergence abscissa {abscissa}")]
    DivergenceRisk { re_s: f64, abscissa: f64 },
    #[error("unsupported weight {0}")]
    UnsupportedWeight(i64),
    #[error("prime {p} divides the level {level}")]
    BadPrimeForLevel { p: u64, level: u64 },
    #[error("form is not an eigenvector of T_{p}: coefficient {n} differs")]
    NotAnEigenvector { p: u64, n: usize },
    #[error("form is not normalized (a_1 = {0})")]
    NotNormalized(String),
    #[error("missing eigenvalue data for prime {0}")]
    IncompleteEigenData(u64),
    #[error("inconsistent eigenvalue data: {0}")]
    InconsistentEigenData(String),
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("point counts are inconsistent at p = {p}: {reason}")]
    InconsistentCounts { p: u64, reason: String },
    #[error("local factor vanishes at p^-s for p = {0}")]
    PoleAtPrime(u64),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("not a point of the Siegel upper half space: {0}")]
    NotInUpperHalfSpace(String),
    #[error("quadratic form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("insufficient Fourier coefficients: {0}")]
    InsufficientCoefficients(String),
    #[error("Satake parameter alpha_{0} is zero")]
    SingularSatake(usize),
    #[error("could not resolve Satake parameters: {0}")]
    UnresolvedSatake(String),
    #[error("degree mismatch at p = {p}: {lhs} vs {rhs}")]
    DegreeMismatch { p: u64, lhs: usize, rhs: usize },
    #[error("floating-point precision insufficient for exact reconstruction: {0}")]
    PrecisionLoss(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
