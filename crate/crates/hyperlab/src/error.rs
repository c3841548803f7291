use thiserror::Error;

/// Errors shared across all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input outside the convergence domain: {0}")]
    DivergentInput(String),
    #[error("parameter hits a pole of the series: {0}")]
    PoleParameter(String),
    #[error("series did not reach the requested tolerance within {max_terms} terms (last term {last_term:.3e})")]
    NoConvergence { max_terms: usize, last_term: f64 },
    #[error("operator system {system} expects {expected} parameters, got {got}")]
    ArityMismatch {
        system: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("mu-vector degenerates a denominator: {0}")]
    DegenerateMu(String),
    #[error("2x2 pivot block is numerically singular (|det| = {0:.3e})")]
    SingularPivot(f64),
    #[error("grid point violates a precondition: {0}")]
    PreconditionViolated(String),
    #[error("sample coincides with a singular point: {0}")]
    SingularSample(String),
    #[error("endpoint exponent violates integrability: {0}")]
    IntegrabilityViolated(String),
    #[error("endpoint exponent {0} is not > -1")]
    NonIntegrableExponent(f64),
    #[error("integration path passes within {dist:.3e} of branch point {point}")]
    BranchCollision { point: String, dist: f64 },
    #[error("point outside the admissible domain: {0}")]
    DomainViolated(String),
    #[error("specialized matrix differs from the reference table: {0}")]
    SpecializationMismatch(String),
    #[error("reduced 2x2 blocks do not satisfy the expected equalities: {0}")]
    BlockMismatch(String),
    #[error("conjugated matrix is not of the expected integral form: {0}")]
    NonIntegralResult(String),
    #[error("matrix has determinant != 1")]
    NotUnimodular,
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
