use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("signature parts must be >= 1, got ({n0}, {n1}, {n_inf})")]
    NonPositiveSignature { n0: i64, n1: i64, n_inf: i64 },

    #[error("signature must satisfy n0 <= n1 <= n_inf, got ({n0}, {n1}, {n_inf})")]
    UnorderedSignature { n0: i64, n1: i64, n_inf: i64 },

    #[error("{xi} is (numerically) a branch point of the covering")]
    BranchPoint { xi: Complex64 },

    #[error("eta = 0: singular point of the surface")]
    SingularPoint,

    #[error("point ({xi}, {eta}) does not satisfy the curve equation (residual {residual:e})")]
    OffCurve {
        xi: Complex64,
        eta: Complex64,
        residual: f64,
    },

    #[error("tolerance {0:e} outside the supported range [1e-13, 1e-6]")]
    ToleranceRange(f64),

    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    Quadrature { requested: f64, achieved: f64 },

    #[error("argument outside the operation's domain: {0}")]
    Domain(String),

    #[error("finite-difference step {0:e} underflows")]
    StepUnderflow(f64),

    #[error("star polygon degenerates: {0}")]
    DegenerateStar(String),

    #[error("grazing reflection: direction parallel to edge {edge}")]
    Grazing { edge: usize },

    #[error("invalid billiard state: {0}")]
    InvalidState(String),

    #[error("frame composition mismatch {error:e} exceeds 1e-8")]
    FrameMismatch { error: f64 },

    #[error("ray passes within {eps:e} of a forbidden vertex or center image")]
    FoldBlocked { eps: f64 },

    #[error("enumerated vertex classes ({enumerated}) disagree with d0+d1+d_inf ({expected})")]
    VertexClassMismatch { enumerated: usize, expected: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
