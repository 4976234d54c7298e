//! Error type shared by all evaluation and certification routines.

use thiserror::Error;

/// Errors raised by configuration construction, evaluation, and contour work.
///
/// Coordinates are reported as `f64` pairs regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation point ({}, {}) is within tolerance of the pole at ({}, {})", .point.0, .point.1, .pole.0, .pole.1)]
    PoleProximity { point: (f64, f64), pole: (f64, f64) },

    #[error("configuration holds no charges")]
    EmptyConfiguration,

    #[error("charge {index} sits at the conjugation singularity z = 1")]
    SingularLocation { index: usize },

    #[error("operation requires the {expected} model but the configuration is {found}")]
    ModelMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),

    #[error("contour passes through or too close to a pole/zero near ({}, {})", .near.0, .near.1)]
    ContourThroughPole { near: (f64, f64) },

    #[error("charge {index} lies within tolerance of the contour boundary")]
    BoundaryCharge { index: usize },

    #[error("adaptive subdivision exhausted (uncertified index {index}, max turn {max_turn})")]
    SubdivisionExhausted { index: i64, max_turn: f64 },

    #[error("iteration did not converge (last point ({}, {}), residual {residual})", .last.0, .last.1)]
    NoConvergence { last: (f64, f64), residual: f64 },

    #[error("domain error: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
