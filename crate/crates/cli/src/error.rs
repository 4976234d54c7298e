//! CLI error classification and the machine-readable error record.
//!
//! Exit codes: 0 success, 2 schema/constraint (bad input), 3 numeric failure
//! at runtime. Every failing path emits exactly one JSON record on stderr.

use equilib_core::Error as CoreError;
use serde::Serialize;

#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit: i32,
}

#[derive(Serialize)]
struct Record<'a> {
    error: Inner<'a>,
}

#[derive(Serialize)]
struct Inner<'a> {
    kind: &'a str,
    message: &'a str,
    exit: i32,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        Self {
            kind: "schema".into(),
            message: message.into(),
            exit: 2,
        }
    }

    pub fn constraint(message: impl Into<String>) -> Self {
        Self {
            kind: "constraint".into(),
            message: message.into(),
            exit: 2,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "usage".into(),
            message: message.into(),
            exit: 2,
        }
    }

    pub fn numeric(kind: &str, message: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            message: message.into(),
            exit: 3,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            kind: "io".into(),
            message: message.into(),
            exit: 3,
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        serde_json::to_string(&Record {
            error: Inner {
                kind: &self.kind,
                message: &self.message,
                exit: self.exit,
            },
        })
        .expect("error record serializes")
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let message = e.to_string();
        match e {
            CoreError::ConstraintViolation(_)
            | CoreError::SingularLocation { .. }
            | CoreError::ModelMismatch { .. }
            | CoreError::NonFiniteInput(_)
            | CoreError::EmptyConfiguration
            | CoreError::DomainError(_) => CliError::constraint(message),
            CoreError::PoleProximity { .. } => CliError::numeric("pole-proximity", message),
            CoreError::ContourThroughPole { .. } => {
                CliError::numeric("contour-through-pole", message)
            }
            CoreError::BoundaryCharge { .. } => CliError::numeric("boundary-charge", message),
            CoreError::SubdivisionExhausted { .. } => {
                CliError::numeric("subdivision-exhausted", message)
            }
            CoreError::NoConvergence { .. } => CliError::numeric("no-convergence", message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}
