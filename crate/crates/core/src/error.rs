use std::collections::BTreeMap;

use thiserror::Error;

/// Sparse polynomial rendered as `monomial -> coefficient` text, e.g.
/// `{"x0^2*x1": "-1/1"}`. Used wherever a remainder is reported.
pub type RemainderReport = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation requires the exact backend, got `{0}`")]
    UnsupportedBackend(&'static str),

    #[error("unsupported dimension: expected {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rectifiability conditions violated")]
    ConditionViolation {
        /// Remainder of `(Γ(x), x)` modulo `(x, x)`.
        gamma_x: RemainderReport,
        /// Remainder of `(Γ(x), Γ(x))` modulo `(x, x)`.
        gamma_gamma: RemainderReport,
    },

    #[error("map is not parallel to x on the asymptotic cone")]
    NotParallel { remainder: RemainderReport },

    #[error("quaternionic decomposition failed on the {side} side")]
    DecompositionFailure {
        side: &'static str,
        remainder: RemainderReport,
    },

    #[error("cannot combine bundles of different orientation ({0} vs {1})")]
    OrientationMismatch(&'static str, &'static str),

    #[error("needs more samples: {0}")]
    NeedsMoreSamples(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,

    #[error("point lies outside the domain of the map: {0}")]
    OutOfDomain(String),

    #[error("invalid input at `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    /// Prefixes the field path of a parse error.
    pub fn at(self, field: &str) -> Self {
        match self {
            Error::Parse { field: inner, message } => Error::Parse {
                field: if inner.is_empty() {
                    field.to_string()
                } else if inner.starts_with('[') {
                    format!("{field}{inner}")
                } else {
                    format!("{field}.{inner}")
                },
                message,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
