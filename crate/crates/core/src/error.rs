use thiserror::Error;

/// Everything that can go wrong while building or evaluating a spec.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the domain of a component or outer function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The spec has the wrong shape for the requested operation.
    #[error("spec error: {0}")]
    Spec(String),

    /// Malformed spec text; line and column are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A parameter violates its constraint. `field` is a path such as
    /// `components[0].gamma`.
    #[error("validation error in {field}: {message}")]
    Validation { field: String, message: String },

    #[error("numerical error: {0}")]
    Numerical(String),

    /// The Hicks denominator vanishes (relative to its terms) for pair (i, j).
    #[error("Hicks elasticity undefined for pair ({i}, {j})")]
    HicksUndefined { i: usize, j: usize },

    /// The bordered Hessian is singular.
    #[error("Allen elasticity undefined: bordered Hessian is singular (relative det {relative_det:e})")]
    AllenUndefined { relative_det: f64 },

    /// A first partial derivative needed by an elasticity is zero. `index` is 1-based.
    #[error("first partial derivative f_x{index} vanishes")]
    ZeroGradient { index: usize },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
