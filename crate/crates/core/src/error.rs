use thiserror::Error;

/// Errors raised by the matrix kernel and the channel analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entries must be finite (found {value} at ({row}, {col}))")]
    NonFinite { row: usize, col: usize, value: String },

    #[error("shape error: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds {threshold:.3e})")]
    NotHermitian { defect: f64, threshold: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.6e} below {threshold:.3e})")]
    NotPsd { min_eigenvalue: f64, threshold: f64 },

    #[error("matrix is not positive definite (minimum eigenvalue {min_eigenvalue:.6e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not unitary (defect {defect:.3e} exceeds {threshold:.3e})")]
    NotUnitary { defect: f64, threshold: f64 },

    #[error("map is not completely positive (minimum Choi eigenvalue {min_eigenvalue:?})")]
    NotCp { min_eigenvalue: Option<f64> },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(Box<Error>),

    #[error("parameter `{name}` = {value} out of range: {reason}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("normalization sum is numerically singular after {attempts} attempts")]
    SingularNormalization { attempts: usize },

    #[error("Kraus set must contain at least one nonzero matrix")]
    EmptyKrausSet,

    #[error("the zero map has no Kraus set with a nonzero matrix")]
    ZeroMap,
}

impl Error {
    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// Wraps eigensolver breakdowns so callers see a single numerical-failure kind.
    pub(crate) fn into_numerical(self) -> Self {
        match self {
            e @ Error::NoConvergence { .. } => Error::NumericalFailure(Box::new(e)),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
