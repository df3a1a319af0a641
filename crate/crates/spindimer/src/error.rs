//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by model construction, numerics, and data ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument violated a precondition (non-finite, wrong sign, out of range).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Arithmetic between two `Quantity` values with different units.
    #[error("unit mismatch: {left} vs {right}")]
    UnitMismatch { left: &'static str, right: &'static str },

    /// A matrix argument is not Hermitian within tolerance.
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    /// A matrix argument is not positive semi-definite within tolerance.
    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemiDefinite { min_eigenvalue: f64 },

    /// A matrix argument is not a valid density matrix.
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    /// Matrix dimensions outside the fixed small-matrix scope, or shape mismatch.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A data file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Measured susceptibility incompatible with the dimer model at this point.
    #[error(
        "data inconsistency at T = {t_kelvin} K, chi = {chi_si:e} m^3/mol: {message}"
    )]
    DataInconsistency {
        t_kelvin: f64,
        chi_si: f64,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
