use thiserror::Error;

use crate::states::Diagnostics;

/// Errors raised by the linear algebra, state, channel and measure layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |m - m^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max |u^dagger u - I| = {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("not a density matrix: {0}")]
    NotAState(Diagnostics),

    #[error("Kraus operators are not trace preserving (max |sum K^dagger K - I| = {defect:e})")]
    NotTracePreserving { defect: f64 },

    #[error("parameter `{name}` = {value} is outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("unsupported dimension: {0}")]
    DimensionUnsupported(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks `lo <= value <= hi`.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value,
            range: format!("[{lo}, {hi}]"),
        })
    }
}

/// Checks `lo < value < hi`.
pub(crate) fn check_open_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value > lo && value < hi {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value,
            range: format!("({lo}, {hi})"),
        })
    }
}
