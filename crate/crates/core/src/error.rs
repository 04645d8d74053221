use thiserror::Error;

/// Errors raised by chart evaluation, family construction and curve analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("parameter ({u}, {v}) lies outside the chart domain")]
    OutOfDomain { u: f64, v: f64 },

    /// The tangent plane contains the isotropic direction (det g at or below tolerance).
    #[error("not admissible at ({u}, {v}): det g = {det_g:e}")]
    NotAdmissible { u: f64, v: f64, det_g: f64 },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("empty range: {0}")]
    EmptyRange(String),

    #[error("invalid constant: {0}")]
    InvalidConstant(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("curve state is not unit speed: first form value {speed_sq}")]
    NotUnitSpeed { speed_sq: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
