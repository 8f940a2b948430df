use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the pure computational core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("point lies inside the airfoil: {0}")]
    Domain(String),
    #[error("conformal map is singular at the requested point: {0}")]
    Singularity(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("predictions do not cover the split exactly once at sample `{0}`")]
    Coverage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("validation failed for sample `{sample}`: {message}")]
    Validation { sample: String, message: String },
    #[error("model fit failed: {0}")]
    Fit(String),
}
