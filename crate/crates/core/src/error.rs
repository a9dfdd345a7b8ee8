//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by grid construction, field operations and study drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid resolution must be even and at least 2, got {0}")]
    InvalidResolution(usize),
    #[error("grid dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("grid of {dim} axes at resolution {n} overflows the address space")]
    GridTooLarge { dim: usize, n: usize },
    #[error("axis {axis} out of range for a {dim}-dimensional grid")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("expected {expected} values for this grid, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("fields live on different grids ({0}^{1} vs {2}^{3})")]
    GridMismatch(usize, usize, usize, usize),
    #[error("wavenumber {0} outside the retained lattice [-N/2, N/2)")]
    WavenumberOutOfRange(i64),
    #[error("operation requires a one-dimensional grid, got dimension {0}")]
    RequiresOneDim(usize),
    #[error("method {0} cannot be used here: {1}")]
    MethodMismatch(&'static str, &'static str),
    #[error("direct-sum oracle capped at N \u{2264} {cap} for dimension {dim}, got N = {n}")]
    OracleCapExceeded { dim: usize, n: usize, cap: usize },
    #[error("time horizon {t} is not an integer multiple of step size {tau}")]
    NonIntegerStepCount { t: f64, tau: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
