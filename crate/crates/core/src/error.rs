use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {id} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        id: usize,
    },
    #[error("point {id}: coordinate {value} is {reason}")]
    InvalidCoordinate {
        id: usize,
        value: f64,
        reason: &'static str,
    },
    #[error("points {i} and {j} share the first coordinate {x}")]
    DuplicateX { i: usize, j: usize, x: f64 },
    #[error("invalid slab [{a}, {b}]: need a < b")]
    InvalidSlab { a: f64, b: f64 },
    #[error("abscissa {value} is outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
