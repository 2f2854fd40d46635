use thiserror::Error;

use crate::tensor::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("ragged grid at {path}: expected length {expected}, found {found}")]
    Ragged {
        path: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid: {0}")]
    Invalid(Violation),
    #[error("cell ({row},{col}) holds symbol {symbol}, outside 1..={n}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        n: usize,
    },
    #[error("symbol {symbol} repeats in {line} {index}")]
    NotLatin {
        line: &'static str,
        index: usize,
        symbol: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point violates constraint {0}")]
    Infeasible(String),
    #[error("the polytope is empty")]
    Empty,
    #[error("the polyhedron is unbounded")]
    Unbounded,
}

impl From<LinalgError> for PolytopeError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::DimensionMismatch { expected, found } => {
                PolytopeError::DimensionMismatch { expected, found }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{what} is undefined for {args}: {reason}")]
    Domain {
        what: &'static str,
        args: String,
        reason: &'static str,
    },
    #[error("{what} refuses n = {n}; the configured ceiling is {ceiling}")]
    AboveCeiling {
        what: &'static str,
        n: usize,
        ceiling: usize,
    },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row},{col}) is not 0 or 1")]
    NotBinary { row: usize, col: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{path}`: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
