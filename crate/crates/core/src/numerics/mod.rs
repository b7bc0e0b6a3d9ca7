//! Scalars and dense matrix algebra.
//!
//! Two backends implement [`Scalar`]: exact [`Rational`] (the default for
//! every construction) and `f64` with a fixed comparison tolerance, which is
//! only used for fixtures with irrational entries.

mod matrix;
mod scalar;

use thiserror::Error;

pub use matrix::{ColVec, Matrix, RowVec};
pub use scalar::{
    next_integer_above, ratio, Backend, IntegerKernel, Rational, Scalar, FLOAT_TOLERANCE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{rows}x{cols} matrix needs {} entries, got {entries}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("`{text}` is not a valid {backend} literal")]
    InvalidLiteral { text: String, backend: Backend },
    #[error("unknown backend `{0}`")]
    UnknownBackend(String),
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },
}
