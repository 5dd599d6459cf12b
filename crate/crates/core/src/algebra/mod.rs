//! Exact arithmetic over a field F and over R = F[U,V].

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod poly;

pub use field::{Field, Fp, F2, Q};
pub use linalg::{ffge_rank, in_column_span, Annihilator, FieldMatrix};
pub use matrix::PolyMatrix;
pub use poly::{Mono, Poly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no (V-U)-divisibility")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0:?}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
