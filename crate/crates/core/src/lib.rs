//! Equivariant Khovanov homology over F[U,V] and the concordance profiles s_t.

pub mod algebra;
pub mod frobenius;
pub mod corpus;
pub mod diagram;
pub mod complex;
pub mod lee;
pub mod invariant;
