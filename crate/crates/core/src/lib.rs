//! Exact algorithms for common invariant subspaces of matrix pairs,
//! simultaneous triangularization, quartic Galois groups and the matrix
//! equation `AX - XA = X^alpha`.
//!
//! Everything is computed exactly over `Q`, `F_p` and simple algebraic
//! extensions of those; no floating point is involved anywhere.

pub mod error;
pub mod factor;
pub mod fields;
pub mod fuzz;
pub mod galois;
pub mod invariant;
pub mod linalg;
pub mod st;
pub mod verdict;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use fields::{Elem, Field, FieldKind, Poly};
pub use linalg::{Matrix, Subspace};
