//! Exact dense linear algebra over any [`Field`](crate::fields::Field).

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::Subspace;
