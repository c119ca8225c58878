//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod subspace;
mod vector;

pub use field::PrimeField;
pub use matrix::FpMatrix;
pub use subspace::Subspace;
pub use vector::FpVector;
