//! Sparse exact linear algebra over a [`Field`](crate::field::Field).

mod charpoly;
mod elim;
mod matrix;
mod tensor;

pub use charpoly::char_poly;
pub use elim::{inverse, rank, solve_multi_rhs};
pub use matrix::FieldMatrix;
pub use tensor::{MultiIndex, TensorOperator, Witness};
