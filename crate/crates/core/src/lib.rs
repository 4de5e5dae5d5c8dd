//! Exact verification of Birman–Murakami–Wenzl type R-matrices.
//!
//! Everything here is pure computation over an exact field: either the
//! rational-function field Q(s) with q = s² ([`Scalar`]) or the rationals
//! ([`Rational`]) when a system has been specialised at a numeric point.
//! The crate is `no_std` and only needs `alloc`; file formats, the report
//! renderer and the command line live in the companion `bmwcert` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bmw;
pub mod error;
pub mod families;
pub mod field;
pub mod linalg;
pub mod scalar;

pub use error::{BmwError, FamilyError, LinalgError, ScalarError};
pub use field::{Field, Rational};
pub use linalg::{FieldMatrix, MultiIndex, TensorOperator};

pub use scalar::{LaurentPoly, Scalar};
