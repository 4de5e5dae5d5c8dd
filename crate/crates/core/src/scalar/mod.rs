//! Exact arithmetic in Q(s), the field of rational functions in s = q^(1/2).

mod dense;
mod laurent;
mod parse;
mod rational_fn;

pub use laurent::LaurentPoly;
pub use parse::parse;
pub use rational_fn::{arith, ArithOp, Scalar};
