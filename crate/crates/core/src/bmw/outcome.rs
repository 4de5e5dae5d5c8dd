use alloc::string::String;
use alloc::vec::Vec;

use crate::error::LinalgError;
use crate::field::Field;
use crate::linalg::{TensorOperator, Witness};

/// Result of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome<F> {
    pub id: String,
    pub equation: String,
    pub pass: bool,
    pub witness: Option<Witness<F>>,
}

impl<F: Field> Outcome<F> {
    /// Passes iff `residual` is identically zero.
    pub fn from_residual(id: &str, equation: &str, residual: &TensorOperator<F>) -> Self {
        let witness = residual.witness();
        Self {
            id: id.into(),
            equation: equation.into(),
            pass: witness.is_none(),
            witness,
        }
    }

    pub fn from_equality(
        id: &str,
        equation: &str,
        lhs: &TensorOperator<F>,
        rhs: &TensorOperator<F>,
    ) -> Result<Self, LinalgError> {
        Ok(Self::from_residual(id, equation, &lhs.sub(rhs)?))
    }

    /// Scalar identity; the witness carries the difference with empty indices.
    pub fn from_scalars(id: &str, equation: &str, lhs: &F, rhs: &F) -> Self {
        let diff = lhs.sub(rhs);
        let pass = diff.is_zero();
        let witness = (!pass).then(|| Witness {
            out: Vec::new(),
            inp: Vec::new(),
            value: diff,
        });
        Self {
            id: id.into(),
            equation: equation.into(),
            pass,
            witness,
        }
    }

    pub fn flag(id: &str, equation: &str, pass: bool) -> Self {
        Self {
            id: id.into(),
            equation: equation.into(),
            pass,
            witness: None,
        }
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<Outcome<G>, E> {
        let witness = match &self.witness {
            Some(w) => Some(Witness {
                out: w.out.clone(),
                inp: w.inp.clone(),
                value: f(&w.value)?,
            }),
            None => None,
        };
        Ok(Outcome {
            id: self.id.clone(),
            equation: self.equation.clone(),
            pass: self.pass,
            witness,
        })
    }
}
