use super::system::{spectral_projector_numerator, RMatrixSystem};
use crate::error::BmwError;
use crate::field::Field;
use crate::linalg::TensorOperator;

/// K̂ = λ^{-1}ν^{-1}(qI − R̂)(q^{-1}I + R̂) and its loop value μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaData<F> {
    pub k: TensorOperator<F>,
    pub mu: F,
}

/// K̂ and μ without checking K̂² = μK̂.
pub fn kappa_unchecked<F: Field>(sys: &RMatrixSystem<F>) -> KappaData<F> {
    let w = spectral_projector_numerator(sys.r(), sys.q()).expect("arity 2");
    let scale = sys.lambda().mul(sys.nu()).inv().expect("λν is nonzero");
    KappaData {
        k: w.scale(&scale),
        mu: sys.mu(),
    }
}

/// K̂ and μ, rejecting operators for which K̂² ≠ μK̂.
pub fn kappa_of<F: Field>(sys: &RMatrixSystem<F>) -> Result<KappaData<F>, BmwError> {
    let data = kappa_unchecked(sys);
    if data.is_scaled_idempotent() {
        Ok(data)
    } else {
        Err(BmwError::KappaNotIdempotentScaled)
    }
}

impl<F: Field> KappaData<F> {
    pub fn is_scaled_idempotent(&self) -> bool {
        let sq = self.k.compose(&self.k).expect("same shape");
        sq == self.k.scale(&self.mu)
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<KappaData<G>, E> {
        Ok(KappaData {
            k: self.k.try_map(&mut f)?,
            mu: f(&self.mu)?,
        })
    }
}
