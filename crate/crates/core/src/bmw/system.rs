use alloc::format;
use alloc::string::ToString;

use super::outcome::Outcome;
use crate::error::{BmwError, LinalgError};
use crate::field::Field;
use crate::linalg::{inverse, FieldMatrix, TensorOperator};

/// An R-matrix with its BMW parameter ν and deformation parameter q.
///
/// Construction checks that R̂ is invertible and that ν avoids 0, q and
/// −q^{-1}; the inverse is cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixSystem<F> {
    q: F,
    nu: F,
    r: TensorOperator<F>,
    r_inv: TensorOperator<F>,
}

pub(crate) fn nu_admissible<F: Field>(q: &F, nu: &F) -> bool {
    let minus_qinv = q.inv().map(|x| x.neg());
    !(nu.is_zero() || nu == q || Some(nu) == minus_qinv.as_ref())
}

impl<F: Field> RMatrixSystem<F> {
    pub fn new(q: F, r: TensorOperator<F>, nu: F) -> Result<Self, BmwError> {
        if r.arity() != 2 {
            return Err(LinalgError::ShapeMismatch(format!(
                "R-matrix must act on V⊗V, got arity {}",
                r.arity()
            ))
            .into());
        }
        if !nu_admissible(&q, &nu) {
            return Err(BmwError::InadmissibleNu(nu.to_string()));
        }
        let inv = inverse(r.matrix()).map_err(|_| BmwError::NotInvertible)?;
        let r_inv = TensorOperator::new(r.n(), 2, inv)?;
        Ok(Self { q, nu, r, r_inv })
    }

    /// Same R̂ with a different ν.
    pub fn with_nu(&self, nu: F) -> Result<Self, BmwError> {
        if !nu_admissible(&self.q, &nu) {
            return Err(BmwError::InadmissibleNu(nu.to_string()));
        }
        Ok(Self { nu, ..self.clone() })
    }

    /// dim V.
    pub fn dim(&self) -> usize {
        self.r.n()
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn nu(&self) -> &F {
        &self.nu
    }

    pub fn r(&self) -> &TensorOperator<F> {
        &self.r
    }

    pub fn r_inv(&self) -> &TensorOperator<F> {
        &self.r_inv
    }

    /// λ = q − q^{-1}.
    pub fn lambda(&self) -> F {
        self.q.sub(&self.q.inv().expect("q is nonzero"))
    }

    /// μ = λ^{-1}ν^{-1}(q − ν)(q^{-1} + ν).
    pub fn mu(&self) -> F {
        let qi = self.q.inv().expect("q is nonzero");
        let top = self.q.sub(&self.nu).mul(&qi.add(&self.nu));
        top.div(&self.lambda().mul(&self.nu))
            .expect("λν is nonzero")
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<RMatrixSystem<G>, E> {
        Ok(RMatrixSystem {
            q: f(&self.q)?,
            nu: f(&self.nu)?,
            r: self.r.try_map(&mut f)?,
            r_inv: self.r_inv.try_map(&mut f)?,
        })
    }
}

/// R̂_1 R̂_2 R̂_1 = R̂_2 R̂_1 R̂_2 on V^{⊗3}.
pub fn yang_baxter_outcome<F: Field>(r: &TensorOperator<F>) -> Result<Outcome<F>, LinalgError> {
    let r1 = r.embed(&[1, 2], 3)?;
    let r2 = r.embed(&[2, 3], 3)?;
    let lhs = r1.compose(&r2)?.compose(&r1)?;
    let rhs = r2.compose(&r1)?.compose(&r2)?;
    Outcome::from_equality("yang-baxter", "R1 R2 R1 = R2 R1 R2", &lhs, &rhs)
}

pub fn check_yang_baxter<F: Field>(sys: &RMatrixSystem<F>) -> Outcome<F> {
    yang_baxter_outcome(sys.r()).expect("arity-2 operator embeds into V^3")
}

/// `(qI − R̂)(q^{-1}I + R̂)`.
pub(crate) fn spectral_projector_numerator<F: Field>(
    r: &TensorOperator<F>,
    q: &F,
) -> Result<TensorOperator<F>, LinalgError> {
    let id = TensorOperator::identity(r.n(), 2);
    let qi = q.inv().expect("q is nonzero");
    id.scale(q).sub(r)?.compose(&id.scale(&qi).add(r)?)
}

/// Reads ν off the image of `(qI − R̂)(q^{-1}I + R̂)`, which must be a
/// single R̂-eigenspace.
pub fn detect_nu<F: Field>(r: &TensorOperator<F>, q: &F) -> Result<F, BmwError> {
    let spectral = |m: &str| BmwError::NotBMWSpectralType(m.to_string());
    if r.arity() != 2 {
        return Err(LinalgError::ShapeMismatch("R-matrix must have arity 2".into()).into());
    }
    let w = spectral_projector_numerator(r, q)?;
    let wt = w.matrix().transpose();
    let Some(col) = (0..wt.dim()).find(|&c| !wt.row(c).is_empty()) else {
        return Err(spectral("(q - R)(q^-1 + R) vanishes"));
    };
    let mut v = alloc::vec![F::zero(); wt.dim()];
    for (k, x) in wt.row(col) {
        v[*k] = x.clone();
    }
    let rv = r.matrix().apply(&v);
    let (i0, v0) = wt.row(col)[0].clone();
    let nu = rv[i0].div(&v0).expect("pivot entry is nonzero");
    if rv.iter().zip(&v).any(|(a, b)| *a != nu.mul(b)) {
        return Err(spectral("image vector is not an eigenvector of R"));
    }
    let shifted = r
        .matrix()
        .sub(&FieldMatrix::identity(wt.dim()).scale(&nu))?;
    if !shifted.mul(w.matrix())?.is_zero() {
        return Err(spectral(
            "image of (q - R)(q^-1 + R) is not a single eigenspace",
        ));
    }
    if !nu_admissible(q, &nu) {
        return Err(BmwError::NotBMWSpectralType(format!(
            "eigenvalue {nu} is excluded"
        )));
    }
    Ok(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn hecke_like() -> TensorOperator<Scalar> {
        // Diagonal q on v1⊗v1, a 2x2 block on span{v1⊗v2, v2⊗v1} with eigenvalues q, -q^-1, and ν on v2⊗v2.
        let q = Scalar::q();
        TensorOperator::from_entries(
            2,
            2,
            [
                (alloc::vec![1, 1], alloc::vec![1, 1], q.clone()),
                (alloc::vec![1, 2], alloc::vec![2, 1], Scalar::one()),
                (alloc::vec![2, 1], alloc::vec![1, 2], Scalar::one()),
                (alloc::vec![2, 1], alloc::vec![2, 1], Scalar::lambda()),
                (alloc::vec![2, 2], alloc::vec![2, 2], Scalar::q_pow(-4)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn detects_isolated_eigenvalue() {
        assert_eq!(
            detect_nu(&hecke_like(), &Scalar::q()).unwrap(),
            Scalar::q_pow(-4)
        );
    }

    #[test]
    fn mu_formula() {
        let sys = RMatrixSystem::new(Scalar::q(), hecke_like(), Scalar::q_pow(-2)).unwrap();
        assert_eq!(sys.mu(), Scalar::q() + Scalar::one() + Scalar::q_pow(-1));
        assert_eq!(sys.lambda(), Scalar::q() - Scalar::q_pow(-1));
    }

    #[test]
    fn permutation_braids() {
        let p = TensorOperator::<Scalar>::permutation(3, 2, 1, 2).unwrap();
        assert!(yang_baxter_outcome(&p).unwrap().pass);
    }
}
