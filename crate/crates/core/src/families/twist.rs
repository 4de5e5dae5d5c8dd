use alloc::format;
use alloc::vec::Vec;

use super::standard::{
    build_standard, family_spec, standard_entries, twisted_pairings, FamilySpec, Series,
};
use crate::bmw::{Outcome, PairingPair, RMatrixSystem};
use crate::error::{FamilyError, LinalgError};
use crate::field::Field;
use crate::linalg::{inverse, FieldMatrix, TensorOperator};
use crate::scalar::Scalar;

/// Parameters d_ij of the diagonal twist, `d[i][j]` holding d_{i+1,j+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec<F> {
    pub d: Vec<Vec<F>>,
}

/// The auxiliary data of a valid twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistValidity<F> {
    pub u: Vec<F>,
    pub w: Vec<F>,
    pub constant: F,
}

impl<F: Field> TwistSpec<F> {
    pub fn identity(n: usize) -> Self {
        Self {
            d: alloc::vec![alloc::vec![F::one(); n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// d_ij for 1-based labels.
    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.d[i - 1][j - 1]
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<TwistSpec<G>, E> {
        let d = self
            .d
            .iter()
            .map(|r| r.iter().map(&mut f).collect())
            .collect::<Result<_, _>>()?;
        Ok(TwistSpec { d })
    }
}

/// Checks d_ij d_i'j = u_j, d_ij d_ij' = w_i and u_i u_i' = w_i w_i' = const.
pub fn validate_twist<F: Field>(spec: &TwistSpec<F>) -> Result<TwistValidity<F>, FamilyError> {
    let bad = |m: alloc::string::String| FamilyError::InvalidTwistParameters(m);
    let n = spec.dim();
    if n == 0 || spec.d.iter().any(|r| r.len() != n) {
        return Err(bad(format!("d must be a square N x N array, got {n} rows")));
    }
    for i in 1..=n {
        for j in 1..=n {
            if spec.at(i, j).is_zero() {
                return Err(bad(format!("d_{i}{j} is zero")));
            }
        }
    }
    let flip = |i: usize| n + 1 - i;
    let u: Vec<F> = (1..=n).map(|j| spec.at(1, j).mul(spec.at(n, j))).collect();
    let w: Vec<F> = (1..=n).map(|i| spec.at(i, 1).mul(spec.at(i, n))).collect();
    for i in 1..=n {
        for j in 1..=n {
            if spec.at(i, j).mul(spec.at(flip(i), j)) != u[j - 1] {
                return Err(bad(format!(
                    "d_{i},{j} d_{},{j} differs from d_1,{j} d_{n},{j}",
                    flip(i)
                )));
            }
            if spec.at(i, j).mul(spec.at(i, flip(j))) != w[i - 1] {
                return Err(bad(format!(
                    "d_{i},{j} d_{i},{} differs from d_{i},1 d_{i},{n}",
                    flip(j)
                )));
            }
        }
    }
    let constant = u[0].mul(&u[n - 1]);
    for i in 1..=n {
        if u[i - 1].mul(&u[flip(i) - 1]) != constant {
            return Err(bad(format!("u_{i} u_{} differs from u_1 u_{n}", flip(i))));
        }
        if w[i - 1].mul(&w[flip(i) - 1]) != constant {
            return Err(bad(format!("w_{i} w_{} differs from u_1 u_{n}", flip(i))));
        }
    }
    Ok(TwistValidity { u, w, constant })
}

/// F̂ = P·Σ d_ij e_ii⊗e_jj, sending v_i⊗v_j to d_ij v_j⊗v_i.
pub fn build_f<F: Field>(spec: &TwistSpec<F>) -> TensorOperator<F> {
    let n = spec.dim();
    let entries = (1..=n).flat_map(|i| {
        (1..=n).map(move |j| (alloc::vec![j, i], alloc::vec![i, j], spec.at(i, j).clone()))
    });
    TensorOperator::from_entries(n, 2, entries).expect("labels in range")
}

/// R̂_12 F̂_23 F̂_12 = F̂_23 F̂_12 R̂_23 and F̂_12 F̂_23 R̂_12 = R̂_23 F̂_12 F̂_23.
pub fn check_twist_compat<F: Field>(
    r: &TensorOperator<F>,
    f: &TensorOperator<F>,
) -> Result<Outcome<F>, LinalgError> {
    let (r12, r23) = (r.embed(&[1, 2], 3)?, r.embed(&[2, 3], 3)?);
    let (f12, f23) = (f.embed(&[1, 2], 3)?, f.embed(&[2, 3], 3)?);
    let ff = f23.compose(&f12)?;
    let eq = "R12 F23 F12 = F23 F12 R23, F12 F23 R12 = R23 F12 F23";
    let first = Outcome::from_equality("twist.compat", eq, &r12.compose(&ff)?, &ff.compose(&r23)?)?;
    if !first.pass {
        return Ok(first);
    }
    let gg = f12.compose(&f23)?;
    Outcome::from_equality("twist.compat", eq, &gg.compose(&r12)?, &r23.compose(&gg)?)
}

/// R̂_F = (PF̂) R̂ (F̂^{-1}P) with the same ν.
pub fn twist_r<F: Field>(
    sys: &RMatrixSystem<F>,
    f: &TensorOperator<F>,
) -> Result<RMatrixSystem<F>, FamilyError> {
    if !check_twist_compat(sys.r(), f)?.pass {
        return Err(FamilyError::TwistIncompatible);
    }
    let p = TensorOperator::permutation(sys.dim(), 2, 1, 2)?;
    let f_inv = TensorOperator::new(sys.dim(), 2, inverse(f.matrix())?)?;
    let rf = p
        .compose(f)?
        .compose(sys.r())?
        .compose(&f_inv)?
        .compose(&p)?;
    Ok(RMatrixSystem::new(sys.q().clone(), rf, sys.nu().clone())?)
}

/// Closed-form twisted R̂: each standard entry at (out, in) scaled by d_out / d_in.
pub fn multiparametric_rmatrix(
    spec: &FamilySpec,
    d: &TwistSpec<Scalar>,
) -> Result<TensorOperator<Scalar>, FamilyError> {
    if d.dim() != spec.n {
        return Err(FamilyError::BadDimension(format!(
            "twist has N = {}, family has N = {}",
            d.dim(),
            spec.n
        )));
    }
    validate_twist(d)?;
    let entries = standard_entries(spec, |o, i| {
        Field::div(d.at(o[0], o[1]), d.at(i[0], i[1])).expect("twist entries are nonzero")
    });
    Ok(TensorOperator::from_entries(spec.n, 2, entries)?)
}

/// The closed-form multiparametric R-matrix, checked against the generic twist.
pub fn build_multiparametric(
    series: Series,
    n: usize,
    d: &TwistSpec<Scalar>,
) -> Result<RMatrixSystem<Scalar>, FamilyError> {
    let spec = family_spec(series, n)?;
    let closed = multiparametric_rmatrix(&spec, d)?;
    let generic = twist_r(&build_standard(series, n)?, &build_f(d))?;
    if &closed != generic.r() {
        return Err(FamilyError::ClosedFormMismatch);
    }
    Ok(generic)
}

/// Closed-form twisted pairings and X = diag(d_{i'i}/d_{ii'}).
pub fn twisted_expected(
    spec: &FamilySpec,
    d: &TwistSpec<Scalar>,
) -> (PairingPair<Scalar>, FieldMatrix<Scalar>) {
    let n = spec.n;
    let pair = twisted_pairings(spec, |i, j| d.at(i, j).clone());
    let x = FieldMatrix::from_diagonal((1..=n).map(|i| {
        let ip = spec.flip(i);
        Field::div(d.at(ip, i), d.at(i, ip)).expect("twist entries are nonzero")
    }));
    (pair, x)
}
