use alloc::vec;
use alloc::vec::Vec;

use super::outcome::Outcome;
use super::system::RMatrixSystem;
use crate::error::{BmwError, LinalgError};
use crate::field::Field;
use crate::linalg::{solve_multi_rhs, FieldMatrix, TensorOperator};

/// The skew inverse Ψ of R̂ with its partial traces C = Tr_(1)Ψ and D = Tr_(2)Ψ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewData<F> {
    pub psi: TensorOperator<F>,
    pub c: FieldMatrix<F>,
    pub d: FieldMatrix<F>,
}

impl<F: Field> SkewData<F> {
    fn from_psi(psi: TensorOperator<F>) -> Self {
        let c = psi.partial_trace(1).expect("arity 2").into_matrix();
        let d = psi.partial_trace(2).expect("arity 2").into_matrix();
        Self { psi, c, d }
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<SkewData<G>, E> {
        Ok(SkewData {
            psi: self.psi.try_map(&mut f)?,
            c: self.c.try_map(&mut f)?,
            d: self.d.try_map(&mut f)?,
        })
    }
}

fn pair(a: usize, b: usize, n: usize) -> usize {
    a * n + b
}

/// The N²×N² right-hand side δ^a_g δ^c_e, shared by both orientations.
fn delta_rhs<F: Field>(n: usize) -> FieldMatrix<F> {
    FieldMatrix::from_entries(
        n * n,
        (0..n).flat_map(|a| (0..n).map(move |e| (pair(a, e, n), pair(e, a, n), F::one()))),
    )
}

fn check_arity<F: Field>(r: &TensorOperator<F>) -> Result<(), BmwError> {
    if r.arity() == 2 {
        Ok(())
    } else {
        Err(LinalgError::ShapeMismatch("R-matrix must have arity 2".into()).into())
    }
}

/// Solves Σ R^{ab}_{eb'} Ψ^{b'c}_{bg} = δ^a_g δ^c_e for Ψ.
pub fn skew_inverse<F: Field>(r: &TensorOperator<F>) -> Result<SkewData<F>, BmwError> {
    check_arity(r)?;
    let n = r.n();
    // row (a,e), column (b',b) holds R^{ab}_{eb'}
    let m = FieldMatrix::from_entries(
        n * n,
        r.matrix().entries().map(|(row, col, v)| {
            let (a, b) = (row / n, row % n);
            let (e, bp) = (col / n, col % n);
            (pair(a, e, n), pair(bp, b, n), v.clone())
        }),
    );
    let x = solve_multi_rhs(&m, &delta_rhs(n)).map_err(|_| BmwError::NotSkewInvertible)?;
    // x[(b',b),(c,g)] = Ψ^{b'c}_{bg}
    let psi = FieldMatrix::from_entries(
        n * n,
        x.entries().map(|(row, col, v)| {
            let (bp, b) = (row / n, row % n);
            let (c, g) = (col / n, col % n);
            (pair(bp, c, n), pair(b, g, n), v.clone())
        }),
    );
    Ok(SkewData::from_psi(TensorOperator::new(n, 2, psi)?))
}

/// Solves the mirrored system Σ Ψ^{ab}_{eb'} R^{b'c}_{bg} = δ^a_g δ^c_e.
/// For a skew-invertible R̂ both systems share the same solution.
pub fn skew_inverse_mirror<F: Field>(r: &TensorOperator<F>) -> Result<SkewData<F>, BmwError> {
    check_arity(r)?;
    let n = r.n();
    // row (c,g), column (b,b') holds R^{b'c}_{bg}
    let m = FieldMatrix::from_entries(
        n * n,
        r.matrix().entries().map(|(row, col, v)| {
            let (bp, c) = (row / n, row % n);
            let (b, g) = (col / n, col % n);
            (pair(c, g, n), pair(b, bp, n), v.clone())
        }),
    );
    let y = solve_multi_rhs(&m, &delta_rhs(n)).map_err(|_| BmwError::NotSkewInvertible)?;
    // y[(b,b'),(a,e)] = Ψ^{ab}_{eb'}
    let psi = FieldMatrix::from_entries(
        n * n,
        y.entries().map(|(row, col, v)| {
            let (b, bp) = (row / n, row % n);
            let (a, e) = (col / n, col % n);
            (pair(a, b, n), pair(e, bp, n), v.clone())
        }),
    );
    Ok(SkewData::from_psi(TensorOperator::new(n, 2, psi)?))
}

fn site<F: Field>(
    m: &FieldMatrix<F>,
    pos: usize,
    arity: usize,
) -> Result<TensorOperator<F>, LinalgError> {
    TensorOperator::from_site_matrix(m.clone()).embed(&[pos], arity)
}

/// The defining identities of Ψ, C and D written as operator equations.
pub fn skew_outcomes<F: Field>(
    r: &TensorOperator<F>,
    skew: &SkewData<F>,
) -> Result<Vec<Outcome<F>>, LinalgError> {
    let n = r.n();
    let p13 = TensorOperator::permutation(n, 2, 1, 2)?;
    let r12 = r.embed(&[1, 2], 3)?;
    let r23 = r.embed(&[2, 3], 3)?;
    let psi12 = skew.psi.embed(&[1, 2], 3)?;
    let psi23 = skew.psi.embed(&[2, 3], 3)?;
    let id1 = TensorOperator::identity(n, 1);
    let mut out = Vec::new();
    let left = r12.compose(&psi23)?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "skew.left",
        "Tr_2(R12 Psi23) = P13",
        &left,
        &p13,
    )?);
    let right = psi12.compose(&r23)?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "skew.right",
        "Tr_2(Psi12 R23) = P13",
        &right,
        &p13,
    )?);
    let ct = site(&skew.c, 1, 2)?.compose(r)?.partial_trace(1)?;
    out.push(Outcome::from_equality(
        "skew.c-trace",
        "Tr_1(C1 R12) = I",
        &ct,
        &id1,
    )?);
    let dt = site(&skew.d, 2, 2)?.compose(r)?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "skew.d-trace",
        "Tr_2(D2 R12) = I",
        &dt,
        &id1,
    )?);
    Ok(out)
}

/// Intertwining relations of Ψ with C and D, the partial traces of R̂_{21}^{-1}
/// and commutativity of C and D.
pub fn check_intertwining<F: Field>(sys: &RMatrixSystem<F>, skew: &SkewData<F>) -> Vec<Outcome<F>> {
    intertwining(sys, skew).expect("consistent shapes")
}

fn intertwining<F: Field>(
    sys: &RMatrixSystem<F>,
    skew: &SkewData<F>,
) -> Result<Vec<Outcome<F>>, LinalgError> {
    let n = sys.dim();
    let p = TensorOperator::permutation(n, 2, 1, 2)?;
    let r21_inv = p.compose(sys.r_inv())?.compose(&p)?;
    let (c1, c2) = (site(&skew.c, 1, 2)?, site(&skew.c, 2, 2)?);
    let (d1, d2) = (site(&skew.d, 1, 2)?, site(&skew.d, 2, 2)?);
    let psi = &skew.psi;
    let cd = TensorOperator::from_site_matrix(skew.c.mul(&skew.d)?);
    let dc = TensorOperator::from_site_matrix(skew.d.mul(&skew.c)?);
    let mut out = vec![
        Outcome::from_equality(
            "psi.c-left",
            "C1 Psi12 = R21^-1 C2",
            &c1.compose(psi)?,
            &r21_inv.compose(&c2)?,
        )?,
        Outcome::from_equality(
            "psi.c-right",
            "Psi12 C1 = C2 R21^-1",
            &psi.compose(&c1)?,
            &c2.compose(&r21_inv)?,
        )?,
        Outcome::from_equality(
            "psi.d-left",
            "D2 Psi12 = R21^-1 D1",
            &d2.compose(psi)?,
            &r21_inv.compose(&d1)?,
        )?,
        Outcome::from_equality(
            "psi.d-right",
            "Psi12 D2 = D1 R21^-1",
            &psi.compose(&d2)?,
            &d1.compose(&r21_inv)?,
        )?,
    ];
    let ct = c2.compose(&r21_inv)?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "cd.c-trace",
        "Tr_2(C2 R21^-1) = C D",
        &ct,
        &cd,
    )?);
    let dt = d2.compose(sys.r_inv())?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "cd.d-trace",
        "Tr_2(D2 R12^-1) = C D",
        &dt,
        &cd,
    )?);
    out.push(Outcome::from_equality("cd.commute", "C D = D C", &cd, &dc)?);
    Ok(out)
}
