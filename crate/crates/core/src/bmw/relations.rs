use alloc::vec::Vec;

use super::kappa::KappaData;
use super::outcome::Outcome;
use super::system::{check_yang_baxter, RMatrixSystem};
use crate::error::LinalgError;
use crate::field::Field;
use crate::linalg::TensorOperator;

type Op<F> = TensorOperator<F>;

struct Sites<F> {
    r1: Op<F>,
    r2: Op<F>,
    ri1: Op<F>,
    ri2: Op<F>,
    k1: Op<F>,
    k2: Op<F>,
}

impl<F: Field> Sites<F> {
    fn new(sys: &RMatrixSystem<F>, kappa: &KappaData<F>) -> Result<Self, LinalgError> {
        let at = |op: &Op<F>, p: [usize; 2]| op.embed(&p, 3);
        Ok(Self {
            r1: at(sys.r(), [1, 2])?,
            r2: at(sys.r(), [2, 3])?,
            ri1: at(sys.r_inv(), [1, 2])?,
            ri2: at(sys.r_inv(), [2, 3])?,
            k1: at(&kappa.k, [1, 2])?,
            k2: at(&kappa.k, [2, 3])?,
        })
    }
}

fn prod<F: Field>(ops: &[&Op<F>]) -> Result<Op<F>, LinalgError> {
    let mut acc = ops[0].clone();
    for op in &ops[1..] {
        acc = acc.compose(op)?;
    }
    Ok(acc)
}

/// Two-site relations on V⊗V.
pub(crate) fn two_site<F: Field>(
    sys: &RMatrixSystem<F>,
    kappa: &KappaData<F>,
) -> Result<Vec<Outcome<F>>, LinalgError> {
    let (r, k, nu) = (sys.r(), &kappa.k, sys.nu());
    let id = Op::identity(sys.dim(), 2);
    let lam = sys.lambda();
    let q = sys.q();
    let qi = q.inv().expect("q is nonzero");
    let mut out = Vec::new();

    let rhs = id.add(&r.sub(&k.scale(nu))?.scale(&lam))?;
    out.push(Outcome::from_equality(
        "bmw.cubic",
        "R^2 = I + lambda (R - nu K)",
        &r.compose(r)?,
        &rhs,
    )?);
    let nk = k.scale(nu);
    let ksq = k.compose(k)?;
    out.push(Outcome::from_equality(
        "bmw.kappa-square",
        "K^2 = mu K",
        &ksq,
        &k.scale(&kappa.mu),
    )?);
    out.push(Outcome::from_equality(
        "bmw.eigen-left",
        "R K = nu K",
        &r.compose(k)?,
        &nk,
    )?);
    out.push(Outcome::from_equality(
        "bmw.eigen-right",
        "K R = nu K",
        &k.compose(r)?,
        &nk,
    )?);
    let alt = sys
        .r_inv()
        .sub(r)?
        .add(&id.scale(&lam))?
        .scale(&lam.inv().expect("λ is nonzero"));
    out.push(Outcome::from_equality(
        "bmw.kappa-rinv",
        "K = lambda^-1 (R^-1 - R + lambda)",
        k,
        &alt,
    )?);
    let cubic = prod(&[
        &r.sub(&id.scale(q))?,
        &r.add(&id.scale(&qi))?,
        &r.sub(&id.scale(nu))?,
    ])?;
    out.push(Outcome::from_residual(
        "bmw.spectral",
        "(R - q)(R + q^-1)(R - nu) = 0",
        &cubic,
    ));
    Ok(out)
}

/// Three-site relations on V^{⊗3} plus far commutativity on V^{⊗4}.
pub(crate) fn multi_site<F: Field>(
    sys: &RMatrixSystem<F>,
    kappa: &KappaData<F>,
) -> Result<Vec<Outcome<F>>, LinalgError> {
    let s = Sites::new(sys, kappa)?;
    let nu = sys.nu();
    let nui = nu.inv().expect("ν is nonzero");
    let mut out = Vec::new();

    let r4a = sys.r().embed(&[1, 2], 4)?;
    let r4b = sys.r().embed(&[3, 4], 4)?;
    out.push(Outcome::from_equality(
        "braid.far-commute",
        "R1 R3 = R3 R1",
        &r4a.compose(&r4b)?,
        &r4b.compose(&r4a)?,
    )?);
    drop((r4a, r4b));

    out.push(Outcome::from_equality(
        "bmw.krk",
        "K2 R1 K2 = nu^-1 K2",
        &prod(&[&s.k2, &s.r1, &s.k2])?,
        &s.k2.scale(&nui),
    )?);
    out.push(Outcome::from_equality(
        "bmw.krinvk",
        "K2 R1^-1 K2 = nu K2",
        &prod(&[&s.k2, &s.ri1, &s.k2])?,
        &s.k2.scale(nu),
    )?);
    let k2k1 = s.k2.compose(&s.k1)?;
    let k1k2 = s.k1.compose(&s.k2)?;
    out.push(Outcome::from_equality(
        "bmw.kk-rinv",
        "K2 K1 = K2 R1^-1 R2^-1",
        &k2k1,
        &prod(&[&s.k2, &s.ri1, &s.ri2])?,
    )?);
    out.push(Outcome::from_equality(
        "bmw.kk-up",
        "K1 K2 = K1 R2 R1",
        &k1k2,
        &prod(&[&s.k1, &s.r2, &s.r1])?,
    )?);
    out.push(Outcome::from_equality(
        "bmw.kk-down",
        "K2 K1 = K2 R1 R2",
        &k2k1,
        &prod(&[&s.k2, &s.r1, &s.r2])?,
    )?);
    out.push(Outcome::from_equality(
        "bmw.kkk-up",
        "K1 K2 K1 = K1",
        &k1k2.compose(&s.k1)?,
        &s.k1,
    )?);
    out.push(Outcome::from_equality(
        "bmw.kkk-down",
        "K2 K1 K2 = K2",
        &k2k1.compose(&s.k2)?,
        &s.k2,
    )?);
    out.push(Outcome::from_equality(
        "bmw.krk-up",
        "K1 R2 K1 = nu^-1 K1",
        &prod(&[&s.k1, &s.r2, &s.k1])?,
        &s.k1.scale(&nui),
    )?);
    out.push(Outcome::from_equality(
        "bmw.krinvk-up",
        "K1 R2^-1 K1 = nu K1",
        &prod(&[&s.k1, &s.ri2, &s.k1])?,
        &s.k1.scale(nu),
    )?);
    Ok(out)
}

/// The full relation suite: braid relations, the cubic and eigenvalue
/// relations, both K̂R̂K̂ relations and the dependent three-site identities.
pub fn check_bmw_relations<F: Field>(
    sys: &RMatrixSystem<F>,
    kappa: &KappaData<F>,
) -> Vec<Outcome<F>> {
    let mut out = alloc::vec![check_yang_baxter(sys)];
    out.extend(two_site(sys, kappa).expect("consistent shapes"));
    out.extend(multi_site(sys, kappa).expect("consistent shapes"));
    out
}
