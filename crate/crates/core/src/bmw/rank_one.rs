use alloc::vec::Vec;

use super::kappa::KappaData;
use super::outcome::Outcome;
use super::skew::SkewData;
use super::system::RMatrixSystem;
use crate::error::LinalgError;
use crate::field::Field;
use crate::linalg::{rank, FieldMatrix, TensorOperator};

/// Rank of K̂ and the trace identities it implies. The rank enters the
/// identities as computed, so a rank other than one shows up as failures.
pub fn rank_one_suite<F: Field>(
    sys: &RMatrixSystem<F>,
    skew: &SkewData<F>,
    kappa: &KappaData<F>,
) -> Vec<Outcome<F>> {
    suite(sys, skew, kappa).expect("consistent shapes")
}

fn suite<F: Field>(
    sys: &RMatrixSystem<F>,
    skew: &SkewData<F>,
    kappa: &KappaData<F>,
) -> Result<Vec<Outcome<F>>, LinalgError> {
    let n = sys.dim();
    let k = &kappa.k;
    let nu = sys.nu();
    let nui = nu.inv().expect("ν is nonzero");
    let r = rank(k.matrix());
    let rk = F::from_i64(r as i64);
    let nu2 = FieldMatrix::identity(n).scale(&nu.mul(nu));
    let site = |m: FieldMatrix<F>| TensorOperator::from_site_matrix(m);
    let d2 = site(skew.d.clone()).embed(&[2], 2)?;
    let mut out = Vec::new();

    out.push(Outcome::flag("rank.k", "rank K = 1", r == 1));
    out.push(Outcome::from_scalars(
        "trace.k-full",
        "Tr_12 K = mu rank K",
        &k.trace(),
        &kappa.mu.mul(&rk),
    ));
    let coef = nui.mul(&rk);
    out.push(Outcome::from_equality(
        "trace.k-d",
        "Tr_2 K = nu^-1 rank K D",
        &k.partial_trace(2)?,
        &site(skew.d.scale(&coef)),
    )?);
    out.push(Outcome::from_equality(
        "trace.k-c",
        "Tr_1 K = nu^-1 rank K C",
        &k.partial_trace(1)?,
        &site(skew.c.scale(&coef)),
    )?);
    let dr = d2.compose(sys.r_inv())?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "trace.d-rinv",
        "Tr_2(D2 R^-1) = nu^2 I",
        &dr,
        &site(nu2.clone()),
    )?);
    out.push(Outcome::from_equality(
        "cd.product",
        "C D = nu^2 I",
        &site(skew.c.mul(&skew.d)?),
        &site(nu2.clone()),
    )?);
    out.push(Outcome::from_equality(
        "dc.product",
        "D C = nu^2 I",
        &site(skew.d.mul(&skew.c)?),
        &site(nu2),
    )?);
    let dk = d2.compose(k)?.partial_trace(2)?;
    out.push(Outcome::from_equality(
        "trace.dk",
        "Tr_2(D2 K) = nu I",
        &dk,
        &TensorOperator::identity(n, 1).scale(nu),
    )?);
    let numu = nu.mul(&kappa.mu);
    out.push(Outcome::from_scalars(
        "trace.d",
        "Tr D = nu mu",
        &skew.d.trace(),
        &numu,
    ));
    out.push(Outcome::from_scalars(
        "trace.c",
        "Tr C = nu mu",
        &skew.c.trace(),
        &numu,
    ));
    Ok(out)
}
