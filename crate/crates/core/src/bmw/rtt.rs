use super::kappa::KappaData;
use super::outcome::Outcome;
use super::xy::XYPair;
use crate::field::Field;
use crate::linalg::{FieldMatrix, TensorOperator};

/// T_1 K̂_23 K̂_12 = K̂_23 K̂_12 (X T X^{-1})_3 for every matrix unit T = e_ab;
/// linearity extends it to all T. Reports the first failing unit.
pub fn rtt_lemma<F: Field>(kappa: &KappaData<F>, xy: &XYPair<F>) -> Outcome<F> {
    let n = kappa.k.n();
    let k23 = kappa.k.embed(&[2, 3], 3).expect("arity 2");
    let k12 = kappa.k.embed(&[1, 2], 3).expect("arity 2");
    let kk = k23.compose(&k12).expect("same shape");
    let eq = "T1 K23 K12 = K23 K12 (X T X^-1)3";
    for a in 0..n {
        for b in 0..n {
            let t = FieldMatrix::from_entries(n, [(a, b, F::one())]);
            let conj = xy.x.mul(&t).and_then(|m| m.mul(&xy.y)).expect("same shape");
            let t1 = TensorOperator::from_site_matrix(t)
                .embed(&[1], 3)
                .expect("site");
            let c3 = TensorOperator::from_site_matrix(conj)
                .embed(&[3], 3)
                .expect("site");
            let lhs = t1.compose(&kk).expect("same shape");
            let rhs = kk.compose(&c3).expect("same shape");
            let o = Outcome::from_equality("rtt.lemma", eq, &lhs, &rhs).expect("same shape");
            if !o.pass {
                return o;
            }
        }
    }
    Outcome::flag("rtt.lemma", eq, true)
}
