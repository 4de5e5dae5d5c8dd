//! Characteristic polynomial via the Faddeev–LeVerrier recurrence.

use alloc::vec::Vec;

use super::matrix::FieldMatrix;
use crate::field::Field;

/// Coefficients `C_0..C_dim` with `det(xI − m) = Σ_k (−1)^k C_k x^{dim−k}`.
///
/// So `C_0 = 1`, `C_1 = tr m` and `C_dim = det m`. Intended for small
/// matrices; the recurrence is dense.
pub fn char_poly<F: Field>(m: &FieldMatrix<F>) -> Vec<F> {
    let n = m.dim();
    // c[k] is the coefficient of x^{n-k} in det(xI - m).
    let mut c = Vec::with_capacity(n + 1);
    c.push(F::one());
    let id = FieldMatrix::identity(n);
    let mut mk = FieldMatrix::zeros(n);
    for k in 1..=n {
        mk = m
            .mul(&mk)
            .expect("square")
            .add(&id.scale(&c[k - 1]))
            .expect("square");
        let am = m.mul(&mk).expect("square");
        let ck = am.trace().neg().div(&F::from_i64(k as i64)).expect("k > 0");
        c.push(ck);
    }
    c.into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { v.neg() } else { v })
        .collect()
}
