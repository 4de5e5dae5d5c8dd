use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::outcome::Outcome;
use super::pairing::PairingPair;
use crate::error::{BmwError, LinalgError};
use crate::field::Field;
use crate::linalg::{char_poly, FieldMatrix, TensorOperator};

/// Mixed contractions X_i^j = Σ_k g^{ik}ḡ_{kj} and Y_i^j = Σ_k g^{kj}ḡ_{ik}
/// (lower index is the row), with the characteristic polynomial of X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYPair<F> {
    pub x: FieldMatrix<F>,
    pub y: FieldMatrix<F>,
    /// `char_poly[k]` is C_k in det(tI − X) = Σ (−1)^k C_k t^{N−k}.
    pub char_poly: Vec<F>,
    pub epsilon: i8,
}

fn contractions<F: Field>(pair: &PairingPair<F>) -> (FieldMatrix<F>, FieldMatrix<F>) {
    let n = pair.dim();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let mut xr = Vec::with_capacity(n);
        let mut yr = Vec::with_capacity(n);
        for j in 0..n {
            let mut sx = F::zero();
            let mut sy = F::zero();
            for k in 0..n {
                sx = sx.add(&pair.g[i][k].mul(&pair.gbar[k][j]));
                sy = sy.add(&pair.g[k][j].mul(&pair.gbar[i][k]));
            }
            xr.push(sx);
            yr.push(sy);
        }
        x.push(xr);
        y.push(yr);
    }
    (FieldMatrix::from_dense(&x), FieldMatrix::from_dense(&y))
}

/// X, Y and the reciprocity sign ε, after checking XY = I, the palindromic
/// symmetry C_k = εC_{N−k} and C_N C_k = C_{N−k}.
pub fn xy_matrices<F: Field>(pair: &PairingPair<F>) -> Result<XYPair<F>, BmwError> {
    let (outcomes, xy) = xy_outcomes(pair);
    if let Some(bad) = outcomes.iter().find(|o| !o.pass) {
        return Err(BmwError::ReciprocityViolation(bad.equation.clone()));
    }
    xy.ok_or_else(|| BmwError::ReciprocityViolation("det X is not ±1".to_string()))
}

/// Outcome form of [`xy_matrices`]; the pair is returned only when ε is defined.
pub fn xy_outcomes<F: Field>(pair: &PairingPair<F>) -> (Vec<Outcome<F>>, Option<XYPair<F>>) {
    outcomes(pair).expect("consistent shapes")
}

type XYOutcomes<F> = (Vec<Outcome<F>>, Option<XYPair<F>>);

fn outcomes<F: Field>(pair: &PairingPair<F>) -> Result<XYOutcomes<F>, LinalgError> {
    let n = pair.dim();
    let (x, y) = contractions(pair);
    let op = |m: FieldMatrix<F>| TensorOperator::from_site_matrix(m);
    let mut out = Vec::new();
    out.push(Outcome::from_equality(
        "xy.inverse",
        "X Y = I",
        &op(x.mul(&y)?),
        &TensorOperator::identity(n, 1),
    )?);

    let (mut xp, mut yp) = (x.clone(), y.clone());
    let mut first_bad = None;
    for k in 1..=n {
        if k > 1 {
            xp = xp.mul(&x)?;
            yp = yp.mul(&y)?;
        }
        if first_bad.is_none() && xp.trace() != yp.trace() {
            first_bad = Some(Outcome::from_scalars(
                "xy.trace-powers",
                &format!("Tr X^{k} = Tr Y^{k}"),
                &xp.trace(),
                &yp.trace(),
            ));
        }
    }
    out.push(
        first_bad
            .unwrap_or_else(|| Outcome::flag("xy.trace-powers", "Tr X^k = Tr Y^k, k = 1..N", true)),
    );

    let cp = char_poly(&x);
    let epsilon = cp[n].unit_sign();
    let eq = "C_k = eps C_(N-k), eps = C_N = ±1";
    match epsilon {
        None => out.push(Outcome::from_scalars(
            "charpoly.reciprocity",
            eq,
            &cp[n].mul(&cp[n]),
            &F::one(),
        )),
        Some(e) => {
            let ef = F::from_i64(e as i64);
            let bad = (0..=n).find(|&k| cp[k] != ef.mul(&cp[n - k]));
            out.push(match bad {
                Some(k) => {
                    Outcome::from_scalars("charpoly.reciprocity", eq, &cp[k], &ef.mul(&cp[n - k]))
                }
                None => Outcome::flag("charpoly.reciprocity", eq, true),
            });
        }
    }
    let eq = "C_N C_k = C_(N-k)";
    let bad = (0..=n).find(|&k| cp[n].mul(&cp[k]) != cp[n - k]);
    out.push(match bad {
        Some(k) => {
            Outcome::from_scalars("charpoly.det-identity", eq, &cp[n].mul(&cp[k]), &cp[n - k])
        }
        None => Outcome::flag("charpoly.det-identity", eq, true),
    });
    let xy = epsilon.map(|epsilon| XYPair {
        x,
        y,
        char_poly: cp,
        epsilon,
    });
    Ok((out, xy))
}

impl<F: Field> XYPair<F> {
    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<XYPair<G>, E> {
        Ok(XYPair {
            x: self.x.try_map(&mut f)?,
            y: self.y.try_map(&mut f)?,
            char_poly: self
                .char_poly
                .iter()
                .map(&mut f)
                .collect::<Result<_, _>>()?,
            epsilon: self.epsilon,
        })
    }
}
