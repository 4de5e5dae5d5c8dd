use alloc::vec::Vec;

use super::kappa::KappaData;
use crate::error::BmwError;
use crate::field::Field;
use crate::linalg::{rank, TensorOperator};

/// The entry of K̂ that fixed the normalization of a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot<F> {
    pub out: [usize; 2],
    pub inp: [usize; 2],
    pub value: F,
}

/// Bilinear forms with K̂ = ḡ ⊗ g: the entry of K̂ at output (i, j) and
/// input (k, l) is ḡ_{ij} g^{kl}.
///
/// `g[k][l]` is g^{k+1,l+1} and `gbar[i][j]` is ḡ_{i+1,j+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingPair<F> {
    pub g: Vec<Vec<F>>,
    pub gbar: Vec<Vec<F>>,
    pub pivot: Option<Pivot<F>>,
}

/// Factors a rank-one K̂ using its first nonzero entry in row-major order.
pub fn factor_pairings<F: Field>(kappa: &KappaData<F>) -> Result<PairingPair<F>, BmwError> {
    factor_pairings_gauged(kappa, &F::one())
}

/// As [`factor_pairings`], with g scaled by `c` and ḡ by `c^{-1}`.
pub fn factor_pairings_gauged<F: Field>(
    kappa: &KappaData<F>,
    c: &F,
) -> Result<PairingPair<F>, BmwError> {
    let m = kappa.k.matrix();
    let r = rank(m);
    if r != 1 {
        return Err(BmwError::RankNotOne(r));
    }
    let n = kappa.k.n();
    let ci = c.inv().ok_or(BmwError::RankNotOne(0))?;
    let (row0, col0, piv) = m.first_nonzero().expect("rank one");
    let piv = piv.clone();
    let pinv = piv.inv().expect("pivot is nonzero");
    let g = (0..n)
        .map(|k| (0..n).map(|l| m.at(row0, k * n + l).mul(c)).collect())
        .collect();
    let gbar = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m.at(i * n + j, col0).mul(&pinv).mul(&ci))
                .collect()
        })
        .collect();
    let split = |x: usize| [x / n + 1, x % n + 1];
    Ok(PairingPair {
        g,
        gbar,
        pivot: Some(Pivot {
            out: split(row0),
            inp: split(col0),
            value: piv,
        }),
    })
}

impl<F: Field> PairingPair<F> {
    pub fn dim(&self) -> usize {
        self.g.len()
    }

    /// The operator with entries ḡ_{ij} g^{kl} at (out (i, j), in (k, l)).
    pub fn operator(&self) -> TensorOperator<F> {
        let n = self.dim();
        let mut entries = Vec::new();
        for k in 0..n {
            for l in 0..n {
                if self.g[k][l].is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        if !self.gbar[i][j].is_zero() {
                            entries.push((
                                alloc::vec![i + 1, j + 1],
                                alloc::vec![k + 1, l + 1],
                                self.gbar[i][j].mul(&self.g[k][l]),
                            ));
                        }
                    }
                }
            }
        }
        TensorOperator::from_entries(n, 2, entries).expect("labels in range")
    }

    /// Σ g^{ij} ḡ_{ij}.
    pub fn loop_value(&self) -> F {
        let mut acc = F::zero();
        for (gr, br) in self.g.iter().zip(&self.gbar) {
            for (a, b) in gr.iter().zip(br) {
                acc = acc.add(&a.mul(b));
            }
        }
        acc
    }

    /// The scalar c with `self.g = c·other.g` and `self.gbar = c^{-1}·other.gbar`, if any.
    pub fn gauge_ratio(&self, other: &Self) -> Option<F> {
        if self.dim() != other.dim() || other.dim() == 0 {
            return None;
        }
        let (k, l) = other
            .g
            .iter()
            .enumerate()
            .find_map(|(k, row)| row.iter().position(|x| !x.is_zero()).map(|l| (k, l)))?;
        let c = self.g[k][l].div(&other.g[k][l])?;
        let ci = c.inv()?;
        let g_ok = self
            .g
            .iter()
            .flatten()
            .zip(other.g.iter().flatten())
            .all(|(a, b)| *a == b.mul(&c));
        let b_ok = self
            .gbar
            .iter()
            .flatten()
            .zip(other.gbar.iter().flatten())
            .all(|(a, b)| *a == b.mul(&ci));
        (g_ok && b_ok).then_some(c)
    }

    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<PairingPair<G>, E> {
        let mut map2 = |m: &Vec<Vec<F>>| -> Result<Vec<Vec<G>>, E> {
            m.iter().map(|r| r.iter().map(&mut f).collect()).collect()
        };
        let g = map2(&self.g)?;
        let gbar = map2(&self.gbar)?;
        let pivot = match &self.pivot {
            Some(p) => Some(Pivot {
                out: p.out,
                inp: p.inp,
                value: f(&p.value)?,
            }),
            None => None,
        };
        Ok(PairingPair { g, gbar, pivot })
    }
}
