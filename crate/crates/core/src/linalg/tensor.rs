use alloc::format;
use alloc::vec::Vec;

use super::matrix::FieldMatrix;
use crate::error::LinalgError;
use crate::field::Field;

/// A basis label of V^{⊗n}: one 1-based label per tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    /// Row-major position `Σ (parts_k - 1) N^{n-k}`.
    pub fn linear(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &p| acc * n + (p - 1))
    }

    pub fn from_linear(mut r: usize, n: usize, arity: usize) -> Self {
        let mut parts = alloc::vec![0; arity];
        for slot in parts.iter_mut().rev() {
            *slot = r % n + 1;
            r /= n;
        }
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

/// The first nonzero entry of a residual, decoded into multi-indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F> {
    pub out: Vec<usize>,
    pub inp: Vec<usize>,
    pub value: F,
}

/// An operator on V^{⊗arity} with dim V = `n`.
///
/// Entry (out, in) is the coefficient of v_out in the image of v_in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator<F> {
    n: usize,
    arity: usize,
    mat: FieldMatrix<F>,
}

fn digits(mut r: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = r % n;
        r /= n;
    }
}

fn linearize(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// Sorts each row by column, summing duplicates and dropping zeros.
fn finish_rows<F: Field>(rows: &mut [Vec<(usize, F)>]) {
    for row in rows.iter_mut() {
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, F)> = Vec::with_capacity(row.len());
        for (c, v) in row.drain(..) {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = last.1.add(&v),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        *row = merged;
    }
}

impl<F: Field> TensorOperator<F> {
    pub fn new(n: usize, arity: usize, mat: FieldMatrix<F>) -> Result<Self, LinalgError> {
        if n == 0 || arity == 0 {
            return Err(LinalgError::ShapeMismatch(format!(
                "n = {n}, arity = {arity}"
            )));
        }
        let dim = n
            .checked_pow(arity as u32)
            .ok_or_else(|| LinalgError::ShapeMismatch("dimension overflow".into()))?;
        if mat.dim() != dim {
            return Err(LinalgError::ShapeMismatch(format!(
                "matrix dim {} but {n}^{arity} = {dim}",
                mat.dim()
            )));
        }
        Ok(Self { n, arity, mat })
    }

    /// Builds from `(out, in, value)` with 1-based multi-indices; repeats are summed.
    pub fn from_entries<I>(n: usize, arity: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, F)>,
    {
        let dim = n.pow(arity as u32);
        let mut rows: Vec<Vec<(usize, F)>> = (0..dim).map(|_| Vec::new()).collect();
        for (out, inp, v) in entries {
            if out.len() != arity || inp.len() != arity {
                return Err(LinalgError::BadPositions(format!(
                    "multi-index length must be {arity}"
                )));
            }
            if out.iter().chain(&inp).any(|&p| p == 0 || p > n) {
                return Err(LinalgError::BadPositions(format!(
                    "labels must lie in 1..={n}"
                )));
            }
            let r = MultiIndex(out).linear(n);
            let c = MultiIndex(inp).linear(n);
            rows[r].push((c, v));
        }
        finish_rows(&mut rows);
        Self::new(n, arity, FieldMatrix::from_rows(dim, rows))
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        Self {
            n,
            arity,
            mat: FieldMatrix::identity(n.pow(arity as u32)),
        }
    }

    /// The single-site operator with matrix `m` (dim V).
    pub fn from_site_matrix(m: FieldMatrix<F>) -> Self {
        Self {
            n: m.dim(),
            arity: 1,
            mat: m,
        }
    }

    /// P_{kl} on V^{⊗arity}, swapping factors `k < l` (1-based).
    pub fn permutation(n: usize, arity: usize, k: usize, l: usize) -> Result<Self, LinalgError> {
        if !(1 <= k && k < l && l <= arity) {
            return Err(LinalgError::BadPositions(format!(
                "need 1 <= k < l <= {arity}, got ({k}, {l})"
            )));
        }
        let dim = n.pow(arity as u32);
        let mut d = alloc::vec![0; arity];
        let rows = (0..dim)
            .map(|r| {
                digits(r, n, &mut d);
                d.swap(k - 1, l - 1);
                alloc::vec![(linearize(&d, n), F::one())]
            })
            .collect();
        Ok(Self {
            n,
            arity,
            mat: FieldMatrix::from_rows(dim, rows),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &FieldMatrix<F> {
        &self.mat
    }

    pub fn into_matrix(self) -> FieldMatrix<F> {
        self.mat
    }

    /// Entry at 1-based multi-indices.
    pub fn entry(&self, out: &[usize], inp: &[usize]) -> F {
        self.mat.at(
            MultiIndex(out.to_vec()).linear(self.n),
            MultiIndex(inp.to_vec()).linear(self.n),
        )
    }

    /// Acts as `self` on the factors named by `positions` (1-based, in order)
    /// and as the identity on the remaining factors of V^{⊗arity}.
    pub fn embed(&self, positions: &[usize], arity: usize) -> Result<Self, LinalgError> {
        if positions.len() != self.arity {
            return Err(LinalgError::BadPositions(format!(
                "operator of arity {} needs {} positions",
                self.arity, self.arity
            )));
        }
        let mut seen = alloc::vec![false; arity + 1];
        for &p in positions {
            if p == 0 || p > arity || seen[p] {
                return Err(LinalgError::BadPositions(format!(
                    "{positions:?} in 1..={arity}"
                )));
            }
            seen[p] = true;
        }
        let n = self.n;
        let others: Vec<usize> = (1..=arity).filter(|p| !seen[*p]).collect();
        let rest = n.pow(others.len() as u32);
        let dim = n.pow(arity as u32);
        let mut rows: Vec<Vec<(usize, F)>> = (0..dim).map(|_| Vec::new()).collect();
        let (mut od, mut id) = (alloc::vec![0; self.arity], alloc::vec![0; self.arity]);
        let mut combo = alloc::vec![0; others.len()];
        let (mut fo, mut fi) = (alloc::vec![0; arity], alloc::vec![0; arity]);
        for (r, c, v) in self.mat.entries() {
            digits(r, n, &mut od);
            digits(c, n, &mut id);
            for (k, &p) in positions.iter().enumerate() {
                fo[p - 1] = od[k];
                fi[p - 1] = id[k];
            }
            for t in 0..rest {
                digits(t, n, &mut combo);
                for (k, &p) in others.iter().enumerate() {
                    fo[p - 1] = combo[k];
                    fi[p - 1] = combo[k];
                }
                rows[linearize(&fo, n)].push((linearize(&fi, n), v.clone()));
            }
        }
        finish_rows(&mut rows);
        Ok(Self {
            n,
            arity,
            mat: FieldMatrix::from_rows(dim, rows),
        })
    }

    /// Trace over the factor `space` (1-based).
    pub fn partial_trace(&self, space: usize) -> Result<Self, LinalgError> {
        if self.arity < 2 || space == 0 || space > self.arity {
            return Err(LinalgError::BadPositions(format!(
                "cannot trace space {space} of arity {}",
                self.arity
            )));
        }
        let n = self.n;
        let arity = self.arity - 1;
        let dim = n.pow(arity as u32);
        let mut rows: Vec<Vec<(usize, F)>> = (0..dim).map(|_| Vec::new()).collect();
        let (mut od, mut id) = (alloc::vec![0; self.arity], alloc::vec![0; self.arity]);
        for (r, c, v) in self.mat.entries() {
            digits(r, n, &mut od);
            digits(c, n, &mut id);
            if od[space - 1] != id[space - 1] {
                continue;
            }
            od.remove(space - 1);
            id.remove(space - 1);
            rows[linearize(&od, n)].push((linearize(&id, n), v.clone()));
            od.push(0);
            id.push(0);
        }
        finish_rows(&mut rows);
        Ok(Self {
            n,
            arity,
            mat: FieldMatrix::from_rows(dim, rows),
        })
    }

    /// Traces several factors, labels referring to the original operator.
    pub fn partial_trace_many(&self, spaces: &[usize]) -> Result<Self, LinalgError> {
        let mut sorted = spaces.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted.dedup();
        let mut cur = self.clone();
        for s in sorted {
            cur = cur.partial_trace(s)?;
        }
        Ok(cur)
    }

    pub fn trace(&self) -> F {
        self.mat.trace()
    }

    fn check_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.n == other.n && self.arity == other.arity {
            Ok(())
        } else {
            Err(LinalgError::ShapeMismatch(format!(
                "(N={}, arity {}) vs (N={}, arity {})",
                self.n, self.arity, other.n, other.arity
            )))
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_shape(other)?;
        Ok(Self {
            n: self.n,
            arity: self.arity,
            mat: self.mat.mul(&other.mat)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_shape(other)?;
        Ok(Self {
            n: self.n,
            arity: self.arity,
            mat: self.mat.add(&other.mat)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_shape(other)?;
        Ok(Self {
            n: self.n,
            arity: self.arity,
            mat: self.mat.sub(&other.mat)?,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            n: self.n,
            arity: self.arity,
            mat: self.mat.scale(c),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            arity: self.arity,
            mat: self.mat.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// `None` when the operator vanishes, otherwise its first nonzero entry.
    pub fn witness(&self) -> Option<Witness<F>> {
        self.mat.first_nonzero().map(|(r, c, v)| Witness {
            out: MultiIndex::from_linear(r, self.n, self.arity).0,
            inp: MultiIndex::from_linear(c, self.n, self.arity).0,
            value: v.clone(),
        })
    }

    pub fn try_map<G: Field, E>(
        &self,
        f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<TensorOperator<G>, E> {
        Ok(TensorOperator {
            n: self.n,
            arity: self.arity,
            mat: self.mat.try_map(f)?,
        })
    }
}
