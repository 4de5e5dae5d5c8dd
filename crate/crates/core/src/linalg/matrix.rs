use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::LinalgError;
use crate::field::Field;

/// A square sparse matrix stored row by row.
///
/// Each row holds `(column, value)` pairs sorted by column with no zero
/// values. Rows are output coordinates and columns input coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix<F> {
    dim: usize,
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|_| Vec::new()).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal((0..dim).map(|_| F::one()))
    }

    pub fn from_diagonal<I: IntoIterator<Item = F>>(diag: I) -> Self {
        let rows: Vec<Vec<(usize, F)>> = diag
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                if v.is_zero() {
                    Vec::new()
                } else {
                    alloc::vec![(k, v)]
                }
            })
            .collect();
        Self {
            dim: rows.len(),
            rows,
        }
    }

    /// Accumulates `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize, F)>>(dim: usize, entries: I) -> Self {
        let mut m = Self::zeros(dim);
        for (r, c, v) in entries {
            m.add_at(r, c, &v);
        }
        m
    }

    /// Builds from a dense row-major array.
    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let dim = rows.len();
        let rows = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), dim, "dense matrix must be square");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    pub(crate) fn from_rows(dim: usize, rows: Vec<Vec<(usize, F)>>) -> Self {
        debug_assert_eq!(rows.len(), dim);
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, F)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0)
            .ok()
            .map(|k| &row[k].1)
    }

    /// The entry at `(r, c)`, zero when absent.
    pub fn at(&self, r: usize, c: usize) -> F {
        self.get(r, c).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.dim && c < self.dim, "index out of range");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &F) {
        if v.is_zero() {
            return;
        }
        let cur = self.at(r, c);
        self.set(r, c, cur.add(v));
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &F)> {
        self.entries().next()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LinalgError::ShapeMismatch(alloc::format!(
                "{} vs {}", self.dim, other.dim
            )))
        }
    }

    fn merge_rows(a: &[(usize, F)], b: &[(usize, F)], negate: bool) -> Vec<(usize, F)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let v = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, v));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| Self::merge_rows(a, b, false))
            .collect();
        Ok(Self {
            dim: self.dim,
            rows,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| Self::merge_rows(a, b, true))
            .collect();
        Ok(Self {
            dim: self.dim,
            rows,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(k, v)| (*k, v.mul(c))).collect())
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn neg(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(k, v)| (*k, v.neg())).collect())
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let mut acc: Vec<Option<F>> = (0..self.dim).map(|_| None).collect();
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a.mul(b);
                    match &mut acc[*j] {
                        Some(v) => *v = v.add(&p),
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let out: Vec<(usize, F)> = touched
                .drain(..)
                .filter_map(|j| acc[j].take().filter(|v| !v.is_zero()).map(|v| (j, v)))
                .collect();
            rows.push(out);
        }
        Ok(Self {
            dim: self.dim,
            rows,
        })
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(F::zero(), |acc, (c, a)| acc.add(&a.mul(&v[*c])))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, F)>> = (0..self.dim).map(|_| Vec::new()).collect();
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn trace(&self) -> F {
        (0..self.dim)
            .filter_map(|k| self.get(k, k))
            .fold(F::zero(), |acc, v| acc.add(v))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.dim).map(|k| self.at(k, k)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.at(r, c)).collect())
            .collect()
    }

    /// Maps every stored entry through a fallible conversion into another field.
    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<FieldMatrix<G>, E> {
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let g = f(v)?;
                if !g.is_zero() {
                    out.push((*c, g));
                }
            }
            rows.push(out);
        }
        Ok(FieldMatrix {
            dim: self.dim,
            rows,
        })
    }
}
