//! Fraction-free (Bareiss) elimination on sparse rows.
//!
//! Each row is first scaled into the coefficient ring of the field; the
//! elimination step `row ← (p·row − a·pivot_row) / prev` then divides
//! exactly. The pivot for a column is the active row with the fewest
//! nonzeros, lowest index on ties, so results do not depend on scheduling.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::matrix::FieldMatrix;
use crate::error::LinalgError;
use crate::field::Field;

type Row<F> = Vec<(usize, F)>;

/// `ca·a + cb·b` for sorted sparse rows.
fn lincomb<F: Field>(ca: &F, a: &[(usize, F)], cb: &F, b: &[(usize, F)]) -> Row<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let (col, v) = match ord {
            Ordering::Less => {
                i += 1;
                (a[i - 1].0, ca.mul(&a[i - 1].1))
            }
            Ordering::Greater => {
                j += 1;
                (b[j - 1].0, cb.mul(&b[j - 1].1))
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (a[i - 1].0, ca.mul(&a[i - 1].1).add(&cb.mul(&b[j - 1].1)))
            }
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn exact_div<F: Field>(row: &mut Row<F>, d: &F) {
    if d.is_one() {
        return;
    }
    for e in row.iter_mut() {
        e.1 =
            e.1.div(d)
                .expect("Bareiss divisor is a previous nonzero pivot");
    }
}

struct Echelon<F> {
    rows: Vec<Row<F>>,
    /// (row index, pivot column) in elimination order.
    pivots: Vec<(usize, usize)>,
}

fn bareiss<F: Field>(mut rows: Vec<Row<F>>, pivot_cols: usize) -> Echelon<F> {
    for row in rows.iter_mut() {
        let m = F::denominator_lcm(row.iter().map(|e| &e.1));
        if !m.is_one() {
            for e in row.iter_mut() {
                e.1 = e.1.mul(&m);
            }
        }
    }
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut pivots = Vec::new();
    let mut prev = F::one();
    for col in 0..pivot_cols {
        let chosen = active
            .iter()
            .enumerate()
            .filter(|(_, &r)| rows[r].first().map(|e| e.0) == Some(col))
            .min_by_key(|(_, &r)| (rows[r].len(), r))
            .map(|(k, &r)| (k, r));
        let Some((slot, pr)) = chosen else { continue };
        active.remove(slot);
        let p = rows[pr][0].1.clone();
        let pivot_row = core::mem::take(&mut rows[pr]);
        for &t in &active {
            let row = &mut rows[t];
            if row.first().map(|e| e.0) == Some(col) {
                let a = row[0].1.neg();
                *row = lincomb(&p, row, &a, &pivot_row);
            } else {
                for e in row.iter_mut() {
                    e.1 = e.1.mul(&p);
                }
            }
            exact_div(row, &prev);
        }
        rows[pr] = pivot_row;
        pivots.push((pr, col));
        prev = p;
    }
    Echelon { rows, pivots }
}

/// Rank over the field, computed exactly.
pub fn rank<F: Field>(m: &FieldMatrix<F>) -> usize {
    let rows = (0..m.dim()).map(|r| m.row(r).to_vec()).collect();
    bareiss(rows, m.dim()).pivots.len()
}

/// Solves `a · x = b` for all columns of `b` at once.
pub fn solve_multi_rhs<F: Field>(
    a: &FieldMatrix<F>,
    b: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, LinalgError> {
    let n = a.dim();
    if b.dim() != n {
        return Err(LinalgError::ShapeMismatch(alloc::format!(
            "{} vs {}",
            n,
            b.dim()
        )));
    }
    let rows = (0..n)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend(b.row(r).iter().map(|(c, v)| (c + n, v.clone())));
            row
        })
        .collect();
    let ech = bareiss(rows, n);
    if ech.pivots.len() < n {
        return Err(LinalgError::Singular);
    }
    let mut x: Vec<Row<F>> = (0..n).map(|_| Vec::new()).collect();
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let split = row.partition_point(|e| e.0 < n);
        let mut acc: Row<F> = row[split..]
            .iter()
            .map(|(k, v)| (k - n, v.clone()))
            .collect();
        for (k, v) in &row[1..split] {
            acc = lincomb(&F::one(), &acc, &v.neg(), &x[*k]);
        }
        let p = &row[0].1;
        exact_div(&mut acc, p);
        x[c] = acc;
    }
    Ok(FieldMatrix::from_rows(n, x))
}

/// Exact inverse.
pub fn inverse<F: Field>(m: &FieldMatrix<F>) -> Result<FieldMatrix<F>, LinalgError> {
    solve_multi_rhs(m, &FieldMatrix::identity(m.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::scalar::{parse, Scalar};
    use alloc::vec;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&FieldMatrix::<Rational>::identity(4)), 4);
        assert_eq!(rank(&FieldMatrix::<Rational>::zeros(4)), 0);
    }

    #[test]
    fn rank_deficient_with_skipped_column() {
        let m = FieldMatrix::from_dense(&[
            vec![r(0), r(1), r(2)],
            vec![r(0), r(2), r(4)],
            vec![r(0), r(0), r(3)],
        ]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn inverse_of_swap_is_swap() {
        let p = FieldMatrix::from_dense(&[vec![r(0), r(1)], vec![r(1), r(0)]]);
        assert_eq!(inverse(&p).unwrap(), p);
    }

    #[test]
    fn singular_reported() {
        let m = FieldMatrix::from_dense(&[vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert_eq!(inverse(&m), Err(LinalgError::Singular));
    }

    #[test]
    fn solve_identity_and_self() {
        let a = FieldMatrix::from_dense(&[
            vec![r(2), r(1), r(0)],
            vec![r(1), r(3), r(1)],
            vec![r(0), r(1), r(4)],
        ]);
        let b = FieldMatrix::from_dense(&[
            vec![r(1), r(0), r(5)],
            vec![r(0), r(0), r(1)],
            vec![r(7), r(1), r(0)],
        ]);
        assert_eq!(solve_multi_rhs(&FieldMatrix::identity(3), &b).unwrap(), b);
        assert_eq!(solve_multi_rhs(&a, &a).unwrap(), FieldMatrix::identity(3));
        let x = solve_multi_rhs(&a, &b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn symbolic_inverse() {
        let p = |t: &str| parse(t).unwrap();
        let a = FieldMatrix::from_dense(&[
            vec![p("q"), p("1"), p("0")],
            vec![p("q - q^-1"), p("q^-1"), p("q^(1/2)")],
            vec![p("0"), p("1/(q+1)"), p("2")],
        ]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FieldMatrix::<Scalar>::identity(3));
        assert_eq!(inv.mul(&a).unwrap(), FieldMatrix::<Scalar>::identity(3));
    }
}
