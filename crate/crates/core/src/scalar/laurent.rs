use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use super::dense;
use crate::field::Rational;

/// A Laurent polynomial in s with rational coefficients.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients;
/// the empty term list is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: alloc::vec![(exp, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(iter: I) -> Self {
        let mut terms: Vec<(i32, Rational)> = iter.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn min_exp(&self) -> i32 {
        self.terms.first().map_or(0, |t| t.0)
    }

    pub fn max_exp(&self) -> i32 {
        self.terms.last().map_or(0, |t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &rhs.terms);
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
                    let (e, c) = &b[j];
                    out.push((*e, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.min_exp() + rhs.min_exp();
        let hi = self.max_exp() + rhs.max_exp();
        let mut acc = alloc::vec![Rational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_dense(lo, acc)
    }

    /// Dense coefficients starting at `min_exp`.
    pub(crate) fn to_dense(&self) -> (i32, Vec<Rational>) {
        let lo = self.min_exp();
        if self.is_zero() {
            return (0, Vec::new());
        }
        let mut v = alloc::vec![Rational::zero(); (self.max_exp() - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(lo: i32, coeffs: Vec<Rational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i32, c))
            .collect();
        Self { terms }
    }

    /// Exact quotient in Q[s, s^-1], or `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return Some(self.scale(&c.recip()).shift(-e));
        }
        let (la, a) = self.to_dense();
        let (lb, b) = rhs.to_dense();
        let (q, r) = dense::divrem(&a, &b);
        if r.is_empty() {
            Some(Self::from_dense(la - lb, q))
        } else {
            None
        }
    }

    /// Value at a nonzero point.
    pub fn evaluate(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(at, *e);
        }
        acc
    }
}

pub(crate) fn pow_rational(x: &Rational, e: i32) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, Rational::from_integer(c.into()))),
        )
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = lp(&[(2, 1), (-1, 3), (2, -1), (0, 5)]);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.min_exp(), -1);
        assert_eq!(p.max_exp(), 0);
    }

    #[test]
    fn mul_and_exact_division_roundtrip() {
        let a = lp(&[(-2, 1), (0, 3), (1, -2)]);
        let b = lp(&[(0, 1), (3, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&a), Some(b));
        assert_eq!(
            lp(&[(0, 1), (1, 1)]).div_exact(&lp(&[(0, 1), (2, 1)])),
            None
        );
    }

    #[test]
    fn sub_to_zero() {
        let a = lp(&[(-3, 2), (4, 7)]);
        assert!(a.sub(&a).is_zero());
    }
}
