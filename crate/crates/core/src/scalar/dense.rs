//! Dense univariate polynomials (ascending coefficients) used for gcd and
//! exact division behind the Laurent representation.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Rational;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Splits a rational polynomial into `content * primitive`, where the
/// primitive part has coprime integer coefficients and a positive leading
/// coefficient.
pub(crate) fn content_primitive(p: &[Rational]) -> (Rational, Vec<BigInt>) {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return (Rational::zero(), Vec::new());
    }
    if ints.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    let prim = ints.into_iter().map(|c| c / &g).collect();
    (Rational::new(g, l), prim)
}

fn int_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &p {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return p;
    }
    if p.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    if g.is_one() {
        p
    } else {
        p.into_iter().map(|c| c / &g).collect()
    }
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two nonzero integer polynomials, positive leading
/// coefficient.
pub(crate) fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = int_primitive(a);
    let mut b = int_primitive(b);
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return alloc::vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = int_primitive(r);
    }
    int_primitive(a)
}

/// Quotient and remainder of rational polynomials; `b` must be nonzero and trimmed.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lb = b[db].recip();
    let mut quot = alloc::vec![Rational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] * &lb;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &c * bc;
        }
        quot[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub(crate) fn to_rational(p: &[BigInt]) -> Vec<Rational> {
    p.iter().cloned().map(Rational::from_integer).collect()
}
