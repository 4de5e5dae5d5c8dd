use alloc::string::String;
#[cfg(test)]
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dense;
use super::laurent::LaurentPoly;
use crate::error::ScalarError;
use crate::field::{self, Rational};

/// An element of Q(s) in canonical form.
///
/// The denominator is an ordinary polynomial in s (no negative powers) with
/// nonzero constant term, coprime integer coefficients and a positive
/// leading coefficient; all s-powers and rational content sit in the
/// numerator, and numerator and denominator share no common factor. Two
/// scalars are equal exactly when their canonical forms coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit operation tag.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// The indeterminate s = q^(1/2).
    pub fn s() -> Self {
        Self::s_pow(1)
    }

    pub fn q() -> Self {
        Self::s_pow(2)
    }

    /// s^k, i.e. q^(k/2).
    pub fn s_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(Rational::one(), k))
    }

    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    /// λ = q - q^-1.
    pub fn lambda() -> Self {
        &Self::q() - &Self::q_pow(-1)
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let v = den.min_exp();
        if v != 0 {
            num = num.shift(-v);
            den = den.shift(-v);
        }
        if den.is_monomial() {
            let c = den.terms()[0].1.recip();
            return Self::from_laurent(num.scale(&c));
        }
        let nv = num.min_exp();
        let (_, mut np) = num.shift(-nv).to_dense();
        let (_, mut dp) = den.to_dense();
        if np.len() > 1 {
            let (_, ni) = dense::content_primitive(&np);
            let (_, di) = dense::content_primitive(&dp);
            let g = dense::int_gcd(ni, di);
            if g.len() > 1 {
                let g = dense::to_rational(&g);
                np = dense::divrem(&np, &g).0;
                dp = dense::divrem(&dp, &g).0;
            }
        }
        let (c, prim) = dense::content_primitive(&dp);
        let cinv = c.recip();
        let num = LaurentPoly::from_dense(nv, np).scale(&cinv);
        let den = LaurentPoly::from_dense(0, dense::to_rational(&prim));
        Self { num, den }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if rhs.den.is_one() && rhs.num.is_monomial() {
            let (e, c) = &rhs.num.terms()[0];
            return Ok(Self {
                num: self.num.scale(&c.recip()).shift(-e),
                den: self.den.clone(),
            });
        }
        if self.den.is_one() && rhs.den.is_one() {
            if let Some(q) = self.num.div_exact(&rhs.num) {
                return Ok(Self::from_laurent(q));
            }
            return Ok(Self::normalized(self.num.clone(), rhs.num.clone()));
        }
        Ok(Self::normalized(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        <Self as field::Field>::pow(self, e).ok_or(ScalarError::DivisionByZero)
    }

    /// Exact value at s = `at_s`.
    ///
    /// The points 0 and ±1 (q ∈ {0, 1}) are rejected before any pole test.
    pub fn evaluate(&self, at_s: &Rational) -> Result<Rational, ScalarError> {
        if at_s.is_zero() || at_s.abs().is_one() {
            return Err(ScalarError::ExcludedEvaluationPoint);
        }
        let d = self.den.evaluate(at_s);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.evaluate(at_s) / d)
    }

    /// `Some(1)` / `Some(-1)` for the constants ±1.
    pub fn is_unit_sign(&self) -> Option<i8> {
        <Self as field::Field>::unit_sign(self)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let (a, b) = (self, rhs);
        if a.den.is_one() && b.den.is_one() {
            return Scalar::from_laurent(a.num.add(&b.num));
        }
        if a.den == b.den {
            return Scalar::normalized(a.num.add(&b.num), a.den.clone());
        }
        // gcd(a + x·d, d) = gcd(a, d) = 1, so one Laurent side keeps the form canonical.
        if b.den.is_one() || a.den.is_one() {
            let (frac, lp) = if b.den.is_one() { (a, b) } else { (b, a) };
            let num = frac.num.add(&lp.num.mul(&frac.den));
            if num.is_zero() {
                return Scalar::zero();
            }
            return Scalar {
                num,
                den: frac.den.clone(),
            };
        }
        Scalar::normalized(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(self.num.mul(&rhs.num));
        }
        if rhs.num.is_monomial() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: self.den.clone(),
            };
        }
        if self.num.is_monomial() && self.den.is_one() {
            return Scalar {
                num: rhs.num.mul(&self.num),
                den: rhs.den.clone(),
            };
        }
        Scalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { $tr::$m(&self, &rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { $tr::$m(&self, rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { $tr::$m(self, &rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl field::Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }

    fn one() -> Self {
        Scalar::one()
    }

    fn from_i64(v: i64) -> Self {
        Scalar::from_int(v)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }

    fn denominator_lcm<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut l = LaurentPoly::one();
        for x in items {
            if x.den.is_one() || x.den == l {
                continue;
            }
            if l.is_one() {
                l = x.den.clone();
                continue;
            }
            let (_, a) = l.to_dense();
            let (_, b) = x.den.to_dense();
            let (_, ai) = dense::content_primitive(&a);
            let (_, bi) = dense::content_primitive(&b);
            let g = dense::to_rational(&dense::int_gcd(ai, bi));
            let cof = dense::divrem(&b, &g).0;
            l = l.mul(&LaurentPoly::from_dense(0, cof));
        }
        Scalar::from_laurent(l)
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "{}/{}", c.numer(), c.denom());
    }
}

fn write_monomial(out: &mut String, exp: i32) {
    if exp % 2 == 0 {
        match exp / 2 {
            1 => out.push('q'),
            k => {
                let _ = write!(out, "q^{k}");
            }
        }
    } else {
        let _ = write!(out, "q^({exp}/2)");
    }
}

/// Grammar text of a Laurent polynomial, highest power first.
fn write_laurent(out: &mut String, p: &LaurentPoly) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    for (k, (e, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if *e == 0 {
            write_rational(out, &abs);
        } else {
            if !abs.is_one() {
                write_rational(out, &abs);
                out.push('*');
            }
            write_monomial(out, *e);
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.den.is_one() {
            write_laurent(&mut s, &self.num);
        } else {
            s.push('(');
            write_laurent(&mut s, &self.num);
            s.push_str(")/(");
            write_laurent(&mut s, &self.den);
            s.push(')');
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Sum of `s^e * c` terms; shorthand used by constructors and tests.
#[cfg(test)]
pub(crate) fn from_s_terms(terms: &[(i32, i64)]) -> Scalar {
    let t: Vec<(i32, Rational)> = terms
        .iter()
        .map(|&(e, c)| (e, Rational::from_integer(BigInt::from(c))))
        .collect();
    Scalar::from_laurent(LaurentPoly::from_terms(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_to_q() {
        let lam = Scalar::lambda();
        assert_eq!(&lam + &Scalar::q_pow(-1), Scalar::q());
    }

    #[test]
    fn exact_polynomial_division() {
        let a = &Scalar::q_pow(2) - &Scalar::one();
        let b = &Scalar::q() - &Scalar::one();
        assert_eq!(
            arith(&a, &b, ArithOp::Div).unwrap(),
            &Scalar::q() + &Scalar::one()
        );
    }

    #[test]
    fn lambda_times_nu() {
        // (q - q^-1) q^-2 = q^-1 - q^-3
        let got = &Scalar::lambda() * &Scalar::q_pow(-2);
        assert_eq!(got, from_s_terms(&[(-2, 1), (-6, -1)]));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            arith(&Scalar::q(), &Scalar::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
        assert!(Scalar::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_shape() {
        // 1 / (2 q - 2 q^-1) = q / (2 q^2 - 2)  ->  (1/2 q) / (q^2 - 1) in s
        let x = (&Scalar::lambda() * &Scalar::from_int(2)).inv().unwrap();
        assert_eq!(x.denom().min_exp(), 0);
        assert_eq!(x.denom().leading_coeff(), Some(&Rational::one()));
        assert_eq!(x.numer(), &LaurentPoly::monomial(rat(1, 2), 2));
        assert_eq!(x.to_string(), "(1/2*q)/(q^2 - 1)");
    }

    #[test]
    fn evaluate_lambda_at_two() {
        assert_eq!(Scalar::lambda().evaluate(&rat(2, 1)), Ok(rat(15, 4)));
    }

    #[test]
    fn evaluate_excluded_points() {
        let x = &(&Scalar::q() + &Scalar::one()) + &Scalar::q_pow(-1);
        assert_eq!(
            x.evaluate(&rat(1, 1)),
            Err(ScalarError::ExcludedEvaluationPoint)
        );
        // 1/(q - 1) at s = -1: exclusion is reported before the pole.
        let y = (&Scalar::q() - &Scalar::one()).inv().unwrap();
        assert_eq!(
            y.evaluate(&rat(-1, 1)),
            Err(ScalarError::ExcludedEvaluationPoint)
        );
        assert_eq!(
            y.evaluate(&rat(0, 1)),
            Err(ScalarError::ExcludedEvaluationPoint)
        );
    }

    #[test]
    fn evaluate_pole() {
        // 1/(q - 4) has a pole at s = 2
        let y = (&Scalar::q() - &Scalar::from_int(4)).inv().unwrap();
        assert_eq!(y.evaluate(&rat(2, 1)), Err(ScalarError::PoleAtPoint));
    }

    #[test]
    fn unit_signs() {
        assert_eq!(Scalar::one().is_unit_sign(), Some(1));
        assert_eq!(Scalar::from_int(-1).is_unit_sign(), Some(-1));
        assert_eq!(Scalar::q().is_unit_sign(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::lambda().to_string(), "q - q^-1");
        assert_eq!(Scalar::s().to_string(), "q^(1/2)");
        assert_eq!(Scalar::s_pow(-3).to_string(), "q^(-3/2)");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(from_s_terms(&[(4, -3), (0, 2)]).to_string(), "-3*q^2 + 2");
    }

    #[test]
    fn denominator_lcm_clears() {
        let a = (&Scalar::q() - &Scalar::one()).inv().unwrap();
        let b = (&Scalar::q_pow(2) - &Scalar::one()).inv().unwrap();
        let l = <Scalar as field::Field>::denominator_lcm([&a, &b]);
        assert!((&l * &a).is_laurent());
        assert!((&l * &b).is_laurent());
        assert_eq!(l, &Scalar::q_pow(2) - &Scalar::one());
    }
}
