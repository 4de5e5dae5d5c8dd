//! Recursive-descent parser for the coefficient grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := ('-' | '+') factor | power
//! power    := atom ('^' exponent)?
//! atom     := integer | 'q' | 's' | '(' expr ')'
//! exponent := '-'? (integer | '(' '-'? integer ('/' integer)? ')')
//! ```
//!
//! Half-integer exponents are only accepted directly on `q`; `s` is q^(1/2).

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::rational_fn::Scalar;
use crate::error::ScalarError;
use crate::field::Rational;

/// Parses coefficient text into a canonical [`Scalar`].
pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Atom {
    Q,
    Other(Scalar),
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            let mut msg = String::from("expected '");
            msg.push(c as char);
            msg.push('\'');
            Err(self.error(&msg))
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|_| ScalarError::Syntax {
                    pos: at,
                    msg: "division by zero".to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let atom = self.atom()?;
        if !self.eat(b'^') {
            return Ok(match atom {
                Atom::Q => Scalar::q(),
                Atom::Other(v) => v,
            });
        }
        let at = self.pos;
        let (num, den) = self.exponent()?;
        match (atom, den) {
            (Atom::Q, 1) => Ok(Scalar::q_pow(num)),
            (Atom::Q, 2) => Ok(Scalar::s_pow(num)),
            (Atom::Other(base), 1) => base
                .pow(num as i64)
                .map_err(|_| ScalarError::DivisionByZero),
            (Atom::Other(_), 2) => Err(ScalarError::Syntax {
                pos: at,
                msg: "half-integer exponents are only allowed on q".to_string(),
            }),
            _ => Err(ScalarError::Syntax {
                pos: at,
                msg: "unsupported exponent".to_string(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Atom, ScalarError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Atom::Q)
            }
            Some(b's') => {
                self.pos += 1;
                Ok(Atom::Other(Scalar::s()))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(Atom::Other(v))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Atom::Other(Scalar::from_rational(Rational::from_integer(
                    v,
                ))))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ScalarError::Syntax {
            pos: start,
            msg: "bad integer".to_string(),
        })
    }

    fn small_integer(&mut self) -> Result<i32, ScalarError> {
        let at = self.pos;
        let v = self.integer()?;
        i32::try_from(v).map_err(|_| ScalarError::Syntax {
            pos: at,
            msg: "exponent too large".to_string(),
        })
    }

    /// Returns the exponent as a reduced fraction `num / den`.
    fn exponent(&mut self) -> Result<(i32, i32), ScalarError> {
        let sign = if self.eat(b'-') { -1 } else { 1 };
        if self.eat(b'(') {
            let inner = if self.eat(b'-') { -1 } else { 1 };
            let num = self.small_integer()?;
            let mut den = 1;
            if self.eat(b'/') {
                let at = self.pos;
                den = self.small_integer()?;
                if den == 0 {
                    return Err(ScalarError::Syntax {
                        pos: at,
                        msg: "zero exponent denominator".to_string(),
                    });
                }
            }
            self.expect(b')')?;
            let g = gcd(num, den);
            Ok((sign * inner * num / g, den / g))
        } else {
            Ok((sign * self.small_integer()?, 1))
        }
    }
}

fn gcd(mut a: i32, mut b: i32) -> i32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}
