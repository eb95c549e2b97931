//! Exact evaluation of the small arithmetic expressions used in the case
//! tables, e.g. `(t^2*p^n - (p^m + 2 - t)*p^m - 3*t^2 + t - 1) / t^2`.
//!
//! Grammar: `+ - * / ^`, parentheses, unary minus, non-negative integer
//! literals and the variables `p`, `m`, `n`, `t`. Arithmetic is over the
//! rationals; `^` needs a non-negative integer exponent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bindings {
    pub p: BigInt,
    pub m: BigInt,
    pub n: BigInt,
    pub t: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot evaluate {expr:?}: {reason}")]
pub struct ExprError {
    pub expr: String,
    pub reason: String,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Bindings,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { expr: self.src.to_string(), reason: reason.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BigRational, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BigRational, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc *= self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return self.fail("division by zero");
                }
                acc /= d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BigRational, ExprError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BigRational, ExprError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.unary()?;
        if !e.is_integer() || e.is_negative() {
            return self.fail(format!("exponent {e} is not a non-negative integer"));
        }
        let Some(e) = e.to_integer().to_u32() else {
            return self.fail("exponent too large");
        };
        let mut acc = BigRational::one();
        for _ in 0..e {
            acc *= &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<BigRational, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("missing ')'");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(BigRational::from_integer(lit))
            }
            Some(c) => {
                self.pos += 1;
                let v = match c {
                    b'p' => &self.vars.p,
                    b'm' => &self.vars.m,
                    b'n' => &self.vars.n,
                    b't' => &self.vars.t,
                    _ => return self.fail(format!("unexpected {:?} at {}", c as char, self.pos - 1)),
                };
                Ok(BigRational::from_integer(v.clone()))
            }
            None => self.fail("unexpected end of input"),
        }
    }
}

pub fn evaluate(src: &str, vars: &Bindings) -> Result<BigRational, ExprError> {
    let mut parser = Parser { src, bytes: src.as_bytes(), pos: 0, vars };
    let v = parser.expr()?;
    if parser.peek().is_some() {
        return parser.fail(format!("trailing input at {}", parser.pos));
    }
    Ok(v)
}
