//! Reader for the symbolic form printed by `Display`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := number | 'sqrt' '(' expr ')' | '(' expr ')'
//! number := digits ('.' digits)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{ExactScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("unexpected character {ch:?} at offset {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at offset {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("trailing input at offset {at}")]
    Trailing { at: usize },
    #[error(transparent)]
    Arithmetic(#[from] ScalarError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(s: &str) -> Result<ExactScalar, ParseScalarError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseScalarError::Trailing { at: p.pos });
    }
    Ok(value)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, expected: &'static str) -> Result<(), ParseScalarError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(ParseScalarError::Expected { expected, at: self.pos })
        }
    }

    fn expr(&mut self) -> Result<ExactScalar, ParseScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar, ParseScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactScalar, ParseScalarError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExactScalar, ParseScalarError> {
        match self.peek() {
            None => Err(ParseScalarError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(_) if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(', "'(' after sqrt")?;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(inner.sqrt()?)
            }
            Some(c) => Err(ParseScalarError::UnexpectedChar {
                ch: c as char,
                at: self.pos,
            }),
        }
    }

    fn number(&mut self) -> Result<ExactScalar, ParseScalarError> {
        let digits = |p: &mut Self| {
            let start = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            std::str::from_utf8(&p.src[start..p.pos]).unwrap_or_default().to_owned()
        };
        let whole = digits(self);
        let mut numer: BigInt = whole.parse().map_err(|_| ParseScalarError::Expected {
            expected: "digits",
            at: self.pos,
        })?;
        let mut denom = BigInt::from(1u8);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac = digits(self);
            if frac.is_empty() {
                return Err(ParseScalarError::Expected {
                    expected: "digits after '.'",
                    at: self.pos,
                });
            }
            denom = BigInt::from(10u8).pow(frac.len() as u32);
            numer = numer * &denom + frac.parse::<BigInt>().unwrap_or_default();
        }
        Ok(ExactScalar::rational(BigRational::new(numer, denom)))
    }
}
