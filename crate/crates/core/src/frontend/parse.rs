//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | base ('^' uint)?
//! base     := rational | variable | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Poly, Rational, VarContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub fn parse_poly(src: &str, ctx: &Arc<VarContext>) -> Result<Poly, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// A rational literal such as `-3/4`, `7` or ` 0 `.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let s = src.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let offset = src.len() - body.len();
    let bad = |pos: usize| ParseError::SyntaxError { pos, msg: "expected a rational number".into() };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad(offset));
    }
    let mut value = Rational::from_integer(num.parse::<BigInt>().map_err(|_| bad(offset))?);
    if let Some(d) = den {
        if !digits(d) {
            return Err(bad(offset + num.len() + 1));
        }
        let d: BigInt = d.parse().map_err(|_| bad(offset))?;
        if d.is_zero() {
            return Err(ParseError::ZeroDenominator);
        }
        value /= Rational::from_integer(d);
    }
    Ok(if neg { -value } else { value })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<VarContext>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::SyntaxError { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() == Some(b'*') {
                return Err(self.error("`**` is not an operator; use `^`"));
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected an exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| ParseError::SyntaxError {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator"));
                    }
                    let d: BigInt = d.parse().expect("digits");
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator);
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(Poly::constant(self.ctx, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ctx.index_of(name) {
                    Some(i) => Ok(Poly::var(self.ctx, i)),
                    None => Err(ParseError::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
