//! Textual polynomial syntax: integer/rational coefficients, `*` products,
//! `^` powers, named variables. Parsing is exact.

use num_bigint::BigInt;
use num_traits::One;

use super::arith::{Coef, Polynomial};
use super::ring::Ring;
use crate::error::{Error, Result};

pub fn parse_polynomial(ring: &Ring, input: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: input.chars().collect(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at byte {} in `{input}`",
            p.pos
        )));
    }
    Ok(poly)
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some('*') = self.peek() {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some('^') = self.peek() {
            self.bump();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(')') => Ok(inner),
                    _ => Err(Error::Parse("expected `)`".into())),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if let Some('/') = self.peek() {
                    self.bump();
                    let d = self.integer()?;
                    Ok(Polynomial::constant(self.ring, Coef::new(n, d)))
                } else {
                    Ok(Polynomial::constant(self.ring, Coef::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.identifier();
                match self.ring.var_index(&name) {
                    Some(idx) => Ok(Polynomial::var(self.ring, idx)),
                    None => Err(Error::Parse(format!(
                        "unknown variable `{name}` for ring {}",
                        self.ring
                    ))),
                }
            }
            other => Err(Error::Parse(format!("unexpected input {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Parses a rational literal: `a/b`, an integer, or a decimal taken exactly
/// from its digits (`0.25` -> 1/4).
pub fn parse_rational(s: &str) -> Result<Coef> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad numerator `{n}`: {e}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad denominator `{d}`: {e}")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Coef::new(n, d)
    } else if let Some((int, frac)) = body.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let digits: BigInt = format!("{int}{frac}")
            .parse()
            .map_err(|e| Error::Parse(format!("bad decimal `{body}`: {e}")))?;
        let mut den = BigInt::one();
        for _ in 0..frac.len() {
            den *= 10;
        }
        Coef::new(digits, den)
    } else {
        let n: BigInt = body
            .parse()
            .map_err(|e| Error::Parse(format!("bad integer `{body}`: {e}")))?;
        Coef::from_integer(n)
    };
    Ok(if neg { -value } else { value })
}
