//! Canonical text form: `(k + 1)*:J[Hb] DJ[Hb]: + 2*d2(Phi[e])`.
//!
//! `d(X)` and `dN(X)` are derivatives, `:A B C:` is the right-nested normally
//! ordered product, `k`, `i`, `s` are the level, `sqrt(-1)` and the adjoined root.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::{Factor, Mono, VertexAlgebra, VertexPoly};
use crate::scalar::{Poly, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl VertexAlgebra {
    pub fn factor_text(&self, f: Factor) -> String {
        let name = &self.gen(f.gen as usize).name;
        match f.der {
            0 => name.clone(),
            1 => format!("d({})", name),
            n => format!("d{}({})", n, name),
        }
    }

    pub fn mono_text(&self, m: &Mono) -> String {
        match m.len() {
            0 => "1".to_string(),
            1 => self.factor_text(m[0]),
            _ => {
                let parts: Vec<String> = m.iter().map(|f| self.factor_text(*f)).collect();
                format!(":{}:", parts.join(" "))
            }
        }
    }

    /// Canonical text of a polynomial; stable across runs.
    pub fn text(&self, x: &VertexPoly) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in x.terms().enumerate() {
            let neg = -c;
            let ct = c.factor_text();
            let (minus, coef) = if ct.starts_with('-') && !neg.factor_text().starts_with('-') {
                (true, neg)
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if minus {
                    out.push('-');
                }
            } else {
                out.push_str(if minus { " - " } else { " + " });
            }
            if m.is_empty() {
                let t = coef.factor_text();
                let _ = write!(out, "{}", t);
            } else if coef.is_one() {
                out.push_str(&self.mono_text(m));
            } else {
                let _ = write!(out, "{}*{}", coef.factor_text(), self.mono_text(m));
            }
        }
        out
    }

    pub fn parse(&self, text: &str, root: Option<&Arc<Poly>>) -> Result<VertexPoly, ParseError> {
        parse_poly(self, text, root)
    }
}

/// Parses the canonical text form (and a slightly larger expression language).
pub fn parse_poly(alg: &VertexAlgebra, text: &str, root: Option<&Arc<Poly>>) -> Result<VertexPoly, ParseError> {
    let mut p = Parser { alg, s: text.as_bytes(), pos: 0, root };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    alg: &'a VertexAlgebra,
    s: &'a [u8],
    pos: usize,
    root: Option<&'a Arc<Poly>>,
}

fn as_scalar(x: &VertexPoly) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    if x.len() == 1 {
        let (m, c) = x.terms().next().unwrap();
        if m.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<VertexPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<VertexPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = self.mul(&acc, &rhs);
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                let d = as_scalar(&rhs).ok_or(ParseError { pos: at, msg: "division by a non-scalar".into() })?;
                let inv = d.try_inv().map_err(|e| ParseError { pos: at, msg: e.to_string() })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&self, a: &VertexPoly, b: &VertexPoly) -> VertexPoly {
        if let Some(c) = as_scalar(a) {
            b.scale(&c)
        } else if let Some(c) = as_scalar(b) {
            a.scale(&c)
        } else {
            self.alg.no(a, b)
        }
    }

    fn unary(&mut self) -> Result<VertexPoly, ParseError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<VertexPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let neg = self.eat(b'-');
            let e = self.integer()? as i32;
            let c = as_scalar(&base).ok_or(ParseError { pos: at, msg: "power of a non-scalar".into() })?;
            if c.is_zero() && neg {
                return Err(ParseError { pos: at, msg: "division by zero".into() });
            }
            return Ok(VertexPoly::constant(c.pow(if neg { -e } else { e })));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer too large"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'[' {
            let mut depth = 0;
            while self.pos < self.s.len() {
                let c = self.s[self.pos];
                self.pos += 1;
                if c == b'[' {
                    depth += 1;
                } else if c == b']' {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
            }
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<VertexPoly, ParseError> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(v);
        }
        if c == b':' {
            self.pos += 1;
            let mut items = Vec::new();
            loop {
                if self.eat(b':') {
                    break;
                }
                if self.peek().is_none() {
                    return Err(self.err("unterminated `:`"));
                }
                items.push(self.power()?);
            }
            if items.is_empty() {
                return Err(self.err("empty normally ordered product"));
            }
            return Ok(self.alg.no_many(&items));
        }
        if c.is_ascii_digit() {
            let n = self.integer()?;
            return Ok(VertexPoly::constant(Scalar::from_int(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            let name = self.ident();
            // derivative d(X), dN(X)
            if let Some(rest) = name.strip_prefix('d') {
                if (rest.is_empty() || rest.bytes().all(|b| b.is_ascii_digit())) && self.peek() == Some(b'(') {
                    let order: u32 = if rest.is_empty() { 1 } else { rest.parse().map_err(|_| self.err("bad order"))? };
                    self.pos += 1;
                    let v = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    return Ok(self.alg.deriv_n(&v, order));
                }
            }
            if let Ok(i) = self.alg.index(&name) {
                return Ok(VertexPoly::factor(Factor::new(i, 0)));
            }
            return match name.as_str() {
                "k" => Ok(VertexPoly::constant(Scalar::k())),
                "i" => Ok(VertexPoly::constant(Scalar::i())),
                "s" => match self.root {
                    Some(r) => Ok(VertexPoly::constant(Scalar::root(r))),
                    None => Err(ParseError { pos: start, msg: "no root adjoined".into() }),
                },
                _ => Err(ParseError { pos: start, msg: format!("unknown generator `{}`", name) }),
            };
        }
        Err(self.err(&format!("unexpected `{}`", c as char)))
    }
}
