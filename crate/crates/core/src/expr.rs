//! Parser for nil Hecke expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | 'sqrt5' | variable | 'd[' gen ']' | 'w[' gen ']' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants. Output of
//! [`crate::render::nil_hecke`] parses back to the same element.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    D(String),
    W(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                if (word == "d" || word == "w") && bytes.get(i) == Some(&b'[') {
                    let close = src[i..]
                        .find(']')
                        .ok_or_else(|| parse_err(i, "unclosed `[`"))?;
                    let name = src[i + 1..i + close].trim().to_string();
                    if name.is_empty() {
                        return Err(parse_err(i, "empty generator name"));
                    }
                    i += close + 1;
                    out.push((start, if word == "d" { Tok::D(name) } else { Tok::W(name) }));
                } else {
                    out.push((start, Tok::Ident(word.to_string())));
                }
                continue;
            }
            other => return Err(parse_err(i, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    nh: &'a NilHecke,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<NhElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NhElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.nh.mul(&acc, &rhs)?;
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    let c = constant_of(&rhs).ok_or_else(|| parse_err(at, "can only divide by a constant"))?;
                    let inv = c.inverse().ok_or_else(|| parse_err(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NhElement> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<NhElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| parse_err(at, "exponent too large"))?;
                    return self.nh.pow(&base, e);
                }
                _ => return Err(parse_err(at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn generator(&self, name: &str, at: usize) -> Result<usize> {
        self.nh
            .system()
            .generator_index(name)
            .map_err(|_| parse_err(at, format!("unknown generator `{name}`")))
    }

    fn atom(&mut self) -> Result<NhElement> {
        let at = self.offset();
        let n = self.nh.nvars();
        match self.bump() {
            Some(Tok::Int(k)) => {
                let c = Scalar::rational(BigRational::from_integer(k));
                Ok(self.nh.weight(Polynomial::constant(n, c)))
            }
            Some(Tok::Ident(name)) => {
                let ring = self.nh.system().ring();
                if let Some(i) = ring.var_index(&name) {
                    return Ok(self.nh.weight(ring.var(i)));
                }
                if name == "sqrt5" {
                    if ring.field() != Field::Quadratic5 {
                        return Err(parse_err(at, "sqrt5 is not in the rational field"));
                    }
                    return Ok(self.nh.weight(Polynomial::constant(n, Scalar::sqrt5())));
                }
                Err(parse_err(at, format!("unknown variable `{name}`")))
            }
            Some(Tok::D(g)) => Ok(self.nh.d(self.generator(&g, at)?)),
            Some(Tok::W(g)) => Ok(self.nh.gen_s(self.generator(&g, at)?)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(parse_err(self.toks.get(self.pos - 1).map(|(p, _)| *p).unwrap_or(self.end), "expected `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(parse_err(at, format!("unexpected token {t:?}"))),
            None => Err(parse_err(at, "unexpected end of input")),
        }
    }
}

fn constant_of(h: &NhElement) -> Option<Scalar> {
    if h.is_zero() {
        return Some(Scalar::zero());
    }
    if h.terms().len() != 1 {
        return None;
    }
    let (w, f) = h.terms().iter().next()?;
    if !w.is_empty() {
        return None;
    }
    f.as_constant()
}

/// Parses an element of the nil Hecke algebra.
pub fn parse_element(nh: &NilHecke, src: &str) -> Result<NhElement> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(parse_err(0, "empty expression"));
    }
    let mut p = Parser { nh, toks, pos: 0, end: src.len() };
    let value = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(parse_err(p.offset(), "trailing input"));
    }
    Ok(value)
}

/// Parses a polynomial in the variables of the system.
pub fn parse_polynomial(nh: &NilHecke, src: &str) -> Result<Polynomial> {
    let h = parse_element(nh, src)?;
    if h.terms().keys().any(|w| !w.is_empty()) {
        return Err(parse_err(0, "expected a polynomial, found nil Hecke generators"));
    }
    Ok(nh.counit(&h))
}

/// Parses a constant such as `-1/2` or `(1 + sqrt5)/2`.
pub fn parse_scalar(src: &str, field: Field) -> Result<Scalar> {
    use std::sync::Arc;

    use crate::coxeter::{CoxeterSystem, SystemSpec};
    let mut spec = SystemSpec::s2();
    spec.field = field;
    // Variable-free context: the single variable name cannot be typed.
    spec.variables = Some(vec!["__unused".into()]);
    let sys = CoxeterSystem::build(&spec)?;
    let nh = NilHecke::new(Arc::new(sys));
    let h = parse_element(&nh, src)?;
    constant_of(&h).ok_or_else(|| parse_err(0, "expected a constant"))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{CoxeterSystem, SystemSpec};
    use crate::render;

    fn s2() -> NilHecke {
        NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::s2()).unwrap()))
    }

    #[test]
    fn evaluates_relations() {
        let nh = s2();
        let sys = nh.system().clone();
        let show = |src: &str| render::nil_hecke(&sys, &parse_element(&nh, src).unwrap());
        assert_eq!(show("d[s]*a"), "-a*d[s] + 2");
        assert_eq!(show("d[s]*d[s]"), "0");
        assert_eq!(show("w[s]*w[s]"), "1");
        assert_eq!(show("(a + 1)^2 / 2"), "1/2*a^2 + a + 1/2");
        assert_eq!(show("-(a - 3)*d[s]"), "(-a + 3)*d[s]");
    }

    #[test]
    fn errors_carry_positions() {
        let nh = s2();
        assert_eq!(
            parse_element(&nh, "d[s] * b"),
            Err(Error::Parse { pos: 7, msg: "unknown variable `b`".into() })
        );
        assert!(matches!(parse_element(&nh, "d[q]"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element(&nh, "(a"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&nh, "a / a"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_element(&nh, "sqrt5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&nh, ""), Err(Error::Parse { .. })));
    }

    #[test]
    fn polynomial_only() {
        let nh = s2();
        assert_eq!(parse_polynomial(&nh, "a^2").unwrap(), &nh.system().ring().var(0) * &nh.system().ring().var(0));
        assert!(parse_polynomial(&nh, "d[s]").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-1/2", Field::Rational).unwrap(), Scalar::from_ratio(-1, 2));
        let phi = parse_scalar("(1 + sqrt5)/2", Field::Quadratic5).unwrap();
        assert_eq!(&phi * &phi, &phi + &Scalar::from_int(1));
        assert!(parse_scalar("sqrt5", Field::Rational).is_err());
    }
}
