//! Text form for multivariate polynomials.
//!
//! Grammar (documented in the repository docs):
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 'w' ['^' int] | var ['^' int] | '(' poly ')'
//! ```
//!
//! `w` always denotes ω; every other identifier must be a declared
//! variable.  The printer in [`super::MultiPoly`]'s `Display` emits a
//! canonical subset of this grammar, so printing then parsing is the
//! identity.

use crate::exactnum::{Cyclotomic, Rational};
use crate::polylin::{MultiPoly, PolyError, VarSet};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(text[start..i].parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Tok::Ident(text[start..i].to_string()));
            }
            other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut value = Rational::from_int(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            let den = Rational::from_int(d);
                            if den.is_zero() {
                                return Err(PolyError::Parse("zero denominator".into()));
                            }
                            value = &value / &den;
                        }
                        _ => return Err(PolyError::Parse("expected denominator".into())),
                    }
                }
                Ok(MultiPoly::from_rational(self.vars, value))
            }
            Some(Tok::Ident(name)) => {
                let base = if name == "w" {
                    MultiPoly::constant(self.vars, Cyclotomic::omega())
                } else {
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or(PolyError::UnknownVar(name))?;
                    MultiPoly::var(self.vars, idx)
                };
                self.maybe_pow(base)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(PolyError::Parse("missing closing parenthesis".into()));
                }
                self.maybe_pow(inner)
            }
            Some(Tok::Minus) => Ok(-&self.factor()?),
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn maybe_pow(&mut self, base: MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| PolyError::Parse("exponent out of range".into()))?;
                let mut acc = MultiPoly::from_int(base.vars(), 1);
                for _ in 0..e {
                    acc = &acc * &base;
                }
                Ok(acc)
            }
            other => Err(PolyError::Parse(format!("expected exponent, got {other:?}"))),
        }
    }
}

/// Parse polynomial text over the given variable set.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<MultiPoly, PolyError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing tokens at {}", p.pos)));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylin::varset;

    #[test]
    fn parses_the_volume_piece() {
        let vars = varset(&["x"]);
        let f = parse_poly("36-18*x^2+4*x^3", &vars).unwrap();
        assert_eq!(f.to_string(), "36-18*x^2+4*x^3");
    }

    #[test]
    fn omega_coefficients_and_parens() {
        let vars = varset(&["x0", "x3"]);
        let f = parse_poly("-(w+2)*x0^2+(1-w)*x0*x3-x3^2", &vars).unwrap();
        let g = parse_poly(&f.to_string(), &vars).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let vars = varset(&["x"]);
        assert!(matches!(parse_poly("x+y", &vars), Err(PolyError::UnknownVar(_))));
    }

    #[test]
    fn print_parse_round_trip_samples() {
        let vars = varset(&["a", "b"]);
        for text in [
            "0",
            "1",
            "-a",
            "a-b",
            "7*b-2*a",
            "(1+w)*a^2-3/2*b",
            "-(1+w)*a*b",
            "a^2*b^3-1/7",
        ] {
            let f = parse_poly(text, &vars).unwrap();
            assert_eq!(parse_poly(&f.to_string(), &vars).unwrap(), f, "failed: {text}");
        }
    }
}
