//! Text syntax for algebra elements and rational expressions.
//!
//! ```text
//! expr   := ('+'|'-')* term (('+'|'-') ('+'|'-')* term)*
//! term   := factor (('*' | '/' | juxtaposition) factor)*
//! factor := atom ('^' nat)?
//! atom   := generator | alias | 'i' | 'hbar' | rational | '(' expr ')' | 'inv(' expr ')' | 'adj(' expr ')'
//! ```
//!
//! Division is only by scalars. Canonical element text parses back to the same element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::localization::RationalExpr;
use crate::scalar::{GaussRat, Scalar};

/// Result of parsing: a polynomial element, or an expression with inverses.
#[derive(Clone, Debug)]
pub enum Parsed {
    Element(AlgebraElement),
    Expr(RationalExpr),
}

impl Parsed {
    pub fn into_expr(self) -> RationalExpr {
        match self {
            Parsed::Element(a) => RationalExpr::from(a),
            Parsed::Expr(e) => e,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Parsed::Element(a) => a.to_text(),
            Parsed::Expr(e) => e.to_text(),
        }
    }

    fn as_element(&self) -> Option<AlgebraElement> {
        match self {
            Parsed::Element(a) => Some(a.clone()),
            Parsed::Expr(e) => e.as_element(),
        }
    }

    fn add(self, o: Parsed) -> Parsed {
        match (self, o) {
            (Parsed::Element(a), Parsed::Element(b)) => Parsed::Element(a + b),
            (a, b) => Parsed::Expr(a.into_expr().add(&b.into_expr())),
        }
    }

    fn mul(self, o: Parsed) -> Parsed {
        match (self, o) {
            (Parsed::Element(a), Parsed::Element(b)) => Parsed::Element(a * b),
            (a, b) => Parsed::Expr(a.into_expr().mul(&b.into_expr())),
        }
    }

    fn scale(self, c: &Scalar) -> Parsed {
        match self {
            Parsed::Element(a) => Parsed::Element(a.scale(c)),
            Parsed::Expr(e) => Parsed::Expr(e.scale(c)),
        }
    }

    fn star(self) -> Parsed {
        match self {
            Parsed::Element(a) => Parsed::Element(a.star()),
            Parsed::Expr(e) => Parsed::Expr(e.star()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let start = k;
        let tok = match ch {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((start, Tok::Ident(chars[start..k].iter().collect())));
                continue;
            }
            c => return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{c}`") }),
        };
        out.push((start, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    p: &'a Arc<Presentation>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(k, _)| *k)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.at(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn signs(&mut self) -> bool {
        let mut neg = false;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {}
                Tok::Minus => neg = !neg,
                _ => break,
            }
            self.pos += 1;
        }
        neg
    }

    fn expr(&mut self) -> Result<Parsed> {
        let neg = self.signs();
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&Scalar::from_int(-1));
        }
        while let Some(Tok::Plus | Tok::Minus) = self.peek() {
            let neg = self.signs();
            let mut t = self.term()?;
            if neg {
                t = t.scale(&Scalar::from_int(-1));
            }
            acc = acc.add(t);
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Parsed> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.at();
                    let d = self.factor()?;
                    let s = d
                        .as_element()
                        .and_then(|e| e.as_scalar())
                        .ok_or(Error::Syntax { pos: at, msg: "division is only by scalars".into() })?;
                    let inv = s.inv().ok_or(Error::Syntax { pos: at, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_factor() => acc = acc.mul(self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Parsed> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected a natural exponent");
        };
        let k: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
        self.pos += 1;
        let mut acc = Parsed::Element(AlgebraElement::one(self.p));
        for _ in 0..k {
            acc = acc.mul(base.clone());
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Parsed> {
        let start = self.at();
        let Some(t) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match t {
            Tok::Int(n) => Ok(Parsed::Element(AlgebraElement::gauss(self.p, GaussRat::from_rational(BigRational::from_integer(n))))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Parsed::Element(AlgebraElement::gauss(self.p, GaussRat::i()))),
                "hbar" => Ok(Parsed::Element(AlgebraElement::hbar(self.p))),
                "inv" | "adj" if self.peek() == Some(&Tok::LParen) => {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    if name == "adj" {
                        return Ok(e.star());
                    }
                    let a = e.as_element().ok_or(Error::Syntax {
                        pos: start,
                        msg: "inv() needs a polynomial argument".into(),
                    })?;
                    Ok(Parsed::Expr(RationalExpr::inverse(&a)?))
                }
                _ => {
                    if self.p.generator_index(&name).is_some() {
                        return Ok(Parsed::Element(AlgebraElement::generator(self.p, &name)?));
                    }
                    if let Some(terms) = self.p.alias(&name) {
                        return Ok(Parsed::Element(AlgebraElement::from_terms(self.p, terms.iter().cloned())));
                    }
                    Err(Error::UnknownGenerator(name))
                }
            },
            _ => Err(Error::Syntax { pos: start, msg: "expected an operand".into() }),
        }
    }
}

/// Parses `text` over `p`.
pub fn parse_expression(text: &str, p: &Arc<Presentation>) -> Result<Parsed> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut parser = Parser { p, toks, pos: 0, end };
    if parser.peek().is_none() {
        return parser.err("empty expression");
    }
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("unexpected trailing input");
    }
    Ok(match e {
        Parsed::Expr(x) => match x.as_element() {
            Some(a) => Parsed::Element(a),
            None => Parsed::Expr(x),
        },
        e => e,
    })
}

/// Parses a polynomial element; inverses that survive simplification are rejected.
pub fn parse_element(text: &str, p: &Arc<Presentation>) -> Result<AlgebraElement> {
    match parse_expression(text, p)? {
        Parsed::Element(a) => Ok(a),
        Parsed::Expr(e) => Err(Error::InvalidParameter(format!("not a polynomial: {e}"))),
    }
}

pub fn parse_rational_expr(text: &str, p: &Arc<Presentation>) -> Result<RationalExpr> {
    parse_expression(text, p).map(Parsed::into_expr)
}

/// Built-in presentations by id: `fuzzy`, `weyl-uv`, `weyl-lambda`.
pub fn presentation_by_id(id: &str) -> Result<Arc<Presentation>> {
    match id {
        "fuzzy" => Ok(Presentation::fuzzy()),
        "weyl-uv" | "weyl" => Ok(Presentation::weyl_uv()),
        "weyl-lambda" => Ok(Presentation::weyl_lambda()),
        _ => Err(Error::InvalidParameter(format!("unknown presentation `{id}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let w = Presentation::weyl_lambda();
        let two_hbar = AlgebraElement::hbar(&w).scale(&Scalar::from_int(2));
        assert_eq!(parse_element("L*Ls - Ls*L", &w).unwrap(), two_hbar);

        let uv = Presentation::weyl_uv();
        let expected = parse_element("U*V", &uv).unwrap() - AlgebraElement::hbar(&uv).scale(&Scalar::i());
        assert_eq!(parse_element("adj(U*V)", &uv).unwrap(), expected);

        let f = Presentation::fuzzy();
        assert_eq!(parse_element("X^2 + Y^2 + Z^2", &f).unwrap(), AlgebraElement::one(&f));
    }

    #[test]
    fn implicit_multiplication_and_precedence() {
        let f = Presentation::fuzzy();
        assert_eq!(parse_element("2 X Y", &f).unwrap(), parse_element("2*X*Y", &f).unwrap());
        assert_eq!(parse_element("-X^2", &f).unwrap(), parse_element("-(X*X)", &f).unwrap());
        assert_eq!(parse_element("X/2 - -Y", &f).unwrap(), parse_element("1/2*X + Y", &f).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let f = Presentation::fuzzy();
        assert_eq!(parse_element("X + W", &f), Err(Error::UnknownGenerator("W".into())));
        assert!(matches!(parse_element("X + ", &f), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_element("X / Y", &f), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_element("(X", &f), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element("X $", &f), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn inverses() {
        let w = Presentation::weyl_lambda();
        let e = parse_expression("inv(1 + Ls*L) * (1 + Ls*L)", &w).unwrap();
        assert!(matches!(e, Parsed::Element(ref a) if *a == AlgebraElement::one(&w)));
        let e = parse_rational_expr("inv(1 + Ls*L) * L", &w).unwrap();
        let back = parse_rational_expr(&e.to_text(), &w).unwrap();
        assert!(back.sub(&e).is_zero());
        assert!(parse_expression("inv(0)", &w).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let f = Presentation::fuzzy();
        let x = parse_element("(3/2 + i/2) hbar^2 X Y Z - i Y + 7/3 hbar - 1", &f).unwrap();
        assert_eq!(parse_element(&x.to_text(), &f).unwrap(), x);
    }
}
