//! Text input and output for polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! A literal `p/q` is a single token, so `1/3*y` is `(1/3)*y` and `2/3^2`
//! is `(2/3)^2`. Division is only allowed by nonzero constants.

use crate::algebra::{BiPoly, Rat, Scalar, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    NonPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub message: String,
}

fn err<T>(kind: ParseErrorKind, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { kind, offset, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let mut s = String::new();
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            s.push(chars[*i].1);
            *i += 1;
        }
        s
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let num = digits(&mut i);
                let mut value = Rat::from_integer(num.parse::<BigInt>().unwrap());
                // p/q literal: the slash must be followed directly by digits
                if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                    let den_off = chars[i + 1].0;
                    i += 1;
                    let den = digits(&mut i).parse::<BigInt>().unwrap();
                    if den.is_zero() {
                        return err(ParseErrorKind::Syntax, den_off, "zero denominator");
                    }
                    value = Rat::new(value.to_integer(), den);
                }
                if i < chars.len() && (chars[i].1.is_alphabetic() || chars[i].1 == '_') {
                    return err(
                        ParseErrorKind::Syntax,
                        chars[i].0,
                        "implicit multiplication is not allowed; use '*'",
                    );
                }
                out.push((Tok::Num(value), off));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Ident(s), off));
            }
            '+' => {
                out.push((Tok::Plus, off));
                i += 1;
            }
            '-' | '−' => {
                out.push((Tok::Minus, off));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, off));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, off));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, off));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, off));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, off));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, off));
                i += 1;
            }
            _ => return err(ParseErrorKind::Syntax, off, format!("unexpected character '{c}'")),
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<BiPoly<Rat>, ParseError> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly<Rat>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let off = self.offset();
                    let d = self.factor()?;
                    if !d.is_constant() {
                        return err(ParseErrorKind::NonPolynomial, off, "division by a non-constant");
                    }
                    let c = d.coeff(0, 0);
                    if c.is_zero() {
                        return err(ParseErrorKind::Syntax, off, "division by zero");
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly<Rat>, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let off = self.offset();
        match self.bump() {
            Tok::Num(r) if r.is_integer() => {
                let e: u32 = r
                    .to_integer()
                    .try_into()
                    .or_else(|_| err(ParseErrorKind::Syntax, off, "exponent too large"))?;
                Ok(base.pow(e))
            }
            Tok::Num(_) => err(ParseErrorKind::NonPolynomial, off, "fractional exponent"),
            Tok::Minus => err(ParseErrorKind::NonPolynomial, off, "negative exponent"),
            Tok::LParen => err(ParseErrorKind::NonPolynomial, off, "exponent must be a nonnegative integer literal"),
            _ => err(ParseErrorKind::Syntax, off, "expected exponent"),
        }
    }

    fn base(&mut self) -> Result<BiPoly<Rat>, ParseError> {
        let off = self.offset();
        match self.bump() {
            Tok::Num(r) => Ok(BiPoly::constant(r)),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(0) => Ok(BiPoly::x()),
                Some(_) => Ok(BiPoly::y()),
                None => err(ParseErrorKind::UnknownIdentifier, off, format!("unknown identifier '{name}'")),
            },
            Tok::LParen => {
                let e = self.expr()?;
                let off = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(e),
                    _ => err(ParseErrorKind::Syntax, off, "expected ')'"),
                }
            }
            Tok::End => err(ParseErrorKind::Syntax, off, "unexpected end of input"),
            t => err(ParseErrorKind::Syntax, off, format!("unexpected token {t:?}")),
        }
    }
}

/// Parses a polynomial in the given variables (first maps to `x`, second to `y`).
pub fn parse_poly_in(text: &str, vars: &[&str]) -> Result<BiPoly<Rat>, ParseError> {
    if text.trim().is_empty() {
        return err(ParseErrorKind::Syntax, 0, "empty input");
    }
    let mut p = Parser { toks: lex(text)?, pos: 0, vars };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => err(ParseErrorKind::Syntax, p.offset(), "unexpected trailing input"),
    }
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly<Rat>, ParseError> {
    parse_poly_in(text, &["x", "y"])
}

/// Parses a parametric pair `(p(t), q(t))`.
pub fn parse_param(text: &str) -> Result<(UniPoly<Rat>, UniPoly<Rat>), ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, vars: &["t"] };
    let off = p.offset();
    if p.bump() != Tok::LParen {
        return err(ParseErrorKind::Syntax, off, "expected '('");
    }
    let a = p.expr()?;
    let off = p.offset();
    if p.bump() != Tok::Comma {
        return err(ParseErrorKind::Syntax, off, "expected ','");
    }
    let b = p.expr()?;
    let off = p.offset();
    if p.bump() != Tok::RParen {
        return err(ParseErrorKind::Syntax, off, "expected ')'");
    }
    if *p.peek() != Tok::End {
        return err(ParseErrorKind::Syntax, p.offset(), "unexpected trailing input");
    }
    Ok((a.to_uni_x().unwrap(), b.to_uni_x().unwrap()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
}

/// Coefficient rendering used by the formatter.
pub trait FormatCoeff {
    /// `(negative, |c| text, |c| == 1)`
    fn split(&self, style: Style) -> (bool, String, bool);
}

fn rat_text(r: &Rat, style: Style) -> String {
    match style {
        Style::Latex if !r.is_integer() => format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom()),
        _ => crate::algebra::ring::rat_to_string(r),
    }
}

impl FormatCoeff for Rat {
    fn split(&self, style: Style) -> (bool, String, bool) {
        let a = self.abs();
        (self.is_negative(), rat_text(&a, style), a.is_one())
    }
}

impl FormatCoeff for Scalar {
    fn split(&self, style: Style) -> (bool, String, bool) {
        match self {
            Scalar::Rat(r) => r.split(style),
            other => (false, other.render(), false),
        }
    }
}

/// Renders with descending total degree and, within a degree, descending
/// power of the second variable.
pub fn format_poly_vars<C: crate::algebra::Ring + FormatCoeff>(
    p: &BiPoly<C>,
    style: Style,
    vars: (&str, &str),
) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&(u32, u32), &C)> = p.terms().collect();
    terms.sort_by(|((a, b), _), ((c, d), _)| (c + d, d).cmp(&(a + b, b)));
    let mut s = String::new();
    for ((i, j), c) in terms {
        let (neg, abs, unit) = c.split(style);
        let mut mono = Vec::new();
        for (v, e) in [(vars.0, *i), (vars.1, *j)] {
            match (e, style) {
                (0, _) => {}
                (1, _) => mono.push(v.to_string()),
                (e, Style::Plain) => mono.push(format!("{v}^{e}")),
                (e, Style::Latex) => mono.push(format!("{v}^{{{e}}}")),
            }
        }
        let joiner = if style == Style::Plain { "*" } else { " " };
        let mono = mono.join(joiner);
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            s.push_str(&abs);
        } else if unit {
            s.push_str(&mono);
        } else {
            s.push_str(&abs);
            s.push_str(joiner);
            s.push_str(&mono);
        }
    }
    s
}

pub fn format_poly<C: crate::algebra::Ring + FormatCoeff>(p: &BiPoly<C>, style: Style) -> String {
    format_poly_vars(p, style, ("x", "y"))
}

/// Univariate rendering in a named variable.
pub fn format_uni<C: crate::algebra::Ring + FormatCoeff>(p: &UniPoly<C>, var: &str) -> String {
    let b = BiPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((k as u32, 0), c.clone())),
    );
    format_poly_vars(&b, Style::Plain, (var, "_"))
}

/// Display adapter for plain rendering.
pub struct Plain<'a, C: crate::algebra::Ring + FormatCoeff>(pub &'a BiPoly<C>);

impl<C: crate::algebra::Ring + FormatCoeff> fmt::Display for Plain<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self.0, Style::Plain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{rat, rat_int};

    #[test]
    fn simple_parse() {
        let p = parse_poly("y^2 - x").unwrap();
        assert_eq!(p, BiPoly::from_terms([((0, 2), rat_int(1)), ((1, 0), rat_int(-1))]));
    }

    #[test]
    fn literal_binds_tight() {
        assert_eq!(parse_poly("2/3^2").unwrap(), BiPoly::constant(rat(4, 9)));
        assert_eq!(parse_poly("1/3*y").unwrap(), BiPoly::y().scale(&rat(1, 3)));
        assert_eq!(parse_poly("x/2").unwrap(), BiPoly::x().scale(&rat(1, 2)));
    }

    #[test]
    fn errors() {
        let e = parse_poly("x*").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Syntax, 2));
        assert_eq!(parse_poly("2x").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_poly("x + w").unwrap_err().kind, ParseErrorKind::UnknownIdentifier);
        assert_eq!(parse_poly("1/x").unwrap_err().kind, ParseErrorKind::NonPolynomial);
        assert_eq!(parse_poly("x^1/2").unwrap_err().kind, ParseErrorKind::NonPolynomial);
        assert_eq!(parse_poly("x^-1").unwrap_err().kind, ParseErrorKind::NonPolynomial);
        assert_eq!(parse_poly("").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_poly("(x").unwrap_err().kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn formatting() {
        let y = BiPoly::<Rat>::y();
        let x = BiPoly::<Rat>::x();
        assert_eq!(format_poly(&(y.clone() - x.scale(&rat_int(2))), Style::Plain), "y - 2*x");
        assert_eq!(format_poly(&BiPoly::<Rat>::zero(), Style::Plain), "0");
        let p = parse_poly("-x^2 + y^3 + y^2 + 1/3*y + 1/27").unwrap();
        assert_eq!(format_poly(&p, Style::Plain), "y^3 + y^2 - x^2 + 1/3*y + 1/27");
        assert_eq!(format_poly(&p, Style::Latex), "y^{3} + y^{2} - x^{2} + \\frac{1}{3} y + \\frac{1}{27}");
    }

    #[test]
    fn parametric_pair() {
        let (a, b) = parse_param("(t^4+t, t^2)").unwrap();
        assert_eq!(a, UniPoly::new(vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0), rat_int(1)]));
        assert_eq!(b.deg(), 2);
        assert!(parse_param("(t, x)").is_err());
    }
}
