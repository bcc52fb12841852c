//! Textual polynomial syntax.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := 'd' | 'l' | 'm' | 'n' | rational | 'i' | ident | '(' expr ')'
//! ```
//!
//! `d`, `l`, `m`, `n` are ∂, λ, μ, ν. Identifiers other than those and `i` must
//! be supplied as named constants. Juxtaposition is rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly, Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the parsed string.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
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
                out.push((Tok::Int(src[start..i].parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => return Err(ParseError { offset: start, message: format!("unexpected character `{other}`") }),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    constants: &'a BTreeMap<String, MultiPoly>,
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError { offset: self.offset(), message: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a non-negative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(den) if !den.is_zero() => {
                            self.bump();
                            value /= BigRational::from_integer(den);
                        }
                        Tok::Int(_) => return self.err("zero denominator"),
                        _ => return self.err("expected a denominator"),
                    }
                }
                self.no_juxtaposition()?;
                Ok(MultiPoly::constant(Scalar::real(value)))
            }
            Tok::Ident(name) => {
                self.bump();
                let p = match name.as_str() {
                    "d" => MultiPoly::var(Var::Partial),
                    "l" => MultiPoly::var(Var::Lambda),
                    "m" => MultiPoly::var(Var::Mu),
                    "n" => MultiPoly::var(Var::Nu),
                    "i" => MultiPoly::constant(Scalar::i()),
                    other => match self.constants.get(other) {
                        Some(p) => p.clone(),
                        None => {
                            self.pos -= 1;
                            return self.err(format!("unknown identifier `{other}`"));
                        }
                    },
                };
                self.no_juxtaposition()?;
                Ok(p)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                self.no_juxtaposition()?;
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            other => self.err(format!("unexpected {}", describe(&other))),
        }
    }

    fn no_juxtaposition(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => self.err("juxtaposition is not allowed; use `*`"),
            _ => Ok(()),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parses a polynomial with no named constants.
pub fn parse_poly(src: &str) -> Result<MultiPoly, ParseError> {
    parse_poly_with(src, &BTreeMap::new())
}

/// Parses a polynomial, resolving identifiers through `constants`.
pub fn parse_poly_with(src: &str, constants: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, constants };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(out)
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.symbol().to_string()),
            e => parts.push(format!("{}^{}", v.symbol(), e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: graded-lex order with ∂ > λ > μ > ν, ` + ` / ` - `
/// separators, coefficient `1` omitted, mixed complex coefficients parenthesised.
pub fn render(p: &MultiPoly) -> String {
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in terms.iter().enumerate() {
        let mono = monomial_text(m);
        // pull a leading minus out of real and pure-imaginary coefficients
        let (negative, mag) = if c.is_real() && c.re().is_negative() || c.re().is_zero() && c.im().is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let coeff_text = if !mag.is_real() && !mag.re().is_zero() {
            if mono.is_empty() && terms.len() == 1 {
                mag.to_string()
            } else {
                format!("({mag})")
            }
        } else {
            mag.to_string()
        };
        let body = if mono.is_empty() {
            coeff_text
        } else if mag.is_one() {
            mono
        } else {
            format!("{coeff_text}*{mono}")
        };
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_forms() {
        let p = parse_poly("d^2 + 3*d*l + 2*l^2").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(render(&p), "d^2 + 3*d*l + 2*l^2");
        assert_eq!(render(&parse_poly("(d + l)*(d - l)").unwrap()), "d^2 - l^2");
        assert_eq!(render(&parse_poly("1/2*d - 3/4*i*l").unwrap()), "1/2*d - 3/4*i*l");
        assert_eq!(render(&parse_poly("(1+2*i)*d + 3").unwrap()), "(1+2*i)*d + 3");
        assert_eq!(render(&parse_poly("-d + 1").unwrap()), "-d + 1");
        assert_eq!(render(&MultiPoly::zero()), "0");
    }

    #[test]
    fn reports_error_position() {
        let e = parse_poly("d + + l").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_poly("2d").unwrap_err();
        assert!(e.message.contains("juxtaposition"));
        let e = parse_poly("d + x").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse_poly("d^").is_err());
        assert!(parse_poly("(d + l").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn named_constants_resolve() {
        let mut k = BTreeMap::new();
        k.insert("Delta".to_string(), MultiPoly::constant(Scalar::ratio(3, 2)));
        let p = parse_poly_with("d + Delta*l", &k).unwrap();
        assert_eq!(render(&p), "d + 3/2*l");
    }
}
