//! Text format for polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Identifiers must appear in the supplied variable list.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{JetError, Result};
use crate::rational::Rational;

pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        names,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(JetError::Parse(format!(
            "unexpected token {:?} in {text:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(JetError::Parse(format!(
                    "unexpected character {other:?} in {text:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| JetError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                other => {
                    return Err(JetError::Parse(format!(
                        "expected integer exponent, found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Int(n)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            Ok(Polynomial::constant(Rational::new(n, d)))
                        }
                        other => Err(JetError::Parse(format!(
                            "expected nonzero denominator, found {other:?}"
                        ))),
                    }
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(n)))
                }
            }
            Some(Token::Ident(name)) => match self.names.iter().position(|n| *n == name) {
                Some(v) => Ok(Polynomial::var(v)),
                None => Err(JetError::Parse(format!("unknown variable {name:?}"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(JetError::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(JetError::Parse(format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn parses_nested_expressions() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("(x + 1)^2 - 2*(x) - 1/2*y*y", &names).unwrap();
        let q = parse_polynomial("x^2 + 1 - 1/2*y^2", &names).unwrap();
        assert_eq!(p, q);
        assert_eq!(
            parse_polynomial("-3/4", &names).unwrap(),
            Polynomial::constant(frac(-3, 4))
        );
    }

    #[test]
    fn rejects_garbage() {
        let names = vec!["x".to_string()];
        assert!(parse_polynomial("x +", &names).is_err());
        assert!(parse_polynomial("z", &names).is_err());
        assert!(parse_polynomial("x^y", &names).is_err());
        assert!(parse_polynomial("1/0", &names).is_err());
        assert!(parse_polynomial("x $ 1", &names).is_err());
    }
}
