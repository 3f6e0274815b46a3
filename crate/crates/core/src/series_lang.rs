//! A small expression language naming GF(2) power series.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' uint)?
//! atom   := 'z' | uint | 'C' | '(' expr ')'
//! ```
//!
//! `-` means the same as `+` (characteristic 2), integer literals are reduced
//! mod 2, and `C` is the Catalan series.

use std::fmt;

use crate::error::{Error, Result};
use crate::fps::Gf2Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesExpr {
    Z,
    Catalan,
    /// Decimal digits as written.
    Lit(String),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Div(Box<SeriesExpr>, Box<SeriesExpr>),
    Pow(Box<SeriesExpr>, u64),
}

impl SeriesExpr {
    pub fn lit(n: u64) -> Self {
        SeriesExpr::Lit(n.to_string())
    }

    fn precedence(&self) -> u8 {
        match self {
            SeriesExpr::Add(..) | SeriesExpr::Sub(..) => 1,
            SeriesExpr::Mul(..) | SeriesExpr::Div(..) => 2,
            SeriesExpr::Pow(..) => 3,
            _ => 4,
        }
    }

    /// Value with coefficients known through degree `trunc`.
    pub fn eval(&self, trunc: usize) -> Result<Gf2Series> {
        Ok(match self {
            SeriesExpr::Z => Gf2Series::z(trunc),
            SeriesExpr::Catalan => Gf2Series::catalan(trunc),
            SeriesExpr::Lit(digits) => {
                let odd = digits
                    .bytes()
                    .last()
                    .map(|d| (d - b'0') % 2 == 1)
                    .unwrap_or(false);
                if odd {
                    Gf2Series::one(trunc)
                } else {
                    Gf2Series::zero(trunc)
                }
            }
            SeriesExpr::Add(a, b) | SeriesExpr::Sub(a, b) => a.eval(trunc)?.add(&b.eval(trunc)?),
            SeriesExpr::Mul(a, b) => a.eval(trunc)?.mul(&b.eval(trunc)?),
            SeriesExpr::Div(a, b) => {
                let d = b.eval(trunc)?;
                let inv = d.inverse().map_err(|_| Error::DivisorNotUnit)?;
                a.eval(trunc)?.mul(&inv)
            }
            SeriesExpr::Pow(a, k) => a.eval(trunc)?.pow(*k),
        })
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left-associative binary operators: the right operand needs
        // parentheses at equal precedence, the left one only below it.
        let binary = |f: &mut fmt::Formatter<'_>, a: &SeriesExpr, op: &str, b: &SeriesExpr| {
            let p = self.precedence();
            if a.precedence() < p {
                write!(f, "({a})")?;
            } else {
                write!(f, "{a}")?;
            }
            f.write_str(op)?;
            if b.precedence() <= p {
                write!(f, "({b})")
            } else {
                write!(f, "{b}")
            }
        };
        match self {
            SeriesExpr::Z => f.write_str("z"),
            SeriesExpr::Catalan => f.write_str("C"),
            SeriesExpr::Lit(d) => f.write_str(d),
            SeriesExpr::Add(a, b) => binary(f, a, "+", b),
            SeriesExpr::Sub(a, b) => binary(f, a, "-", b),
            SeriesExpr::Mul(a, b) => binary(f, a, "*", b),
            SeriesExpr::Div(a, b) => binary(f, a, "/", b),
            SeriesExpr::Pow(a, k) => {
                if a.precedence() < 4 {
                    write!(f, "({a})^{k}")
                } else {
                    write!(f, "{a}^{k}")
                }
            }
        }
    }
}

pub fn parse(text: &str) -> Result<SeriesExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str, trunc: usize) -> Result<Gf2Series> {
    parse(text)?.eval(trunc)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<SeriesExpr> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                SeriesExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                SeriesExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<SeriesExpr> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if op == b'*' {
                SeriesExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                SeriesExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<SeriesExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let k = digits.parse::<u64>().map_err(|_| Error::Syntax {
                offset: start,
                message: "exponent too large".into(),
            })?;
            return Ok(SeriesExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<SeriesExpr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(SeriesExpr::Lit(self.digits())),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"z" => Ok(SeriesExpr::Z),
                    b"C" => Ok(SeriesExpr::Catalan),
                    other => Err(Error::ReservedName {
                        name: String::from_utf8_lossy(other).into_owned(),
                        offset: start,
                    }),
                }
            }
            Some(_) => Err(self.error("expected `z`, `C`, an integer or `(`")),
        }
    }
}
