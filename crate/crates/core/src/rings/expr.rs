//! Ring expressions: integers, symbols, `+ - * / ^` and parentheses.

use std::fmt;

use num_bigint::BigInt;

use super::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates over `ring`, resolving symbols through `lookup`.
    pub fn eval<R: Ring>(&self, ring: &R, lookup: &dyn Fn(&str) -> Option<R::Elem>) -> Result<R::Elem> {
        Ok(match self {
            Expr::Int(n) => ring.from_int(n),
            Expr::Sym(s) => lookup(s).ok_or_else(|| Error::UnknownSymbol(s.clone()))?,
            Expr::Neg(a) => ring.neg(&a.eval(ring, lookup)?),
            Expr::Add(a, b) => ring.add(&a.eval(ring, lookup)?, &b.eval(ring, lookup)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring, lookup)?, &b.eval(ring, lookup)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring, lookup)?, &b.eval(ring, lookup)?),
            Expr::Div(a, b) => {
                let d = ring.inverse(&b.eval(ring, lookup)?).ok_or(Error::NonUnitDenominator)?;
                ring.mul(&a.eval(ring, lookup)?, &d)
            }
            Expr::Pow(a, e) => ring.pow(&a.eval(ring, lookup)?, *e as u64),
        })
    }

    pub fn symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => 2,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Expr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 3, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 4, f)
            }
            Expr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 4, f)
            }
            Expr::Pow(a, e) => {
                wrap(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Recursive-descent parser over a byte slice; positions are reported
/// relative to `col0` on `line`.
pub(crate) struct ExprParser<'a> {
    src: &'a [u8],
    pub pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> ExprParser<'a> {
    pub fn new(src: &'a str, line: usize, col0: usize) -> Self {
        ExprParser { src: src.as_bytes(), pos: 0, line, col0 }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    /// Raw text up to (not including) the first byte in `stops`.
    pub fn take_until(&mut self, stops: &[u8]) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && !stops.contains(&self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("").trim_end()
    }

    /// Looks past whitespace for `c` at offset `k` from the next token.
    pub fn peek_at(&mut self, k: usize) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos + k).copied()
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            if self.pos == start && self.src[self.pos].is_ascii_digit() {
                return None;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer().ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if let Some(n) = self.integer() {
            return Ok(Expr::Int(n));
        }
        if let Some(s) = self.ident() {
            return Ok(Expr::Sym(s));
        }
        Err(self.error("expected an expression"))
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = ExprParser::new(text, 1, 0);
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses an element literal of `ring`, e.g. `3`, `g+1`, `-1/2`, `t^2*u`.
pub fn parse_element<R: Ring>(ring: &R, text: &str) -> Result<R::Elem> {
    let syms = ring.symbols();
    parse_expr(text)?.eval(ring, &|s| syms.iter().find(|(n, _)| n == s).map(|(_, v)| v.clone()))
}
