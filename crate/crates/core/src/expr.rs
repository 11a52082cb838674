//! Text syntax for CoHA elements: `d=<dims>:<polynomial>`.
//!
//! The polynomial uses integers, `+ - * ^`, parentheses and the variables
//! `x[i,k]` (vertex `i` from 0, `k` from 1), `x[k]` on one-vertex quivers and
//! a bare `x` when there is exactly one variable.

use crate::coha::{CohaElement, SymPoly};
use crate::error::{Error, Result};
use crate::poly::{Poly, Q};
use crate::quiver::DimVector;
use num_bigint::BigInt;

/// Parses `d=2:x[1]+x[2]` against a quiver with `vertices` vertices.
pub fn parse_element(s: &str, vertices: usize) -> Result<CohaElement> {
    let s = s.trim();
    let rest = s.strip_prefix("d=").ok_or_else(|| Error::Expr {
        pos: 0,
        msg: "expected `d=<dims>:<polynomial>`".into(),
    })?;
    let colon = rest.find(':').ok_or_else(|| Error::Expr {
        pos: s.len(),
        msg: "missing `:` after the dimension vector".into(),
    })?;
    let d = DimVector::parse(&rest[..colon])?;
    if d.len() != vertices {
        return Err(Error::LengthMismatch {
            expected: vertices,
            got: d.len(),
        });
    }
    let offset = 2 + colon + 1;
    let poly = parse_poly(&rest[colon + 1..], &d).map_err(|e| match e {
        Error::Expr { pos, msg } => Error::Expr { pos: pos + offset, msg },
        other => other,
    })?;
    SymPoly::new(d, poly)
}

/// Parses a polynomial in the variables of `H_d`.
pub fn parse_poly(s: &str, d: &DimVector) -> Result<Poly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        d,
        nvars: d.total() as usize,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    d: &'a DimVector,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Expr {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.number()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let n = self.number()?;
        n.try_into().map_err(|_| self.err("index too large"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Poly::constant(self.nvars, Q::from_integer(n)))
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let var = self.variable().map_err(|e| match e {
                    Error::Expr { msg, .. } => Error::Expr { pos: at, msg },
                    other => other,
                })?;
                Ok(Poly::var(self.nvars, var))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<usize> {
        if !self.eat(b'[') {
            if self.nvars != 1 {
                return Err(self.err("bare `x` needs exactly one variable; use x[i,k]"));
            }
            return Ok(0);
        }
        let first = self.index()?;
        let (i, k) = if self.eat(b',') {
            (first, self.index()?)
        } else if self.d.len() == 1 {
            (0, first)
        } else {
            return Err(self.err("use x[i,k] on quivers with several vertices"));
        };
        self.expect(b']')?;
        if i >= self.d.len() || k == 0 || k > self.d.0[i] as usize {
            return Err(self.err(format!("no variable x[{i},{k}] for dimension vector ({})", self.d)));
        }
        Ok(SymPoly::var_index(self.d, i, k))
    }
}
