//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' natural)?
//! atom  := natural | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, VarContext};
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 256;
const MAX_TERMS: usize = 10_000;
const MAX_INPUT: usize = 1 << 16;

pub fn parse_polynomial(ctx: &VarContext, input: &str) -> Result<Polynomial> {
    if input.len() > MAX_INPUT {
        return Err(Error::Parse { pos: 0, msg: "input too long".into() });
    }
    let mut p = Parser { ctx, src: input.as_bytes(), pos: 0, depth: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a VarContext,
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn check_size(&self, p: &Polynomial) -> Result<()> {
        if p.num_terms() > MAX_TERMS {
            return Err(self.err("expression too large"));
        }
        Ok(())
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if acc.num_terms().saturating_mul(rhs.num_terms()) > MAX_TERMS * 4 {
                        return Err(self.err("expression too large"));
                    }
                    acc = acc.mul(&rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    match rhs.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / c)),
                        Some(_) => return Err(self.err("division by zero")),
                        None => return Err(self.err("division by a non-constant")),
                    }
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        self.enter()?;
        let out = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.unary()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()?
            }
            _ => self.power()?,
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.err("expected exponent"));
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    self.pos = start;
                    return Err(self.err("exponent too large"));
                }
            };
            if base.num_terms() > 1 && (base.num_terms() as f64).powi(e as i32) > (MAX_TERMS * 16) as f64 {
                return Err(self.err("expression too large"));
            }
            let out = base.pow(e);
            self.check_size(&out)?;
            return Ok(out);
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

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Polynomial::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ctx.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.ctx, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
