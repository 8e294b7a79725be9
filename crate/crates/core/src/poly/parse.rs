//! Text grammar for polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are `x`, `xK` or `x_K` with `K ≥ 1`. Division is only allowed by
//! nonzero constants.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{MultiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Parses a polynomial in `x_1..x_n`. A bare `x` is accepted only when
/// `n == 1`.
pub fn parse_multivariate(text: &str, nvars: usize) -> Result<MultiPoly> {
    Parser::new(text, nvars, nvars == 1).run()
}

/// Parses a polynomial in a single variable written `x` (or `x1`).
pub fn parse_univariate(text: &str) -> Result<UniPoly> {
    let p = Parser::new(text, 1, true).run()?;
    Ok(p.as_univariate(0).expect("single variable"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    bare_x: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, bare_x: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            bare_x,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn run(mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{}'", c as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return self.err("division only by nonzero constants");
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / d.constant_term()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = match self.integer() {
                Some(e) => e,
                None => return self.err("expected a nonnegative integer exponent"),
            };
            let Some(e) = e.to_u32().filter(|&e| e <= 10_000) else {
                return self.err("exponent too large");
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer().expect("digit present");
                Ok(MultiPoly::constant(self.nvars, Rational::from_integer(v)))
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                let idx = self.integer();
                match idx {
                    None if self.bare_x && self.src[self.pos - 1] != b'_' => {
                        Ok(MultiPoly::var(self.nvars, 0))
                    }
                    None => {
                        self.pos = at;
                        self.err("expected a variable index")
                    }
                    Some(k) => {
                        let k = k.to_usize().unwrap_or(usize::MAX);
                        if k == 0 || k > self.nvars {
                            self.pos = at;
                            return self
                                .err(format!("variable index out of range 1..{}", self.nvars));
                        }
                        Ok(MultiPoly::var(self.nvars, k - 1))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl std::str::FromStr for UniPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_univariate(s)
    }
}
