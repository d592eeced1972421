//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! var      := 'x' uint            -- 1-based variable index
//! rational := '-'? uint ('/' uint)?
//! ```
//!
//! There is no implicit multiplication (`2x1` is rejected) and no unary
//! minus outside a numeric literal (`-x1` is written `-1*x1`, which is
//! also how [`Polynomial`] prints itself). Exponents above 64 are
//! rejected outright; products that would push the total degree past the
//! cap surface the same error at the offending operator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use orbmeas_core::{Polynomial, Rational};

/// Parse failure with a 1-based byte position into the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

/// A polynomial together with the text it was parsed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    source: String,
    poly: Polynomial,
}

impl PolyExpr {
    pub fn parse(text: &str, nvars: usize) -> Result<PolyExpr, ParseError> {
        let poly = parse_polynomial(text, nvars)?;
        Ok(PolyExpr {
            source: text.to_string(),
            poly,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }
}

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(poly),
        Some(c) => Err(p.err_at(p.pos, format!("unexpected character '{}'", c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            position: pos + 1,
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Consumes `c` if it is the next non-whitespace byte.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
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

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            let op_pos = self.pos;
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc
                    .mul_checked(&rhs)
                    .map_err(|_| self.err_at(op_pos, "total degree exceeds 64"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        let caret_pos = self.pos;
        if self.eat(b'^') {
            self.skip_ws();
            let digits_pos = self.pos;
            let e = self.uint()?;
            if e > 64 {
                return Err(self.err_at(digits_pos, "exponent exceeds 64"));
            }
            base.pow_checked(e as u32)
                .map_err(|_| self.err_at(caret_pos, "total degree exceeds 64"))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err_at(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => self.variable(),
            Some(c) if c == b'-' || c.is_ascii_digit() => self.rational(),
            Some(c) => Err(self.err_at(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(self.err_at(self.pos, "unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Polynomial, ParseError> {
        let var_pos = self.pos;
        self.pos += 1; // consume 'x'
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err_at(self.pos, "expected variable index"));
        }
        let index = self.uint()?;
        if index == 0 || index > self.nvars as u64 {
            return Err(self.err_at(var_pos, "variable index out of range"));
        }
        Ok(Polynomial::variable(self.nvars, index as usize - 1))
    }

    fn rational(&mut self) -> Result<Polynomial, ParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err_at(self.pos, "expected number"));
        }
        let mut num = self.bigint_digits();
        if negative {
            num = -num;
        }
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.err_at(self.pos, "expected denominator"));
            }
            let den = self.bigint_digits();
            if den.is_zero() {
                return Err(self.err_at(den_pos, "zero denominator"));
            }
            den
        } else {
            BigInt::from(1)
        };
        Ok(Polynomial::constant(self.nvars, Rational::new(num, den)))
    }

    /// Reads a run of ASCII digits at the cursor as a big integer.
    fn bigint_digits(&mut self) -> BigInt {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ASCII")
            .parse()
            .expect("digit run parses as integer")
    }

    /// Reads a run of ASCII digits as a u64, saturating on overflow (the
    /// callers compare against small bounds, so saturation only ever
    /// trips their range errors).
    fn uint(&mut self) -> Result<u64, ParseError> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err_at(self.pos, "expected integer"));
        }
        let mut value: u64 = 0;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .saturating_mul(10)
                .saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        Ok(value)
    }
}
