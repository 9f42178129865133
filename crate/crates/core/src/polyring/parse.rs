//! Parser for the canonical polynomial text form.
//!
//! Grammar (whitespace insensitive between tokens):
//!   poly   := ['-'] term (('+'|'-') term)*
//!   term   := coeff ['*' factors] | factors
//!   coeff  := integer ['/' integer]
//!   factors:= var ('*' var)*
//!   var    := 'x' index ['^' exponent]
//!
//! Accepts any term order; rendering always emits the canonical order, so
//! render -> parse -> render is bit-stable.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::poly::QPoly;
use super::scalar::{Rat, Scalar};

pub fn parse_poly(input: &str, nvars: usize) -> Result<QPoly> {
    Parser { bytes: input.as_bytes(), pos: 0, nvars }.parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<QPoly> {
        let mut poly = QPoly::zero(self.nvars);
        self.skip_ws();
        if self.peek() == Some(b'0') && self.pos + 1 == self.bytes.len() {
            return Ok(poly);
        }
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let (m, c) = self.term()?;
            poly.add_term(m, if negate { c.neg() } else { c });
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => {
                    return Err(self.err(format!("expected '+' or '-', found '{}'", c as char)))
                }
            }
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, Rat)> {
        self.skip_ws();
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; self.nvars];
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.rational()?;
            self.skip_ws();
            if self.eat(b'*') {
                self.variables(&mut exps)?;
            }
        } else {
            self.variables(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn variables(&mut self, exps: &mut [u32]) -> Result<()> {
        loop {
            self.skip_ws();
            if !self.eat(b'x') {
                return Err(self.err("expected variable".into()));
            }
            let idx = self.integer()? as usize;
            if idx >= self.nvars {
                return Err(self.err(format!("variable x{idx} out of range (nvars = {})", self.nvars)));
            }
            let e = if self.eat(b'^') { self.integer()? as u32 } else { 1 };
            exps[idx] = exps[idx]
                .checked_add(e)
                .ok_or_else(|| self.err("exponent overflow".into()))?;
            self.skip_ws();
            // a '*' continues the monomial only if a variable follows
            let save = self.pos;
            if self.eat(b'*') {
                self.skip_ws();
                if self.peek() == Some(b'x') {
                    continue;
                }
                self.pos = save;
            }
            return Ok(());
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den == 0 {
                return Err(self.err("zero denominator".into()));
            }
            Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
        } else {
            Ok(Rat(BigRational::from_integer(BigInt::from(num))))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer".into()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer overflow".into()))
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Parse { at: self.pos, msg }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_examples() {
        for s in ["x0^2*x1 - x2^2", "-x0*x2 + x2^2", "0", "1/2*x0 + 3", "-1", "-x0^3 + x1*x2"] {
            let p = parse_poly(s, 3).unwrap();
            assert_eq!(p.to_string(), s, "canonical form should round-trip");
        }
    }

    #[test]
    fn parse_any_order() {
        let a = parse_poly("x2^2 - x0^2*x1", 3).unwrap();
        let b = parse_poly("-x0^2*x1 + x2^2", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x9", 3).is_err());
        assert!(parse_poly("x0 +", 3).is_err());
        assert!(parse_poly("1/0", 3).is_err());
        assert!(parse_poly("y0", 3).is_err());
    }
}
