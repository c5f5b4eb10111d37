//! A small expression grammar for exact input:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | decimal | 'i' | identifier | '(' expr ')'
//! ```
//!
//! Identifiers must name variables of the supplied context. A trailing prime is
//! read as `p`, so `y00'` and `y00p` are the same variable.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::CRational;
use super::ratfunc::RationalFunction;
use super::Context;
use crate::error::{Error, Result};

pub fn parse_rational_function(s: &str, ctx: &Context) -> Result<RationalFunction> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, ctx };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses and requires the result to be a polynomial.
pub fn parse_poly(s: &str, ctx: &Context) -> Result<MultiPoly> {
    let r = parse_rational_function(s, ctx)?;
    r.as_poly().cloned().ok_or_else(|| Error::NotPolynomial(r.to_string()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Context,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| match e {
                    Error::DivisionByZero => Error::Parse { pos: at, msg: "division by zero".into() },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i32 = digits.parse().map_err(|_| self.err("expected integer exponent"))?;
        base.pow(if neg { -e } else { e }).map_err(|_| self.err("zero raised to a negative power"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<RationalFunction> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let (int_part, frac_part) = match text.split_once('.') {
            Some((a, b)) => (a, b),
            None => (text, ""),
        };
        if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(Error::Parse { pos: start, msg: format!("malformed number `{text}`") });
        }
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = digits.parse().map_err(|_| Error::Parse { pos: start, msg: format!("malformed number `{text}`") })?;
        let mut d = BigInt::one();
        for _ in 0..frac_part.len() {
            d *= 10;
        }
        let c = if n.is_zero() { CRational::from_int(0) } else { CRational::from_bigints(n, d) };
        Ok(RationalFunction::constant(self.ctx, c))
    }

    fn ident(&mut self) -> Result<RationalFunction> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_' || self.src[self.pos] == b'\'')
        {
            self.pos += 1;
        }
        let raw = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if raw == "i" {
            return Ok(RationalFunction::constant(self.ctx, CRational::i()));
        }
        let name = raw.replace('\'', "p");
        match self.ctx.index_of(&name) {
            Some(_) => RationalFunction::var(self.ctx, &name),
            None => Err(Error::UnknownVariable(raw.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_powers() {
        let ctx = Context::heisenberg();
        let a = parse_rational_function("-y00p^2 + 2*t/4", &ctx).unwrap();
        let b = parse_rational_function("t/2 - (y00p)^2", &ctx).unwrap();
        assert_eq!(a, b);
        let c = parse_rational_function("t^-2", &ctx).unwrap();
        assert_eq!(c, parse_rational_function("1/(t*t)", &ctx).unwrap());
    }

    #[test]
    fn primes_and_decimals() {
        let ctx = Context::heisenberg();
        assert_eq!(
            parse_rational_function("y00'*0.5", &ctx).unwrap(),
            parse_rational_function("y00p/2", &ctx).unwrap()
        );
    }

    #[test]
    fn errors() {
        let ctx = Context::heisenberg();
        assert!(matches!(parse_rational_function("1/0", &ctx), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational_function("q+1", &ctx), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_rational_function("(t", &ctx), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/t", &ctx), Err(Error::NotPolynomial(_))));
    }
}
