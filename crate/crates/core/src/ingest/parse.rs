//! Recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-"? factor
//! factor  := base ("^" integer)?
//! base    := "(" expr ")" | VAR | literal | literal "i"
//! literal := integer ("/" positive_integer)?
//! ```
//!
//! A literal fraction is written without spaces (`3/2`), so `3/2^2` is
//! `(3/2)^2`. There is no implicit multiplication. A bare `i` is accepted
//! as the imaginary unit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};

/// Parse an expression in the variable `z`.
pub fn parse_ratfun(text: &str) -> Result<RatFun> {
    parse_ratfun_in(text, "z")
}

/// Parse an expression in the given variable (single identifier).
pub fn parse_ratfun_in(text: &str, var: &str) -> Result<RatFun> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var: var.as_bytes(),
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parse a constant: an exact rational or Gaussian-rational expression.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let f = parse_ratfun(text)?;
    f.as_constant().ok_or(Error::Syntax {
        pos: 0,
        msg: format!("expected a constant, got `{text}`"),
    })
}

/// Parse a polynomial in `var`; rational results are rejected.
pub fn parse_poly_in(text: &str, var: &str) -> Result<Poly> {
    let f = parse_ratfun_in(text, var)?;
    if !f.is_polynomial() {
        return Err(Error::Schema(format!("`{text}` is not a polynomial")));
    }
    Ok(f.num().clone())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
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

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RatFun> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let e: u32 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "exponent too large".into(),
        })?;
        let pow = base.pow(e);
        if negative {
            pow.inv()
        } else {
            Ok(pow)
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<RatFun> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let ident = &self.src[start..self.pos];
                if ident == self.var {
                    Ok(RatFun::var())
                } else if ident == b"i" {
                    Ok(RatFun::constant(GaussianRational::i()))
                } else {
                    self.pos = start;
                    Err(self.error(&format!("unknown identifier `{}`", String::from_utf8_lossy(ident))))
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn literal(&mut self) -> Result<RatFun> {
        let numer: BigInt = self.digits().parse().expect("digits");
        let mut value = BigRational::from_integer(numer);
        // A contiguous `p/q` where q is a digit string is one literal.
        if self.peek() == Some(b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
            let start = self.pos;
            let denom: BigInt = self.digits().parse().expect("digits");
            if denom.is_zero() {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "zero denominator in literal".into(),
                });
            }
            value /= BigRational::from_integer(denom);
        }
        let imaginary = self.peek() == Some(b'i')
            && !self
                .src
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
        if imaginary {
            self.pos += 1;
            return Ok(RatFun::constant(GaussianRational::new(BigRational::zero(), value)));
        }
        Ok(RatFun::constant(GaussianRational::real(value)))
    }
}
