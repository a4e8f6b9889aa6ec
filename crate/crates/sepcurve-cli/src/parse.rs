//! Expressions over Q in x and y with + - * / ^, parsed to exact rational
//! functions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use sepcurve::ground_field::{Fe, Rational, UPoly};
use sepcurve::polynomials::{BiPoly, RatFunc2, UniRatFunc, Var};
use thiserror::Error;

/// Exponents beyond this are rejected rather than expanded.
const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("division by zero at offset {offset}")]
    DivisionByZero { offset: usize },
    #[error("exponent at offset {offset} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::DivisionByZero { offset }
            | ParseError::ExponentTooLarge { offset } => *offset,
        }
    }
}

/// The narrowest shape a parsed expression fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Polynomial(BiPoly),
    Univariate(UniRatFunc),
    Rational(RatFunc2),
}

impl Parsed {
    pub fn classify(r: RatFunc2) -> Parsed {
        if r.is_polynomial() {
            return Parsed::Polynomial(r.num().clone());
        }
        for v in [Var::X, Var::Y] {
            if let (Some(n), Some(d)) = (univariate(r.num(), v), univariate(r.den(), v)) {
                return Parsed::Univariate(UniRatFunc::new(v, n, d));
            }
        }
        Parsed::Rational(r)
    }

    pub fn into_ratfunc(self) -> RatFunc2 {
        match self {
            Parsed::Polynomial(p) => RatFunc2::poly(p),
            Parsed::Univariate(u) => u.to_bivariate(),
            Parsed::Rational(r) => r,
        }
    }
}

fn univariate(p: &BiPoly, v: Var) -> Option<UPoly> {
    if p.deg(v.other()) > 0 {
        return None;
    }
    Some(p.coeffs_in(v.other()).into_iter().next().unwrap_or_else(UPoly::zero))
}

pub fn parse_expression(text: &str) -> Result<Parsed, ParseError> {
    parse_ratfunc(text).map(Parsed::classify)
}

pub fn parse_ratfunc(text: &str) -> Result<RatFunc2, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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

    fn expected(&self, what: &'static str) -> ParseError {
        ParseError::Syntax { offset: self.pos, expected: what }
    }

    fn expr(&mut self) -> Result<RatFunc2, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc2, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(ParseError::DivisionByZero { offset: at });
                }
                acc = acc.div(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc2, ParseError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc2, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let Some(n) = self.integer() else {
            return Err(self.expected("an integer exponent"));
        };
        let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError::ExponentTooLarge { offset: at })?;
        let mut out = RatFunc2::one();
        for _ in 0..e {
            out = out.mul(&base);
        }
        if negative {
            if base.is_zero() && e > 0 {
                return Err(ParseError::DivisionByZero { offset: at });
            }
            out = RatFunc2::one().div(&out);
        }
        Ok(out)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<RatFunc2, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.expected("`)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().unwrap();
                let c = Fe::Q(Rational::from_integer(n));
                Ok(RatFunc2::poly(BiPoly::constant(c)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"x" => Ok(RatFunc2::poly(BiPoly::x())),
                    b"y" => Ok(RatFunc2::poly(BiPoly::y())),
                    other => Err(ParseError::UnknownIdentifier {
                        offset: start,
                        name: String::from_utf8_lossy(other).into_owned(),
                    }),
                }
            }
            _ => Err(self.expected("a number, `x`, `y` or `(`")),
        }
    }
}
