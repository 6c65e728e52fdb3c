//! Text formats accepted on the command line.
//!
//! Generator lists are decimal integers separated by commas and/or
//! whitespace. Curves are `name = poly; name = poly; ...` where each
//! `poly` is a signed sum of terms `c`, `t`, `t^k`, `c*t` or `c*t^k`, and
//! `c` is an integer or a fraction `a/b`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{CurveError, ParamCurve, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("at byte {offset}: generators must be positive, found {text}")]
    ZeroOrNegative { offset: usize, text: String },
    #[error("at byte {offset}: division by zero")]
    ZeroDenominator { offset: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn syntax(offset: usize, expected: &'static str) -> ParseError {
    ParseError::Syntax { offset, expected }
}

/// Parses, sorts and deduplicates a generator list.
pub fn parse_generators(text: &str) -> Result<Vec<u64>, ParseError> {
    let mut out = parse_list(text)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Parses a list of positive integers, keeping the given order.
pub fn parse_list(text: &str) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    let tokens = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty());
    for token in tokens {
        let start = token.as_ptr() as usize - text.as_ptr() as usize;
        let digits = token.strip_prefix('-').unwrap_or(token);
        if let Some(bad) = digits.bytes().position(|b| !b.is_ascii_digit()) {
            let offset = start + (token.len() - digits.len()) + bad;
            return Err(syntax(offset, "a decimal integer"));
        }
        if digits.is_empty() {
            return Err(syntax(start + 1, "a decimal integer"));
        }
        if token.starts_with('-') || digits.bytes().all(|b| b == b'0') {
            return Err(ParseError::ZeroOrNegative {
                offset: start,
                text: token.to_string(),
            });
        }
        let value = digits
            .parse::<u64>()
            .map_err(|_| syntax(start, "an integer below 2^64"))?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(syntax(text.len(), "at least one integer"));
    }
    Ok(out)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, what))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn integer(&mut self, what: &'static str) -> Result<BigInt, ParseError> {
        let at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(syntax(at, what));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn identifier(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let first = self.text[at..].chars().next();
        if !first.is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(syntax(at, "a coordinate name"));
        }
        Ok(self
            .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
            .to_string())
    }

    fn exponent(&mut self) -> Result<u64, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let at = self.pos;
        self.integer("an exponent")?
            .try_into()
            .map_err(|_| syntax(at, "an exponent below 2^64"))
    }

    fn term(&mut self) -> Result<(u64, BigRational), ParseError> {
        if self.eat('t') {
            return Ok((self.exponent()?, BigRational::one()));
        }
        let numer = self.integer("a coefficient or t")?;
        let mut coeff = BigRational::from_integer(numer);
        if self.eat('/') {
            let at = self.pos;
            let denom = self.integer("a denominator")?;
            if denom.is_zero() {
                return Err(ParseError::ZeroDenominator { offset: at });
            }
            coeff /= BigRational::from_integer(denom);
        }
        if self.eat('*') {
            self.expect('t', "t")?;
            return Ok((self.exponent()?, coeff));
        }
        Ok((0, coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut poly = Polynomial::zero();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (k, c) = self.term()?;
            poly.add_term(k, if negative { -c } else { c });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(poly);
            }
        }
    }
}

/// Parses `x = t^4; y = t^6 + t^7` into a curve.
pub fn parse_curve(text: &str) -> Result<ParamCurve, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut names = Vec::new();
    let mut coords = Vec::new();
    loop {
        names.push(cur.identifier()?);
        cur.expect('=', "'='")?;
        coords.push(cur.polynomial()?);
        let separated = cur.eat(';');
        if cur.peek().is_none() {
            break;
        }
        if !separated {
            return Err(syntax(cur.pos, "';', '+', '-' or end of input"));
        }
    }
    Ok(ParamCurve::with_names(names, coords)?)
}
