//! Textual scalar grammar, one form per field kind:
//!
//! - rationals: `[-]digits[/digits]`, e.g. `-3/4`
//! - prime field: `[-]digits`, reduced mod p
//! - rational functions: `poly` or `(poly)/(poly)` with poly a
//!   `+`-separated list of terms `coef*Var^exp*...` where the coefficient
//!   and exponents are optional, e.g. `2*X1^2+X1*X2+1`
//!
//! Whitespace between tokens is ignored. Printing uses the same grammar,
//! so parse(print(s)) == s for every scalar.

use super::poly::{fp, MPoly, RatFn};
use super::{big_rational, FieldKind, FieldSpec, Scalar, ScalarError};
use num_bigint::BigInt;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ScalarError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<&'a str, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn digits_mod(&mut self, p: u64) -> Result<u64, ScalarError> {
        let ds = self.digits()?;
        let mut acc = 0u64;
        for d in ds.bytes() {
            acc = fp::add(fp::mul(acc, 10, p), (d - b'0') as u64 % p, p);
        }
        Ok(acc)
    }

    fn digits_u32(&mut self) -> Result<u32, ScalarError> {
        let ds = self.digits()?;
        ds.parse::<u32>()
            .map_err(|_| ScalarError::Parse {
                pos: self.pos,
                msg: "exponent too large".into(),
            })
    }

    fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Some(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
        } else {
            None
        }
    }
}

fn parse_rational(cur: &mut Cursor) -> Result<Scalar, ScalarError> {
    let negative = cur.eat(b'-');
    let num_digits = cur.digits()?;
    let mut num = BigInt::parse_bytes(num_digits.as_bytes(), 10).unwrap();
    if negative {
        num = -num;
    }
    let den = if cur.eat(b'/') {
        BigInt::parse_bytes(cur.digits()?.as_bytes(), 10).unwrap()
    } else {
        BigInt::from(1)
    };
    big_rational(num, den)
}

fn parse_prime(cur: &mut Cursor, p: u64) -> Result<Scalar, ScalarError> {
    let negative = cur.eat(b'-');
    let mut value = cur.digits_mod(p)?;
    if negative {
        value = fp::neg(value, p);
    }
    Ok(Scalar::Prime { value, p })
}

/// One `+`/`-` separated polynomial; stops at `)` or end of input.
fn parse_poly(cur: &mut Cursor, p: u64, vars: &[String]) -> Result<MPoly, ScalarError> {
    let nvars = vars.len();
    let mut acc = MPoly::zero(p, nvars);
    loop {
        let negative = cur.eat(b'-');
        let mut coeff = 1 % p;
        let mut exps = vec![0u32; nvars];
        loop {
            cur.skip_ws();
            if let Some(b) = cur.peek() {
                if b.is_ascii_digit() {
                    coeff = fp::mul(coeff, cur.digits_mod(p)?, p);
                } else if b.is_ascii_alphabetic() {
                    let start = cur.pos;
                    let name = cur.identifier().unwrap();
                    let idx = match vars.iter().position(|v| v == name) {
                        Some(i) => i,
                        None => {
                            return Err(ScalarError::FieldMismatch(format!(
                                "unknown variable {name:?} at position {start}"
                            )))
                        }
                    };
                    let e = if cur.eat(b'^') { cur.digits_u32()? } else { 1 };
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| ScalarError::Parse {
                            pos: cur.pos,
                            msg: "exponent overflow".into(),
                        })?;
                } else {
                    return cur.err("expected a coefficient or variable");
                }
            } else {
                return cur.err("expected a coefficient or variable");
            }
            if !cur.eat(b'*') {
                break;
            }
        }
        if negative {
            coeff = fp::neg(coeff, p);
        }
        acc = acc.add(&MPoly::monomial(p, nvars, exps, coeff));
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                // leave the sign for the next term
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_ratfn(cur: &mut Cursor, p: u64, vars: &[String]) -> Result<Scalar, ScalarError> {
    if cur.eat(b'(') {
        let num = parse_poly(cur, p, vars)?;
        cur.expect(b')')?;
        if cur.eat(b'/') {
            cur.expect(b'(')?;
            let den = parse_poly(cur, p, vars)?;
            cur.expect(b')')?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Scalar::RatFn(Box::new(RatFn::new(num, den))))
        } else {
            Ok(Scalar::RatFn(Box::new(RatFn::from_poly(num))))
        }
    } else {
        let num = parse_poly(cur, p, vars)?;
        Ok(Scalar::RatFn(Box::new(RatFn::from_poly(num))))
    }
}

pub(super) fn parse_scalar(spec: &FieldSpec, input: &str) -> Result<Scalar, ScalarError> {
    let mut cur = Cursor::new(input);
    let out = match spec.kind() {
        FieldKind::Rationals => parse_rational(&mut cur)?,
        FieldKind::PrimeField { p } => parse_prime(&mut cur, *p)?,
        FieldKind::RationalFunctions { p, vars } => parse_ratfn(&mut cur, *p, vars)?,
    };
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(out)
}
