//! Exact coefficient fields: Q, F_p (p an odd prime), and F_p(X1, ..., Xn).
//!
//! Characteristic 2 is rejected at construction time; the classification
//! machinery divides by 2 freely.

mod parse;
mod poly;

pub use poly::{MPoly, RatFn};

pub(crate) use poly::fp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// The three supported coefficient fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField { p: u64 },
    RationalFunctions { p: u64, vars: Vec<String> },
}

/// A validated field description. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    kind: Arc<FieldKind>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn validate_odd_prime(p: u64) -> Result<(), ScalarError> {
    if p == 2 {
        return Err(ScalarError::InvalidField(
            "characteristic 2 is not supported".into(),
        ));
    }
    if !fp::is_prime(p) {
        return Err(ScalarError::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec {
            kind: Arc::new(FieldKind::Rationals),
        }
    }

    pub fn prime_field(p: u64) -> Result<FieldSpec, ScalarError> {
        validate_odd_prime(p)?;
        Ok(FieldSpec {
            kind: Arc::new(FieldKind::PrimeField { p }),
        })
    }

    pub fn rational_functions(p: u64, vars: Vec<String>) -> Result<FieldSpec, ScalarError> {
        validate_odd_prime(p)?;
        if vars.is_empty() {
            return Err(ScalarError::InvalidField(
                "rational function field needs at least one variable".into(),
            ));
        }
        for v in &vars {
            if !valid_var_name(v) {
                return Err(ScalarError::InvalidField(format!(
                    "invalid variable name {v:?}"
                )));
            }
        }
        for i in 1..vars.len() {
            if vars[..i].contains(&vars[i]) {
                return Err(ScalarError::InvalidField(format!(
                    "duplicate variable name {:?}",
                    vars[i]
                )));
            }
        }
        Ok(FieldSpec {
            kind: Arc::new(FieldKind::RationalFunctions { p, vars }),
        })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// 0 for the rationals, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match &*self.kind {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField { p } => *p,
            FieldKind::RationalFunctions { p, .. } => *p,
        }
    }

    /// True exactly for F_p; the set of field elements is then enumerable.
    pub fn is_finite(&self) -> bool {
        matches!(&*self.kind, FieldKind::PrimeField { .. })
    }

    pub fn vars(&self) -> &[String] {
        match &*self.kind {
            FieldKind::RationalFunctions { vars, .. } => vars,
            _ => &[],
        }
    }

    pub fn describe(&self) -> String {
        match &*self.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::PrimeField { p } => format!("F{p}"),
            FieldKind::RationalFunctions { p, vars } => {
                format!("F{p}({})", vars.join(","))
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match &*self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldKind::PrimeField { p } => Scalar::Prime {
                value: fp::norm_i64(n, *p),
                p: *p,
            },
            FieldKind::RationalFunctions { p, vars } => Scalar::RatFn(Box::new(
                RatFn::from_poly(MPoly::constant(*p, vars.len(), fp::norm_i64(n, *p))),
            )),
        }
    }

    /// The generator X_{idx} of a rational function field.
    pub fn var(&self, idx: usize) -> Result<Scalar, ScalarError> {
        match &*self.kind {
            FieldKind::RationalFunctions { p, vars } if idx < vars.len() => Ok(Scalar::RatFn(
                Box::new(RatFn::from_poly(MPoly::var(*p, vars.len(), idx))),
            )),
            FieldKind::RationalFunctions { .. } => Err(ScalarError::FieldMismatch(format!(
                "variable index {idx} out of range"
            ))),
            _ => Err(ScalarError::FieldMismatch(
                "field has no variables".into(),
            )),
        }
    }

    /// Whether a scalar is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (&*self.kind, s) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::PrimeField { p }, Scalar::Prime { p: q, .. }) => p == q,
            (FieldKind::RationalFunctions { p, vars }, Scalar::RatFn(f)) => {
                f.num.p == *p && f.num.nvars == vars.len()
            }
            _ => false,
        }
    }

    /// All nonzero elements of F_p, ascending. Errors on infinite fields.
    pub fn units(&self) -> Result<Vec<Scalar>, ScalarError> {
        match &*self.kind {
            FieldKind::PrimeField { p } => Ok((1..*p)
                .map(|value| Scalar::Prime { value, p: *p })
                .collect()),
            _ => Err(ScalarError::FieldMismatch(
                "units are only enumerable over a finite field".into(),
            )),
        }
    }

    pub fn format_scalar(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => value.to_string(),
            Scalar::RatFn(f) => f.render(self.vars()),
        }
    }

    /// Parses a scalar in this field's textual grammar. See the crate
    /// documentation for the exact forms.
    pub fn parse_scalar(&self, input: &str) -> Result<Scalar, ScalarError> {
        parse::parse_scalar(self, input)
    }
}

/// An element of one of the three supported fields. Equality is
/// mathematical equality (cross-multiplication for rational functions, so
/// distinct unreduced representations of the same value compare equal).
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
    RatFn(Box<RatFn>),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ScalarError {
    ScalarError::FieldMismatch(format!(
        "incompatible scalars {:?} and {:?}",
        a.kind_name(),
        b.kind_name()
    ))
}

impl Scalar {
    fn kind_name(&self) -> String {
        match self {
            Scalar::Rational(_) => "Q".into(),
            Scalar::Prime { p, .. } => format!("F{p}"),
            Scalar::RatFn(f) => format!("F{}({} vars)", f.num.p, f.num.nvars),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::RatFn(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::RatFn(f) => f.num == f.den,
        }
    }

    pub fn same_field(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Prime { p: a, .. }, Scalar::Prime { p: b, .. }) => a == b,
            (Scalar::RatFn(a), Scalar::RatFn(b)) => {
                a.num.p == b.num.p && a.num.nvars == b.num.nvars
            }
            _ => false,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Ok(Scalar::Prime {
                    value: fp::add(*a, *b, *p),
                    p: *p,
                })
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) if self.same_field(other) => {
                Ok(Scalar::RatFn(Box::new(a.add(b))))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Ok(Scalar::Prime {
                    value: fp::mul(*a, *b, *p),
                    p: *p,
                })
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) if self.same_field(other) => {
                Ok(Scalar::RatFn(Box::new(a.mul(b))))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: fp::neg(*value, *p),
                p: *p,
            },
            Scalar::RatFn(a) => Scalar::RatFn(Box::new(a.neg())),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime { value, p } => {
                if *value == 0 {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Prime {
                        value: fp::inv(*value, *p),
                        p: *p,
                    })
                }
            }
            Scalar::RatFn(a) => a
                .inv()
                .map(|f| Scalar::RatFn(Box::new(f)))
                .ok_or(ScalarError::DivisionByZero),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let one = match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Prime { p, .. } => Scalar::Prime { value: 1, p: *p },
            Scalar::RatFn(f) => Scalar::RatFn(Box::new(RatFn::from_poly(MPoly::constant(
                f.num.p,
                f.num.nvars,
                1,
            )))),
        };
        let mut acc = one;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("pow: same field");
            }
            base = base.try_mul(&base).expect("pow: same field");
            e >>= 1;
        }
        acc
    }

    /// The residue 0..p-1 for prime-field scalars.
    pub fn prime_value(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// The underlying fraction for rational-function scalars.
    pub fn ratfn(&self) -> Option<&RatFn> {
        match self {
            Scalar::RatFn(f) => Some(f),
            _ => None,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Whether the scalar lies in the prime subfield (Q itself, F_p itself,
    /// or a constant rational function).
    pub fn in_prime_subfield(&self) -> bool {
        match self {
            Scalar::Rational(_) | Scalar::Prime { .. } => true,
            Scalar::RatFn(f) => {
                // c = num/den constant: num*den^-1 constant, i.e.
                // num = c*den for a constant c.
                if f.is_zero() {
                    return true;
                }
                match (f.num.as_constant(), f.den.as_constant()) {
                    (Some(_), Some(_)) => true,
                    _ => {
                        // Unreduced representations may hide a constant,
                        // e.g. (2X)/(X): test num*1 == c*den by comparing
                        // leading coefficients and cross-multiplying.
                        if f.num.terms.len() != f.den.terms.len() {
                            return false;
                        }
                        let (ne, nc) = match f.num.terms.iter().next_back() {
                            Some((e, c)) => (e.clone(), *c),
                            None => return true,
                        };
                        let (de, dc) = match f.den.terms.iter().next_back() {
                            Some((e, c)) => (e.clone(), *c),
                            None => return false,
                        };
                        if ne != de {
                            return false;
                        }
                        let c = fp::mul(nc, fp::inv(dc, f.num.p), f.num.p);
                        f.num == f.den.scale(c)
                    }
                }
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) => {
                p == q && a == b
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) => {
                self.same_field(other) && a.eq_cross(b)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic on mixed fields")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Helper used by rational parsing.
pub(crate) fn big_rational(num: BigInt, den: BigInt) -> Result<Scalar, ScalarError> {
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    let mut r = BigRational::new(num, den);
    if r.denom().is_negative() {
        r = -r;
    }
    Ok(Scalar::Rational(r))
}
