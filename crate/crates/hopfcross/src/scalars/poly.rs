//! Multivariate polynomials over a prime field, and the fraction field
//! built from them.
//!
//! Fractions are deliberately *not* reduced to lowest terms: multivariate
//! gcd is expensive and unnecessary for equality testing, which is done by
//! cross-multiplication. A cheap normalization (cancelling a common
//! monomial factor and scaling the denominator's leading coefficient to 1)
//! keeps intermediate sizes in check without changing the represented
//! value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Arithmetic in F_p on canonical representatives 0..p-1.
pub(crate) mod fp {
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn neg(a: u64, p: u64) -> u64 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    // p prime and a != 0 mod p.
    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn norm_i64(n: i64, p: u64) -> u64 {
        let p = p as i64;
        (((n % p) + p) % p) as u64
    }

    /// Deterministic Miller-Rabin, valid for all u64.
    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n == q {
                return true;
            }
            if n % q == 0 {
                return false;
            }
        }
        let mut d = n - 1;
        let mut r = 0u32;
        while d % 2 == 0 {
            d /= 2;
            r += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 0..r - 1 {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }
}

/// A multivariate polynomial over F_p with a fixed number of variables.
/// Terms map an exponent vector (length `nvars`) to a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub(crate) p: u64,
    pub(crate) nvars: usize,
    pub(crate) terms: BTreeMap<Vec<u32>, u64>,
}

impl MPoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        MPoly {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, nvars: usize, c: u64) -> Self {
        let c = c % p;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0u32; nvars], c);
        }
        MPoly { p, nvars, terms }
    }

    pub fn var(p: u64, nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0u32; nvars];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, 1 % p);
        MPoly { p, nvars, terms }
    }

    pub fn monomial(p: u64, nvars: usize, exps: Vec<u32>, c: u64) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c % p;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        MPoly { p, nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(*c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Some((exponents, coefficient)) when the polynomial has one term.
    pub fn as_monomial(&self) -> Option<(&[u32], u64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.as_slice(), *c))
        } else {
            None
        }
    }

    fn insert_term(&mut self, exps: Vec<u32>, c: u64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = fp::add(*o.get(), c, self.p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!((self.p, self.nvars), (other.p, other.nvars));
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = fp::neg(*c, self.p);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!((self.p, self.nvars), (other.p, other.nvars));
        let mut out = MPoly::zero(self.p, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exps, fp::mul(*ca, *cb, self.p));
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> MPoly {
        let c = c % self.p;
        if c == 0 {
            return MPoly::zero(self.p, self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = fp::mul(*v, c, self.p);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.p, self.nvars, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Top degree in one variable; None for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Valuation at the prime (X_var): the least exponent of X_var over all
    /// terms. None for the zero polynomial.
    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Componentwise minimum of all exponent vectors (the largest monomial
    /// dividing the polynomial). None for zero.
    fn monomial_content(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| (*a).min(*b)).collect()
        }))
    }

    fn shift_down(&self, by: &[u32]) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(by).map(|(x, y)| x - y).collect::<Vec<u32>>(),
                    *c,
                )
            })
            .collect();
        MPoly {
            p: self.p,
            nvars: self.nvars,
            terms,
        }
    }

    /// Leading coefficient with respect to the lexicographic order on
    /// exponent vectors.
    fn leading_coeff(&self) -> Option<u64> {
        self.terms.iter().next_back().map(|(_, c)| *c)
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, exp) in point.iter().zip(e) {
                t = fp::mul(t, fp::pow(*x, *exp as u64, self.p), self.p);
            }
            acc = fp::add(acc, t, self.p);
        }
        acc
    }

    /// Renders with the given variable names; canonical order is descending
    /// lexicographic in the exponent vectors.
    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            let constant_term = exps.iter().all(|&e| e == 0);
            if *coeff != 1 || constant_term {
                factors.push(coeff.to_string());
            }
            for (v, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[v].clone()),
                    _ => {
                        let mut f = String::new();
                        let _ = write!(f, "{}^{}", vars[v], e);
                        factors.push(f);
                    }
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// An element of F_p(X1, ..., Xn) as an unreduced fraction.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub(crate) num: MPoly,
    pub(crate) den: MPoly,
}

impl RatFn {
    /// `den` must be nonzero; callers guarantee this.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        debug_assert!(!den.is_zero(), "rational function with zero denominator");
        let mut out = RatFn { num, den };
        out.normalize();
        out
    }

    pub fn from_poly(num: MPoly) -> Self {
        let one = MPoly::constant(num.p, num.nvars, 1);
        RatFn::new(num, one)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::constant(self.den.p, self.den.nvars, 1);
            return;
        }
        // Cancel the largest common monomial factor.
        let cn = self.num.monomial_content().unwrap();
        let cd = self.den.monomial_content().unwrap();
        let common: Vec<u32> = cn.iter().zip(&cd).map(|(a, b)| (*a).min(*b)).collect();
        if common.iter().any(|&e| e > 0) {
            self.num = self.num.shift_down(&common);
            self.den = self.den.shift_down(&common);
        }
        // Scale the denominator's lexicographic leading coefficient to 1.
        let lc = self.den.leading_coeff().unwrap();
        if lc != 1 {
            let inv = fp::inv(lc, self.den.p);
            self.num = self.num.scale(inv);
            self.den = self.den.scale(inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// None when zero.
    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }

    /// Mathematical equality by cross-multiplication.
    pub fn eq_cross(&self, other: &RatFn) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.den.as_constant() == Some(1) {
            self.num.render(vars)
        } else {
            format!("({})/({})", self.num.render(vars), self.den.render(vars))
        }
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl Eq for RatFn {}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: u64, n: usize, i: usize) -> MPoly {
        MPoly::var(p, n, i)
    }

    #[test]
    fn poly_ring_smoke() {
        let p = 3;
        let a = x(p, 2, 0).add(&MPoly::constant(p, 2, 1)); // X1 + 1
        let b = x(p, 2, 0).sub(&MPoly::constant(p, 2, 1)); // X1 - 1
        let prod = a.mul(&b); // X1^2 - 1
        let expect = x(p, 2, 0).pow(2).sub(&MPoly::constant(p, 2, 1));
        assert_eq!(prod, expect);
        assert_eq!(prod.degree_in(0), Some(2));
        assert_eq!(prod.degree_in(1), Some(0));
    }

    #[test]
    fn freshman_dream() {
        // (X1 + X2)^3 = X1^3 + X2^3 over F_3.
        let p = 3;
        let s = x(p, 2, 0).add(&x(p, 2, 1)).pow(3);
        let e = x(p, 2, 0).pow(3).add(&x(p, 2, 1).pow(3));
        assert_eq!(s, e);
    }

    #[test]
    fn fraction_equality_without_reduction() {
        // (X1^2 - 1)/(X1 - 1) == (X1 + 1)/1 even though the left side is
        // stored unreduced.
        let p = 5;
        let one = MPoly::constant(p, 1, 1);
        let num = x(p, 1, 0).pow(2).sub(&one);
        let den = x(p, 1, 0).sub(&one);
        let lhs = RatFn::new(num, den);
        let rhs = RatFn::from_poly(x(p, 1, 0).add(&one));
        assert_eq!(lhs, rhs);
        assert!(!lhs.eq_cross(&RatFn::from_poly(x(p, 1, 0))));
    }

    #[test]
    fn fraction_field_ops() {
        let p = 7;
        let a = RatFn::new(MPoly::constant(p, 1, 1), x(p, 1, 0)); // 1/X
        let b = RatFn::from_poly(x(p, 1, 0)); // X
        let prod = a.mul(&b);
        assert_eq!(prod, RatFn::from_poly(MPoly::constant(p, 1, 1)));
        let s = a.add(&b); // (1 + X^2)/X
        let expect = RatFn::new(
            MPoly::constant(p, 1, 1).add(&x(p, 1, 0).pow(2)),
            x(p, 1, 0),
        );
        assert_eq!(s, expect);
        assert_eq!(a.inv().unwrap(), b);
        assert!(RatFn::from_poly(MPoly::zero(p, 1)).inv().is_none());
    }

    #[test]
    fn primality() {
        for q in [3u64, 5, 7, 11, 101, 65537] {
            assert!(fp::is_prime(q), "{q}");
        }
        for q in [0u64, 1, 2, 4, 9, 15, 1_000_000] {
            // 2 is prime but the library rejects it elsewhere; is_prime
            // itself reports it correctly.
            if q == 2 {
                assert!(fp::is_prime(q));
            } else {
                assert!(!fp::is_prime(q), "{q}");
            }
        }
    }
}
