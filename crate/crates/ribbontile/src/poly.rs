//! Sparse bivariate polynomials over ℤ with a fixed monomial order.
//!
//! Everything downstream (reduction, basis completion, tiling decisions)
//! manipulates elements of ℤ[x, y] through this module. Coefficients are
//! arbitrary-precision integers; exponents are non-negative (regions and
//! tiles are translated into the first quadrant before they become
//! polynomials, so Laurent corrections never reach this layer).
//!
//! The monomial order is total degree first, ties broken lexicographically
//! with x > y, so the ascending chain starts
//! 1 < y < x < y² < xy < x² < y³ < xy² < x²y < x³ < y⁴ < …
//! This order is a term order: 1 is minimal and multiplication by a fixed
//! monomial preserves comparisons.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// The two variables of the ambient ring ℤ[x, y].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// Horizontal lattice direction.
    X,
    /// Vertical lattice direction.
    Y,
}

/// A power product x^a · y^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Exponent of x.
    pub x: u32,
    /// Exponent of y.
    pub y: u32,
}

impl Monomial {
    /// The multiplicative identity x⁰y⁰.
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    /// Builds x^a · y^b.
    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    /// A pure power of a single variable.
    pub fn var_pow(v: Var, e: u32) -> Self {
        match v {
            Var::X => Monomial { x: e, y: 0 },
            Var::Y => Monomial { x: 0, y: e },
        }
    }

    /// Total degree a + b.
    pub fn degree(&self) -> u64 {
        u64::from(self.x) + u64::from(self.y)
    }

    /// Whether `self` divides `other` exponentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Exact quotient `self / other`, when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                x: self.x - other.x,
                y: self.y - other.y,
            })
        } else {
            None
        }
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            y: self.y + other.y,
        }
    }

    /// Least common multiple (componentwise max of exponents).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.max(other.x),
            y: self.y.max(other.y),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (0, 0) => write!(f, "1"),
            _ => {
                let mut parts = Vec::new();
                match self.x {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    e => parts.push(format!("x^{e}")),
                }
                match self.y {
                    0 => {}
                    1 => parts.push("y".to_string()),
                    e => parts.push(format!("y^{e}")),
                }
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// Errors produced while parsing polynomial text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    /// The input (or one additive term of it) was empty.
    #[error("empty polynomial term")]
    EmptyTerm,
    /// An unrecognized character or token sequence.
    #[error("unexpected token at byte {0}")]
    UnexpectedToken(usize),
    /// An exponent was missing or malformed after `^`.
    #[error("malformed exponent at byte {0}")]
    BadExponent(usize),
    /// A coefficient failed to parse as an integer.
    #[error("malformed coefficient at byte {0}")]
    BadCoefficient(usize),
}

/// A sparse polynomial in ℤ[x, y].
///
/// Internal invariant: no stored coefficient is zero. Terms live in a
/// `BTreeMap` keyed by the monomial order, so iteration in descending
/// order (used everywhere for canonical output and deterministic
/// reduction) is `terms()` below.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let mut p = Polynomial::default();
        p.add_term(c.into(), Monomial::ONE);
        p
    }

    /// The single-term polynomial c · m.
    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let mut p = Polynomial::default();
        p.add_term(c.into(), m);
        p
    }

    /// The monomial polynomial x^a y^b with coefficient 1.
    pub fn monomial(x: u32, y: u32) -> Self {
        Polynomial::term(1, Monomial::new(x, y))
    }

    /// The geometric sum 1 + v + v² + … + v^{len−1} in the given variable.
    ///
    /// These sums are the building blocks of every tile and basis
    /// polynomial; `len = 0` gives the zero polynomial.
    pub fn geometric(v: Var, len: u32) -> Self {
        let mut p = Polynomial::default();
        for e in 0..len {
            p.add_term(BigInt::one(), Monomial::var_pow(v, e));
        }
        p
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in descending monomial order (the canonical order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Descending iteration over terms with monomial ≤ `bound` (all terms
    /// when `bound` is `None`). Reduction loops use this to resume below
    /// the last reduced monomial without rescanning the settled prefix.
    pub fn terms_at_most<'a>(
        &'a self,
        bound: Option<&Monomial>,
    ) -> impl Iterator<Item = (&'a Monomial, &'a BigInt)> {
        match bound {
            Some(b) => self.terms.range(..=*b).rev(),
            None => self.terms.range(..).rev(),
        }
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Head monomial and coefficient (largest in the order), if nonzero.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Head term HT: the largest monomial.
    pub fn head_monomial(&self) -> Option<Monomial> {
        self.leading().map(|(m, _)| *m)
    }

    /// Head coefficient HC.
    pub fn head_coefficient(&self) -> Option<BigInt> {
        self.leading().map(|(_, c)| c.clone())
    }

    /// Total degree (degree of the head monomial), `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.head_monomial().map(|m| m.degree())
    }

    /// Adds `c · m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Builds a polynomial from (coefficient, monomial) pairs, summing
    /// duplicates and dropping cancellations.
    pub fn from_terms<I: IntoIterator<Item = (BigInt, Monomial)>>(it: I) -> Self {
        let mut p = Polynomial::default();
        for (c, m) in it {
            p.add_term(c, m);
        }
        p
    }

    /// `self + c · m · other`, the fused operation at the heart of
    /// reduction loops.
    pub fn add_scaled(&mut self, c: &BigInt, m: &Monomial, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in other.terms.iter() {
            self.add_term(c * oc, m.mul(om));
        }
    }

    /// Multiplies by a single term in place.
    pub fn scale_term(&mut self, c: &BigInt, m: &Monomial) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (om, oc) in old {
            self.terms.insert(m.mul(&om), oc * c);
        }
    }

    /// Substitutes concrete values for x and y, evaluating over any ring
    /// with addition and multiplication from `BigInt` coefficients.
    pub fn eval_complex(&self, x: num_complex::Complex64, y: num_complex::Complex64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in self.terms.iter() {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += x.powu(m.x) * y.powu(m.y) * cf;
        }
        acc
    }

    /// Parses the canonical text form (and any reordering of it).
    ///
    /// Grammar per term: optional sign, optional integer coefficient,
    /// optional `*`-separated variable powers `x`, `x^a`, `y`, `y^b`.
    /// Terms may appear in any order; duplicates are summed.
    pub fn parse(s: &str) -> Result<Polynomial, ParseError> {
        let bytes = s.as_bytes();
        let mut i = 0usize;
        let n = bytes.len();
        let mut p = Polynomial::default();
        let skip_ws = |i: &mut usize| {
            while *i < n && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == n {
            return Err(ParseError::EmptyTerm);
        }
        let mut first = true;
        while i < n {
            skip_ws(&mut i);
            // Sign handling: first term may omit the sign; later terms
            // must be joined by + or -.
            let mut sign = 1i32;
            if i < n && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if !first {
                return Err(ParseError::UnexpectedToken(i));
            }
            skip_ws(&mut i);
            if i == n {
                return Err(ParseError::EmptyTerm);
            }
            // Optional integer coefficient.
            let mut coeff: Option<BigInt> = None;
            if bytes[i].is_ascii_digit() {
                let start = i;
                while i < n && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                coeff = Some(
                    digits
                        .parse::<BigInt>()
                        .map_err(|_| ParseError::BadCoefficient(start))?,
                );
                skip_ws(&mut i);
                if i < n && bytes[i] == b'*' {
                    i += 1;
                    skip_ws(&mut i);
                }
            }
            // Variable powers.
            let mut ex = 0u32;
            let mut ey = 0u32;
            let mut saw_var = false;
            loop {
                skip_ws(&mut i);
                if i < n && (bytes[i] == b'x' || bytes[i] == b'y') {
                    let which = bytes[i];
                    i += 1;
                    let mut e = 1u32;
                    if i < n && bytes[i] == b'^' {
                        i += 1;
                        let start = i;
                        while i < n && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(ParseError::BadExponent(start));
                        }
                        e = s[start..i]
                            .parse::<u32>()
                            .map_err(|_| ParseError::BadExponent(start))?;
                    }
                    if which == b'x' {
                        ex = ex.checked_add(e).ok_or(ParseError::BadExponent(i))?;
                    } else {
                        ey = ey.checked_add(e).ok_or(ParseError::BadExponent(i))?;
                    }
                    saw_var = true;
                    skip_ws(&mut i);
                    if i < n && bytes[i] == b'*' {
                        i += 1;
                        continue;
                    }
                } else {
                    break;
                }
            }
            if coeff.is_none() && !saw_var {
                return Err(ParseError::UnexpectedToken(i.min(n.saturating_sub(1))));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * BigInt::from(sign);
            p.add_term(c, Monomial::new(ex, ey));
            first = false;
            skip_ws(&mut i);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in descending monomial order, `*` between
    /// coefficient and variable parts, unit coefficients omitted.
    /// Example: `x*y-1`, `y^3+y^2+x+y+1`, `-2*x^2+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_const = *m == Monomial::ONE;
            if abs.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl serde::Serialize for Polynomial {
    /// Polynomials cross process boundaries as their canonical text form.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "0" {
            return Ok(Polynomial::zero());
        }
        Polynomial::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(-c.clone(), *m);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, c) in self.terms.iter() {
            out.add_scaled(c, m, rhs);
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
