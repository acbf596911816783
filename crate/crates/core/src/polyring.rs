//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Every polynomial lives in the fixed ring `Z[a, b, y, q]`, where `a` and `b`
//! stand for the inverse boundary rates `1/alpha` and `1/beta`. The shifted
//! boundary parameters `(1-q)a - 1` and `(1-q)b - 1` are never variables of
//! their own; see [`alpha_tilde`] and [`beta_tilde`].
//!
//! The textual form produced by [`MPoly`]'s `Display` impl is the canonical
//! interchange format: terms sorted by descending `(y, q, a, b)` exponents,
//! rendered as `C*y^K*q^L*a^I*b^J` with unit coefficients, unit exponents and
//! zero-exponent factors elided.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational numbers used for point evaluation.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by (1-q)^{power}")]
    NotDivisible { power: u32 },
    #[error("polynomial is not divisible by {var}^{power}")]
    NotDivisibleByVar { var: Var, power: u32 },
    #[error("y-degree {degree} exceeds reflection degree {n}")]
    DegreeTooHigh { degree: u32, n: u32 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("cannot parse evaluation point: {0}")]
    Point(String),
}

/// One of the four formal variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y,
    Q,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Y, Var::Q, Var::A, Var::B];

    pub fn name(self) -> &'static str {
        match self {
            Var::Y => "y",
            Var::Q => "q",
            Var::A => "a",
            Var::B => "b",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent tuple of a monomial. The derived ordering compares `y`, then `q`,
/// then `a`, then `b`, which is the canonical term order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    pub y: u32,
    pub q: u32,
    pub a: u32,
    pub b: u32,
}

impl Exponents {
    pub fn new(y: u32, q: u32, a: u32, b: u32) -> Self {
        Exponents { y, q, a, b }
    }

    pub fn get(&self, var: Var) -> u32 {
        match var {
            Var::Y => self.y,
            Var::Q => self.q,
            Var::A => self.a,
            Var::B => self.b,
        }
    }

    pub fn with(mut self, var: Var, exp: u32) -> Self {
        match var {
            Var::Y => self.y = exp,
            Var::Q => self.q = exp,
            Var::A => self.a = exp,
            Var::B => self.b = exp,
        }
        self
    }

    fn plus(&self, other: &Exponents) -> Exponents {
        Exponents {
            y: self.y + other.y,
            q: self.q + other.q,
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

/// A single term `coeff * y^y q^q a^a b^b` with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub exponents: Exponents,
    pub coeff: BigInt,
}

/// Sparse polynomial in `a, b, y, q` with integer coefficients.
///
/// No stored coefficient is ever zero, so structural equality is polynomial
/// equality and the zero polynomial is the empty term map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        MPoly::monomial(BigInt::from(c), Exponents::default())
    }

    pub fn from_bigint(c: BigInt) -> Self {
        MPoly::monomial(c, Exponents::default())
    }

    pub fn var(var: Var) -> Self {
        MPoly::var_pow(var, 1)
    }

    pub fn var_pow(var: Var, exp: u32) -> Self {
        MPoly::monomial(BigInt::one(), Exponents::default().with(var, exp))
    }

    pub fn monomial(coeff: BigInt, exponents: Exponents) -> Self {
        let mut p = MPoly::zero();
        p.add_term(exponents, coeff);
        p
    }

    /// Builds a polynomial from `(exponents, count)` pairs, merging repeats.
    pub fn from_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, u64)>,
    {
        let mut p = MPoly::zero();
        for (e, c) in counts {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// Polynomial in `q` alone from its coefficient list (index = exponent).
    pub fn from_q_coeffs(coeffs: &[BigInt]) -> Self {
        let mut p = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Exponents::default().with(Var::Q, k as u32), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponents::default())
                .is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial {
            exponents: *e,
            coeff: c.clone(),
        })
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Exponents::default())
    }

    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> MPoly {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by `var^exp`.
    pub fn shift(&self, var: Var, exp: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.with(var, e.get(var) + exp), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `var^k`, as a polynomial free of `var`.
    pub fn coeff_of(&self, var: Var, k: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(var) == k)
                .map(|(e, c)| (e.with(var, 0), c.clone()))
                .collect(),
        }
    }

    /// Replaces every occurrence of `var` by `value`.
    pub fn substitute(&self, var: Var, value: &MPoly) -> MPoly {
        let mut by_power: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_power
                .entry(e.get(var))
                .or_default()
                .add_term(e.with(var, 0), c.clone());
        }
        let mut result = MPoly::zero();
        let mut power = MPoly::one();
        let mut current = 0;
        for (k, part) in by_power {
            while current < k {
                power = &power * value;
                current += 1;
            }
            result += &(&part * &power);
        }
        result
    }

    /// Substitutes an integer constant for `var`.
    pub fn specialize(&self, var: Var, value: i64) -> MPoly {
        self.substitute(var, &MPoly::constant(value))
    }

    /// Exact division by `var^k`.
    pub fn div_var_pow(&self, var: Var, k: u32) -> Result<MPoly, PolyError> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.get(var);
            if d < k {
                return Err(PolyError::NotDivisibleByVar { var, power: k });
            }
            out.insert(e.with(var, d - k), c.clone());
        }
        Ok(MPoly { terms: out })
    }

    /// Divides by `(1-q)^n`, failing unless the division is exact.
    ///
    /// Each factor is removed by synthetic division in `q`, separately for
    /// every `(y, a, b)` coefficient class.
    pub fn div_pow_one_minus_q(&self, n: u32) -> Result<MPoly, PolyError> {
        let mut current = self.clone();
        for _ in 0..n {
            current = current
                .div_one_minus_q()
                .ok_or(PolyError::NotDivisible { power: n })?;
        }
        Ok(current)
    }

    fn div_one_minus_q(&self) -> Option<MPoly> {
        // q-coefficient lists grouped by the remaining exponents (y, a, b)
        type Classes<'a> = BTreeMap<(u32, u32, u32), Vec<(u32, &'a BigInt)>>;
        let mut classes: Classes = BTreeMap::new();
        for (e, c) in &self.terms {
            classes.entry((e.y, e.a, e.b)).or_default().push((e.q, c));
        }
        let mut out = MPoly::zero();
        for ((y, a, b), mut coeffs) in classes {
            coeffs.sort_by_key(|(k, _)| *k);
            let top = coeffs.last().map(|(k, _)| *k).unwrap_or(0);
            let mut running = BigInt::zero();
            let mut it = coeffs.into_iter().peekable();
            for k in 0..=top {
                if let Some((_, c)) = it.next_if(|(kk, _)| *kk == k) {
                    running += c;
                }
                if k == top {
                    if !running.is_zero() {
                        return None;
                    }
                } else {
                    out.add_term(Exponents::new(y, k, a, b), running.clone());
                }
            }
        }
        Some(out)
    }

    /// `y^n * p(b, a, 1/y, q)`: swaps `a` and `b` and reverses the `y` grading.
    pub fn y_reflect(&self, n: u32) -> Result<MPoly, PolyError> {
        let degree = self.degree(Var::Y).unwrap_or(0);
        if degree > n {
            return Err(PolyError::DegreeTooHigh { degree, n });
        }
        Ok(MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponents::new(n - e.y, e.q, e.b, e.a), c.clone()))
                .collect(),
        })
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &Point) -> Rational {
        let mut powers: [Vec<Rational>; 4] = Default::default();
        let values = [&point.y, &point.q, &point.a, &point.b];
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (slot, exp) in [e.y, e.q, e.a, e.b].into_iter().enumerate() {
                let table = &mut powers[slot];
                if table.is_empty() {
                    table.push(Rational::one());
                }
                while table.len() <= exp as usize {
                    let next = table.last().unwrap() * values[slot];
                    table.push(next);
                }
                term *= &table[exp as usize];
            }
            total += term;
        }
        total
    }

    /// Canonical text form; identical to `to_string()`.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

/// `(1-q)a - 1`, the shifted left boundary parameter.
pub fn alpha_tilde() -> MPoly {
    &(&MPoly::one() - &MPoly::var(Var::Q)) * &MPoly::var(Var::A) - MPoly::one()
}

/// `(1-q)b - 1`, the shifted right boundary parameter.
pub fn beta_tilde() -> MPoly {
    &(&MPoly::one() - &MPoly::var(Var::Q)) * &MPoly::var(Var::B) - MPoly::one()
}

/// `1 - q`.
pub fn one_minus_q() -> MPoly {
    &MPoly::one() - &MPoly::var(Var::Q)
}

/// Rewrites a polynomial whose `a`, `b` denote the shifted parameters back into
/// the plain `a`, `b` variables.
pub fn expand_tilde(p: &MPoly) -> MPoly {
    p.substitute(Var::A, &alpha_tilde())
        .substitute(Var::B, &beta_tilde())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut factors = Vec::new();
            for var in Var::ALL {
                match e.get(var) {
                    0 => {}
                    1 => factors.push(var.name().to_string()),
                    k => factors.push(format!("{}^{}", var.name(), k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = PolyError;

    /// Parses sums of products of integers and `a`, `b`, `y`, `q` powers, e.g.
    /// `y^2*b^2 - 3*a*q + 1`. Factor order and whitespace are free.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let p = parser.sum()?;
        if parser.pos != parser.chars.len() {
            return Err(PolyError::Parse(format!(
                "unexpected '{}' at offset {}",
                parser.chars[parser.pos], parser.pos
            )));
        }
        Ok(p)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MPoly, PolyError> {
        let mut total = MPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                _ if first => 1,
                Some(c) => return Err(PolyError::Parse(format!("expected '+' or '-', got '{c}'"))),
                None => break,
            };
            let term = self.product()?;
            total += &term.scale_i64(sign);
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        if first {
            return Err(PolyError::Parse("empty input".into()));
        }
        Ok(total)
    }

    fn product(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!(
                "expected a number at offset {start}"
            )));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad number '{digits}'")))
    }

    fn factor(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(MPoly::from_bigint(self.number()?)),
            Some(c) => {
                let var = match c {
                    'y' => Var::Y,
                    'q' => Var::Q,
                    'a' => Var::A,
                    'b' => Var::B,
                    other => return Err(PolyError::Parse(format!("unknown symbol '{other}'"))),
                };
                self.pos += 1;
                let mut exp = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let n = self.number()?;
                    exp = u32::try_from(n)
                        .map_err(|_| PolyError::Parse("exponent out of range".into()))?;
                }
                Ok(MPoly::var_pow(var, exp))
            }
            None => Err(PolyError::Parse("unexpected end of input".into())),
        }
    }
}

/// A rational assignment of all four variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub a: Rational,
    pub b: Rational,
    pub y: Rational,
    pub q: Rational,
}

impl Point {
    pub fn new(a: Rational, b: Rational, y: Rational, q: Rational) -> Self {
        Point { a, b, y, q }
    }

    pub fn integers(a: i64, b: i64, y: i64, q: i64) -> Self {
        let r = |v: i64| Rational::from_integer(BigInt::from(v));
        Point::new(r(a), r(b), r(y), r(q))
    }
}

impl FromStr for Point {
    type Err = PolyError;

    /// Parses `a=1/2,b=3,y=1,q=0`; every variable must be given exactly once.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut slots: [Option<Rational>; 4] = Default::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| PolyError::Point(format!("missing '=' in '{part}'")))?;
            let idx = match name.trim() {
                "a" => 0,
                "b" => 1,
                "y" => 2,
                "q" => 3,
                other => return Err(PolyError::Point(format!("unknown variable '{other}'"))),
            };
            let value: Rational = value
                .trim()
                .parse()
                .map_err(|_| PolyError::Point(format!("bad rational '{value}'")))?;
            if slots[idx].replace(value).is_some() {
                return Err(PolyError::Point(format!("variable '{name}' given twice")));
            }
        }
        let [a, b, y, q] = slots;
        match (a, b, y, q) {
            (Some(a), Some(b), Some(y), Some(q)) => Ok(Point { a, b, y, q }),
            _ => Err(PolyError::Point(
                "all of a, b, y, q must be assigned".into(),
            )),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl MulAssign<&MPoly> for MPoly {
    fn mul_assign(&mut self, rhs: &MPoly) {
        *self = &*self * rhs;
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

macro_rules! owned_variants {
    ($trait:ident, $method:ident) => {
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_variants!(Add, add);
owned_variants!(Sub, sub);
owned_variants!(Mul, mul);

impl AddAssign<MPoly> for MPoly {
    fn add_assign(&mut self, rhs: MPoly) {
        *self += &rhs;
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for MPoly {
    fn product<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::one(), |acc, p| &acc * &p)
    }
}
