//! Exact sparse polynomials in the torus weights.
//!
//! Everything downstream (localization, puzzle weights, structure constants)
//! lives in `Z[y_1..y_n, z_1..z_n]`. Coefficients are arbitrary-precision
//! integers; there is no floating point anywhere in this crate.
//!
//! Terms are kept in a canonical graded order so that `Display` output is
//! deterministic and `FromStr` round-trips exactly. Within one degree, the
//! term whose exponent is larger on the most significant variable wins;
//! variables rank `y_n > .. > y_1 > z_n > .. > z_1 > d_m > ..`. So `y4 - y1`
//! prints in that order.
//!
//! The `d` variables are the simple root coordinates `d_m = y_(m+1) - y_m`.
//! [`Poly::difference_coeffs`] rewrites a translation-invariant polynomial in
//! terms of them (and reports when the input is not in that subring), which
//! is how positivity in the sense of Graham is checked.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use thiserror::Error;

/// A variable. Variant order gives significance for the term order:
/// any `y` outranks any `z`, which outranks any `d`; higher index outranks
/// lower within a kind.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Simple root coordinate `d_m = y_(m+1) - y_m`.
    D(u8),
    /// Second alphabet of equivariant parameters.
    Z(u8),
    /// Torus weight.
    Y(u8),
}

impl Var {
    fn check_index(i: usize) -> u8 {
        assert!(i >= 1 && i <= u8::MAX as usize, "variable index {i} out of range");
        i as u8
    }

    pub fn y(i: usize) -> Var {
        Var::Y(Self::check_index(i))
    }

    pub fn z(i: usize) -> Var {
        Var::Z(Self::check_index(i))
    }

    pub fn d(i: usize) -> Var {
        Var::D(Self::check_index(i))
    }

    pub fn index(self) -> usize {
        match self {
            Var::Y(i) | Var::Z(i) | Var::D(i) => i as usize,
        }
    }

    /// Order used when printing the factors of a monomial: `y`s first by
    /// index, then `z`s, then `d`s.
    fn display_rank(self) -> (u8, u8) {
        match self {
            Var::Y(i) => (0, i),
            Var::Z(i) => (1, i),
            Var::D(i) => (2, i),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y(i) => write!(f, "y{i}"),
            Var::Z(i) => write!(f, "z{i}"),
            Var::D(i) => write!(f, "d{i}"),
        }
    }
}

/// A monomial: variables with positive exponents, sorted by [`Var`] order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.by_ref().copied());
                    break;
                }
                (None, _) => {
                    out.extend(b.by_ref().copied());
                    break;
                }
            }
        }
        Monomial(out)
    }

    /// Remove `v` entirely, returning its exponent.
    fn strip(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        if e == 0 {
            return (0, self.clone());
        }
        let rest = self.0.iter().copied().filter(|&(w, _)| w != v).collect();
        (e, Monomial(rest))
    }

    fn from_factors(mut factors: Vec<(Var, u32)>) -> Monomial {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((w, acc)) if *w == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }
}

// Graded order, then compare exponents from the most significant variable
// down; the first variable where the exponents differ decides.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter().rev().peekable(), other.0.iter().rev().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                        match va.cmp(&vb) {
                            // `a` has the more significant variable
                            Ordering::Greater => return Ordering::Greater,
                            Ordering::Less => return Ordering::Less,
                            Ordering::Equal => {
                                if ea != eb {
                                    return ea.cmp(&eb);
                                }
                                a.next();
                                b.next();
                            }
                        }
                    }
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => return Ordering::Equal,
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut factors = self.0.clone();
        factors.sort_by_key(|&(v, _)| v.display_rank());
        for (idx, (v, e)) in factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Arithmetic failures that carry meaning (not bugs).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// Division by a linear form left a nonzero remainder.
    #[error("division left a nonzero remainder")]
    NonzeroRemainder,
    /// The polynomial is not in the subring generated by the differences
    /// `y_(m+1) - y_m`.
    #[error("polynomial is not translation invariant in the y alphabet")]
    NotInSubring,
}

/// Sparse polynomial with `BigInt` coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::int(1)
    }

    pub fn int(c: i64) -> Self {
        Poly::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        Poly { terms }
    }

    pub fn y(i: usize) -> Self {
        Poly::var(Var::y(i))
    }

    pub fn z(i: usize) -> Self {
        Poly::var(Var::z(i))
    }

    pub fn d(i: usize) -> Self {
        Poly::var(Var::d(i))
    }

    /// The linear form `y_j - y_i`.
    pub fn y_diff(j: usize, i: usize) -> Self {
        &Poly::y(j) - &Poly::y(i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` if every term has total degree `d`; `None` for zero or
    /// inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitute variables: where `map` returns `Some`, the variable is
    /// replaced by that polynomial; `None` keeps it.
    pub fn specialize(&self, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::from_bigint(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.factors() {
                match map(v) {
                    Some(p) => term = &term * &p.pow(e),
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                let mono = Poly {
                    terms: BTreeMap::from([(Monomial::from_factors(kept), BigInt::one())]),
                };
                term = &term * &mono;
            }
            out = &out + &term;
        }
        out
    }

    /// Set every `y` variable to zero (the forgetful map to ordinary
    /// cohomology).
    pub fn y_to_zero(&self) -> Poly {
        self.specialize(&|v| matches!(v, Var::Y(_)).then(Poly::zero))
    }

    /// Set every `z_i` to `y_i`.
    pub fn z_to_y(&self) -> Poly {
        self.specialize(&|v| match v {
            Var::Z(i) => Some(Poly::y(i as usize)),
            _ => None,
        })
    }

    /// The weight conjugation `y_i -> -y_(n+1-i)` used by the duality
    /// isomorphism on `Gr_k(C^n)`.
    pub fn conjugate_y(&self, n: usize) -> Poly {
        self.specialize(&|v| match v {
            Var::Y(i) => Some(-&Poly::y(n + 1 - i as usize)),
            _ => None,
        })
    }

    /// Exact division by the linear form `va - vb` (synthetic division in
    /// `va`, substituting `vb` in the Horner recurrence). Errors when the
    /// division is not exact.
    pub fn exact_divide(&self, va: Var, vb: Var) -> Result<Poly, PolyError> {
        assert_ne!(va, vb, "divisor would be zero");
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        // split self into coefficient polynomials of va^e
        let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.strip(va);
            parts.entry(e).or_default().add_term(rest, c.clone());
        }
        let deg = *parts.keys().next_back().expect("nonzero");
        if deg == 0 {
            return Err(PolyError::NonzeroRemainder);
        }
        let vb_poly = Poly::var(vb);
        let part = |e: u32| parts.get(&e).cloned().unwrap_or_default();
        // Horner from the top: q_(t-1) = p_t + vb * q_t, remainder p_0 + vb * q_0
        let mut q_parts: Vec<(u32, Poly)> = Vec::new();
        let mut carry = part(deg);
        for t in (1..=deg).rev() {
            q_parts.push((t - 1, carry.clone()));
            carry = &part(t - 1) + &(&vb_poly * &carry);
        }
        if !carry.is_zero() {
            return Err(PolyError::NonzeroRemainder);
        }
        let mut out = Poly::zero();
        for (e, qp) in q_parts {
            let shift = Poly {
                terms: BTreeMap::from([(
                    Monomial::from_factors(vec![(va, e)]),
                    BigInt::one(),
                )]),
            };
            out = &out + &(&qp * &shift);
        }
        Ok(out)
    }

    /// Rewrite a polynomial in `Z[y]` in the simple root coordinates
    /// `d_m = y_(m+1) - y_m`. Returns the polynomial in the `d` variables,
    /// or an error when the input is not in that subring (equivalently,
    /// not invariant under translating all `y_i` simultaneously).
    pub fn difference_coeffs(&self) -> Result<Poly, PolyError> {
        if self.vars().iter().any(|v| !matches!(v, Var::Y(_))) {
            return Err(PolyError::NotInSubring);
        }
        // y_1 -> 0, y_i -> d_1 + .. + d_(i-1); then check by re-expanding.
        let candidate = self.specialize(&|v| match v {
            Var::Y(i) => {
                let mut acc = Poly::zero();
                for m in 1..i as usize {
                    acc = &acc + &Poly::d(m);
                }
                Some(acc)
            }
            _ => None,
        });
        let back = candidate.specialize(&|v| match v {
            Var::D(m) => Some(&Poly::y(m as usize + 1) - &Poly::y(m as usize)),
            _ => None,
        });
        if &back == self {
            Ok(candidate)
        } else {
            Err(PolyError::NotInSubring)
        }
    }

    /// Positivity in the sense of Graham: every coefficient in the simple
    /// root coordinates is nonnegative. Errors when the polynomial is not
    /// in that subring at all.
    pub fn is_graham_positive(&self) -> Result<bool, PolyError> {
        let d = self.difference_coeffs()?;
        Ok(d.terms.values().all(|c| !c.is_negative()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // descending canonical order
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let abs = c.abs();
            if m.factors().is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Failure to parse a [`Poly`] from its canonical text form.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid polynomial syntax: {0}")]
pub struct ParsePolyError(String);

impl FromStr for Poly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { rest: s.trim() }.parse()
    }
}

struct Parser<'a> {
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParsePolyError> {
        Err(ParsePolyError(format!("{msg} at {:?}", self.rest)))
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> bool {
        if let Some(r) = self.rest.strip_prefix(c) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParsePolyError> {
        let digits: String = self.rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected integer");
        }
        self.rest = &self.rest[digits.len()..];
        digits
            .parse::<BigInt>()
            .map_err(|e| ParsePolyError(e.to_string()))
    }

    fn factor(&mut self) -> Result<Poly, ParsePolyError> {
        if self.rest.starts_with(|c: char| c.is_ascii_digit()) {
            return Ok(Poly::from_bigint(self.integer()?));
        }
        let kind = match self.rest.chars().next() {
            Some(c @ ('y' | 'z' | 'd')) => c,
            _ => return self.err("expected variable or integer"),
        };
        self.rest = &self.rest[1..];
        let idx = self.integer()?;
        let idx: usize = idx
            .try_into()
            .ok()
            .filter(|&i: &usize| i >= 1 && i <= u8::MAX as usize)
            .ok_or_else(|| ParsePolyError("variable index out of range".into()))?;
        let var = match kind {
            'y' => Var::y(idx),
            'z' => Var::z(idx),
            _ => Var::d(idx),
        };
        let mut p = Poly::var(var);
        if self.eat('^') {
            let e: u32 = self
                .integer()?
                .try_into()
                .map_err(|_| ParsePolyError("exponent out of range".into()))?;
            p = Poly::var(var).pow(e);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<Poly, ParsePolyError> {
        let mut p = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
                p = &p * &self.factor()?;
            } else {
                return Ok(p);
            }
        }
    }

    fn parse(&mut self) -> Result<Poly, ParsePolyError> {
        self.skip_ws();
        if self.rest.is_empty() {
            return self.err("empty input");
        }
        let mut sign = if self.eat('-') { -1i64 } else { 1 };
        let mut out = Poly::zero();
        loop {
            self.skip_ws();
            let t = self.term()?;
            out = &out + &t.scale(&BigInt::from(sign));
            self.skip_ws();
            if self.rest.is_empty() {
                return Ok(out);
            }
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return self.err("expected '+' or '-'");
            };
        }
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Poly::y_diff(4, 1).to_string(), "y4 - y1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::int(-7).to_string(), "-7");
        let q = &(&Poly::y(1) * &Poly::y(1)) * &Poly::z(3);
        assert_eq!(q.scale(&BigInt::from(2)).to_string(), "2*y1^2*z3");
        assert_eq!((&Poly::one() - &Poly::y(2)).to_string(), "-y2 + 1");
        // graded before lexicographic
        let mixed = &(&Poly::y(1) * &Poly::y(1)) + &(&Poly::y(4) - &Poly::int(3));
        assert_eq!(mixed.to_string(), "y1^2 + y4 - 3");
        // higher significant variable first within a degree
        let two = &(&Poly::y(1) * &Poly::y(3)) + &(&Poly::y(1) * &Poly::y(1));
        assert_eq!(two.to_string(), "y1*y3 + y1^2");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("y4 - y1"), Poly::y_diff(4, 1));
        assert_eq!(p("0"), Poly::zero());
        assert_eq!(p("-y2 + 1"), &Poly::one() - &Poly::y(2));
        assert_eq!(p(" 2*y1^2*z3 "), (&(&Poly::y(1) * &Poly::y(1)) * &Poly::z(3)).scale(&BigInt::from(2)));
        assert!("y0".parse::<Poly>().is_err());
        assert!("y1 +".parse::<Poly>().is_err());
        assert!("foo".parse::<Poly>().is_err());
    }

    #[test]
    fn exact_division() {
        let prod = &Poly::y_diff(3, 1) * &Poly::y_diff(4, 2);
        assert_eq!(prod.exact_divide(Var::y(3), Var::y(1)).unwrap(), Poly::y_diff(4, 2));
        assert_eq!(prod.exact_divide(Var::y(4), Var::y(2)).unwrap(), Poly::y_diff(3, 1));
        let bad = &prod + &Poly::one();
        assert_eq!(bad.exact_divide(Var::y(3), Var::y(1)), Err(PolyError::NonzeroRemainder));
        assert_eq!(Poly::y(1).exact_divide(Var::y(3), Var::y(2)), Err(PolyError::NonzeroRemainder));
        assert_eq!(Poly::zero().exact_divide(Var::y(3), Var::y(2)), Ok(Poly::zero()));
        // repeated factors
        let sq = &prod * &Poly::y_diff(3, 1);
        assert_eq!(sq.exact_divide(Var::y(3), Var::y(1)).unwrap(), prod);
    }

    #[test]
    fn difference_coordinates() {
        let d = Poly::y_diff(3, 1).difference_coeffs().unwrap();
        assert_eq!(d, &Poly::d(1) + &Poly::d(2));
        assert_eq!(d.to_string(), "d2 + d1");
        assert_eq!(Poly::y(1).difference_coeffs(), Err(PolyError::NotInSubring));
        let prod = &Poly::y_diff(2, 1) * &Poly::y_diff(3, 2);
        assert_eq!(prod.difference_coeffs().unwrap(), &Poly::d(1) * &Poly::d(2));
        assert_eq!(Poly::y_diff(3, 1).is_graham_positive(), Ok(true));
        assert_eq!(Poly::y_diff(1, 3).is_graham_positive(), Ok(false));
        assert_eq!(Poly::zero().is_graham_positive(), Ok(true));
        assert_eq!(Poly::z(1).is_graham_positive(), Err(PolyError::NotInSubring));
    }

    #[test]
    fn specialization() {
        // (y3 - z1) + (y1 - z2) under z := y collapses to y3 - y2
        let e = &(&Poly::y(3) - &Poly::z(1)) + &(&Poly::y(1) - &Poly::z(2));
        assert_eq!(e.z_to_y(), Poly::y_diff(3, 2));
        assert_eq!(e.y_to_zero(), -&(&Poly::z(1) + &Poly::z(2)));
        assert_eq!(Poly::y_diff(4, 1).y_to_zero(), Poly::zero());
        // conjugation on Gr(2,4): y2 - y1 -> y3 - y4... sign flips twice
        assert_eq!(Poly::y_diff(2, 1).conjugate_y(4), Poly::y_diff(4, 3));
    }

    #[test]
    fn degrees() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::y_diff(3, 1).homogeneous_degree(), Some(1));
        let inhom = &Poly::y(1) + &Poly::one();
        assert_eq!(inhom.homogeneous_degree(), None);
        assert_eq!(inhom.degree(), Some(1));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let var = prop_oneof![
            (1usize..=4).prop_map(Var::y),
            (1usize..=3).prop_map(Var::z),
        ];
        let mono = proptest::collection::vec((var, 1u32..=3), 0..3);
        let term = (mono, -9i64..=9);
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            let mut out = Poly::zero();
            for (factors, c) in terms {
                let m = Monomial::from_factors(factors);
                let mono = Poly {
                    terms: BTreeMap::from([(m, BigInt::one())]),
                };
                out = &out + &mono.scale(&BigInt::from(c));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            let back: Poly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly()) {
            let f = Poly::y_diff(4, 2);
            let prod = &a * &f;
            prop_assert_eq!(prod.exact_divide(Var::y(4), Var::y(2)).unwrap(), a);
        }
    }
}
