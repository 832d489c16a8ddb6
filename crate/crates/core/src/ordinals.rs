//! Ordinal notations below epsilon_0 in Cantor normal form.
//!
//! Every notation is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves notations) and positive coefficients.
//! Ordinals at or above epsilon_0 have no notation here.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::baire::{pair_nat_checked, unpair_nat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("exponents must strictly decrease")]
    NotDecreasing,
    #[error("coefficients must be positive")]
    ZeroCoefficient,
    #[error("{0} is not a limit notation")]
    NotLimit(String),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
    #[error("index overflows 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// Builds a notation from `(exponent, coefficient)` terms, checking normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(OrdinalError::ZeroCoefficient);
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(OrdinalError::NotDecreasing);
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if !e.is_zero())
    }

    pub fn kind(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some((e, _)) if !e.is_zero() => Kind::Limit,
            Some((_, c)) => {
                let mut terms = self.terms.clone();
                if *c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 = c - 1;
                }
                Kind::Successor(Ordinal { terms })
            }
        }
    }

    pub fn pred(&self) -> Option<Ordinal> {
        match self.kind() {
            Kind::Successor(p) => Some(p),
            _ => None,
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.add_nat(1)
    }

    pub fn add_nat(&self, k: u64) -> Ordinal {
        if k == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += k,
            _ => terms.push((Self::zero(), k)),
        }
        Ordinal { terms }
    }

    /// Splits off the finite tail: `self = limit_part + n`.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => {
                let mut terms = self.terms.clone();
                terms.pop();
                (Ordinal { terms }, *c)
            }
            _ => (self.clone(), 0),
        }
    }

    /// `self + w`, the limit reached by `self + k` as k grows.
    pub fn plus_omega(&self) -> Ordinal {
        self.add(&Self::omega())
    }

    /// Ordinal sum; terms of `self` below the leading term of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, _)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            self.terms.iter().filter(|(e, _)| e >= lead).cloned().collect();
        let mut rest = other.terms.iter();
        if let Some((e, c)) = terms.last_mut() {
            if e == lead {
                *c += other.terms[0].1;
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// `w^e * c + rest` where every exponent of `rest` is below `e`.
    fn power_times_plus(e: &Ordinal, c: u64, rest: Ordinal) -> Ordinal {
        if c == 0 {
            return rest;
        }
        let mut terms = vec![(e.clone(), c)];
        terms.extend(rest.terms);
        Ordinal { terms }
    }

    /// For a limit, `self = gamma + w^delta` with `delta >= 1`.
    fn split_last_power(&self) -> (Ordinal, Ordinal) {
        let mut terms = self.terms.clone();
        let (delta, c) = terms.pop().expect("nonzero");
        if c > 1 {
            terms.push((delta.clone(), c - 1));
        }
        (Ordinal { terms }, delta)
    }

    fn strip_prefix(&self, prefix: &Ordinal) -> Option<Ordinal> {
        if self.terms.len() >= prefix.terms.len()
            && self.terms[..prefix.terms.len()] == prefix.terms[..]
        {
            Some(Ordinal { terms: self.terms[prefix.terms.len()..].to_vec() })
        } else {
            None
        }
    }

    fn is_atomic(&self) -> bool {
        self.is_finite() || *self == Self::omega()
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn classify_ordinal(a: &Ordinal) -> Kind {
    a.kind()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if *e != Self::nat(1) {
                if e.is_atomic() {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let o = p.sum()?;
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(o)
    }
}

/// Parses an ordinal literal, reporting errors relative to `offset`.
pub fn parse_at(s: &str, offset: usize) -> Result<Ordinal, ParseError> {
    s.parse::<Ordinal>().map_err(|e| ParseError { pos: e.pos + offset, msg: e.msg })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError { pos: start, msg: "number too large".into() })
    }

    fn sum(&mut self) -> Result<Ordinal, ParseError> {
        let start = self.pos;
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        loop {
            let tpos = self.pos;
            let (e, c) = self.term()?;
            if c == 0 {
                if terms.is_empty() && !matches!(self.peek(), Some(b'+')) {
                    return Ok(Ordinal::zero());
                }
                return Err(ParseError { pos: tpos, msg: "zero term in a sum".into() });
            }
            if let Some((prev, _)) = terms.last() {
                if *prev <= e {
                    return Err(ParseError {
                        pos: tpos,
                        msg: "not in Cantor normal form (exponents must decrease)".into(),
                    });
                }
            }
            terms.push((e, c));
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        debug_assert!(self.pos > start);
        Ok(Ordinal { terms })
    }

    fn term(&mut self) -> Result<(Ordinal, u64), ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => Ok((Ordinal::zero(), self.number()?)),
            Some(b'w') => {
                self.pos += 1;
                let mut e = Ordinal::nat(1);
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let epos = self.pos;
                    e = self.atom()?;
                    if e.is_zero() {
                        return Err(ParseError { pos: epos, msg: "w^0 is written 1".into() });
                    }
                }
                let mut c = 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    let cpos = self.pos;
                    c = self.number()?;
                    if c == 0 {
                        return Err(ParseError { pos: cpos, msg: "coefficient must be positive".into() });
                    }
                }
                Ok((e, c))
            }
            _ => Err(self.err("expected a number or w")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => Ok(Ordinal::nat(self.number()?)),
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b'(') => {
                self.pos += 1;
                let o = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(o)
            }
            _ => Err(self.err("expected an exponent")),
        }
    }
}

/// Bijection between the naturals and the notations below a limit `lambda`.
///
/// Write `lambda = gamma + w^delta`. When `gamma > 0`, even indices enumerate
/// `{a < gamma}` and odd indices enumerate `gamma + {b < w^delta}`. The block
/// `{b < w^delta}` is enumerated by `b = n` for `delta = 1`, by
/// `w^d*c + r <-> pair(c, index(r))` for `delta = d + 1`, and for limit `delta`
/// by `0 <-> 0` and `w^d*c + r <-> pair(index_delta(d), j) + 1` with `j = b - 1`
/// when `d = 0` and `j = pair(c - 1, index(r))` otherwise.
/// Finite ordinals always appear in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    lambda: Ordinal,
}

pub fn enumerate_below(lambda: &Ordinal) -> Result<Enumeration, OrdinalError> {
    if !lambda.is_limit() {
        return Err(OrdinalError::NotLimit(lambda.to_string()));
    }
    Ok(Enumeration { lambda: lambda.clone() })
}

impl Enumeration {
    pub fn bound(&self) -> &Ordinal {
        &self.lambda
    }

    pub fn nth(&self, k: u64) -> Ordinal {
        nth_below(&self.lambda, k)
    }

    pub fn index_of(&self, a: &Ordinal) -> Result<u64, OrdinalError> {
        if *a >= self.lambda {
            return Err(OrdinalError::NotBelow(a.to_string(), self.lambda.to_string()));
        }
        index_below(&self.lambda, a).ok_or(OrdinalError::Overflow)
    }
}

fn nth_below(lambda: &Ordinal, k: u64) -> Ordinal {
    let (gamma, delta) = lambda.split_last_power();
    if gamma.is_zero() {
        nth_power(&delta, k)
    } else if k % 2 == 0 {
        nth_below(&gamma, k / 2)
    } else {
        gamma.add(&nth_power(&delta, k / 2))
    }
}

fn nth_power(delta: &Ordinal, k: u64) -> Ordinal {
    if *delta == Ordinal::nat(1) {
        return Ordinal::nat(k);
    }
    match delta.kind() {
        Kind::Successor(d1) => {
            let (c, j) = unpair_nat(k);
            Ordinal::power_times_plus(&d1, c, nth_power(&d1, j))
        }
        Kind::Limit => {
            if k == 0 {
                return Ordinal::zero();
            }
            let (i, j) = unpair_nat(k - 1);
            let d = nth_below(delta, i);
            if d.is_zero() {
                Ordinal::nat(j + 1)
            } else {
                let (c, m) = unpair_nat(j);
                Ordinal::power_times_plus(&d, c + 1, nth_power(&d, m))
            }
        }
        Kind::Zero => unreachable!("delta >= 1"),
    }
}

fn index_below(lambda: &Ordinal, a: &Ordinal) -> Option<u64> {
    let (gamma, delta) = lambda.split_last_power();
    if gamma.is_zero() {
        index_power(&delta, a)
    } else if *a < gamma {
        index_below(&gamma, a)?.checked_mul(2)
    } else {
        let b = a.strip_prefix(&gamma)?;
        index_power(&delta, &b)?.checked_mul(2)?.checked_add(1)
    }
}

fn index_power(delta: &Ordinal, b: &Ordinal) -> Option<u64> {
    if *delta == Ordinal::nat(1) {
        return b.as_u64();
    }
    match delta.kind() {
        Kind::Successor(d1) => {
            let (c, r) = match b.terms.first() {
                Some((e, c)) if *e == d1 => (*c, Ordinal { terms: b.terms[1..].to_vec() }),
                _ => (0, b.clone()),
            };
            pair_nat_checked(c, index_power(&d1, &r)?)
        }
        Kind::Limit => {
            let Some((d, c)) = b.terms.first() else {
                return Some(0);
            };
            let j = if d.is_zero() {
                c - 1
            } else {
                let r = Ordinal { terms: b.terms[1..].to_vec() };
                pair_nat_checked(c - 1, index_power(d, &r)?)?
            };
            pair_nat_checked(index_below(delta, d)?, j)?.checked_add(1)
        }
        Kind::Zero => None,
    }
}

/// Upper limit on the ordinals a computation may mention. `None` is epsilon_0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cap(pub Option<Ordinal>);

impl Cap {
    pub fn epsilon0() -> Self {
        Cap(None)
    }

    pub fn admits(&self, a: &Ordinal) -> bool {
        self.0.as_ref().map_or(true, |c| a < c)
    }

    /// Reads `HYPERREP_CAP`; unset or empty means epsilon_0.
    pub fn from_env() -> Result<Self, ParseError> {
        match std::env::var("HYPERREP_CAP") {
            Ok(s) if !s.trim().is_empty() => Ok(Cap(Some(s.trim().parse()?))),
            _ => Ok(Cap(None)),
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "e0"),
        }
    }
}
