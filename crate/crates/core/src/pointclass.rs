//! A finite lattice of pointclasses indexed by ordinals below epsilon_0.
//!
//! Level 0 holds the Borel classes used here. Level `a >= 1` holds
//! `Delta1[a] < Sigma1[a], Pi1[a]`. A limit level `l` additionally holds
//! `SigmaBelow[l]` (the union of all lower levels) and its countable-union
//! and countable-intersection closures, all below `Delta1[l]`. Any class
//! at a lower level is below every class at a higher level.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ordinals::{Ordinal, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pointclass {
    Sigma0(u8),
    Pi0(u8),
    BoolOpen,
    Delta1(Ordinal),
    Sigma1(Ordinal),
    Pi1(Ordinal),
    SigmaBelow(Ordinal),
    SigmaBelowSigma(Ordinal),
    SigmaBelowDelta(Ordinal),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointclassError {
    #[error("unknown pointclass {0:?}")]
    Unknown(String),
    #[error("{0} needs a limit ordinal")]
    NotLimit(String),
    #[error("bad ordinal: {0}")]
    Ordinal(#[from] ParseError),
}

/// Position of a class inside its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    S01,
    P01,
    Bo,
    D,
    S,
    P,
    Sb,
    Sbs,
    Sbd,
}

impl Tag {
    fn up(self) -> &'static [Tag] {
        use Tag::*;
        match self {
            S01 => &[S01, Bo, D, S, P],
            P01 => &[P01, Bo, D, S, P],
            Bo => &[Bo, D, S, P],
            D => &[D, S, P],
            S => &[S],
            P => &[P],
            Sb => &[Sb, Sbs, Sbd, D, S, P],
            Sbs => &[Sbs, D, S, P],
            Sbd => &[Sbd, D, S, P],
        }
    }
}

impl Pointclass {
    /// `Sigma1[a]`, with `Sigma1[0]` read as `Sigma0[2]`.
    pub fn sigma1(a: Ordinal) -> Self {
        if a.is_zero() {
            Pointclass::Sigma0(2)
        } else {
            Pointclass::Sigma1(a)
        }
    }

    /// `Pi1[a]`, with `Pi1[0]` read as `Pi0[2]`.
    pub fn pi1(a: Ordinal) -> Self {
        if a.is_zero() {
            Pointclass::Pi0(2)
        } else {
            Pointclass::Pi1(a)
        }
    }

    pub fn delta1(a: Ordinal) -> Self {
        Pointclass::Delta1(a)
    }

    fn at(level: &Ordinal, tag: Tag) -> Self {
        use Pointclass as C;
        match tag {
            Tag::S01 => C::Sigma0(1),
            Tag::P01 => C::Pi0(1),
            Tag::Bo => C::BoolOpen,
            Tag::D => C::Delta1(level.clone()),
            Tag::S => C::sigma1(level.clone()),
            Tag::P => C::pi1(level.clone()),
            Tag::Sb => C::SigmaBelow(level.clone()),
            Tag::Sbs => C::SigmaBelowSigma(level.clone()),
            Tag::Sbd => C::SigmaBelowDelta(level.clone()),
        }
    }

    fn split(&self) -> (Ordinal, Tag) {
        use Pointclass as C;
        let zero = Ordinal::zero();
        match self {
            C::Sigma0(1) => (zero, Tag::S01),
            C::Pi0(1) => (zero, Tag::P01),
            C::Sigma0(_) => (zero, Tag::S),
            C::Pi0(_) => (zero, Tag::P),
            C::BoolOpen => (zero, Tag::Bo),
            C::Delta1(a) => (a.clone(), Tag::D),
            C::Sigma1(a) => (a.clone(), Tag::S),
            C::Pi1(a) => (a.clone(), Tag::P),
            C::SigmaBelow(a) => (a.clone(), Tag::Sb),
            C::SigmaBelowSigma(a) => (a.clone(), Tag::Sbs),
            C::SigmaBelowDelta(a) => (a.clone(), Tag::Sbd),
        }
    }

    /// Canonical spelling: `Sigma1[0]` is `Sigma0[2]`, `Pi1[0]` is `Pi0[2]`.
    pub fn normalize(&self) -> Pointclass {
        match self {
            Pointclass::Sigma1(a) => Pointclass::sigma1(a.clone()),
            Pointclass::Pi1(a) => Pointclass::pi1(a.clone()),
            other => other.clone(),
        }
    }

    pub fn level(&self) -> Ordinal {
        self.split().0
    }

    pub fn leq(&self, other: &Pointclass) -> bool {
        let (la, ta) = self.split();
        let (lb, tb) = other.split();
        match la.cmp(&lb) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => ta.up().contains(&tb),
        }
    }

    pub fn join(&self, other: &Pointclass) -> Pointclass {
        if self.leq(other) {
            return other.clone();
        }
        if other.leq(self) {
            return self.clone();
        }
        // incomparable classes share a level
        let (level, ta) = self.split();
        let (_, tb) = other.split();
        match (ta, tb) {
            (Tag::S01, Tag::P01) | (Tag::P01, Tag::S01) => Pointclass::BoolOpen,
            (Tag::Sbs, Tag::Sbd) | (Tag::Sbd, Tag::Sbs) => Pointclass::Delta1(level),
            (Tag::S, Tag::P) | (Tag::P, Tag::S) => Pointclass::Delta1(level.succ()),
            _ => unreachable!("every incomparable pair is listed"),
        }
    }

    pub fn join_all<'a>(items: impl IntoIterator<Item = &'a Pointclass>) -> Option<Pointclass> {
        items.into_iter().fold(None, |acc, c| {
            Some(match acc {
                None => c.clone(),
                Some(a) => a.join(c),
            })
        })
    }

    /// Closure under countable unions, countable intersections, projection
    /// along Baire space, co-projection, and the dual class.
    fn ops(&self) -> [Pointclass; 5] {
        use Pointclass as C;
        let one = || Ordinal::nat(1);
        match self {
            C::Sigma0(1) => [C::Sigma0(1), C::Pi0(2), C::Sigma0(1), C::Pi1(one()), C::Pi0(1)],
            C::Pi0(1) => [C::Sigma0(2), C::Pi0(1), C::Sigma1(one()), C::Pi0(1), C::Sigma0(1)],
            C::Sigma0(_) => [C::Sigma0(2), C::Delta1(one()), C::Sigma1(one()), C::Pi1(one()), C::Pi0(2)],
            C::Pi0(_) => [C::Delta1(one()), C::Pi0(2), C::Sigma1(one()), C::Pi1(one()), C::Sigma0(2)],
            C::BoolOpen => [C::Sigma0(2), C::Pi0(2), C::Sigma1(one()), C::Pi1(one()), C::BoolOpen],
            C::Delta1(a) if a.is_zero() => {
                [C::Sigma0(2), C::Pi0(2), C::Sigma1(one()), C::Pi1(one()), self.clone()]
            }
            C::Delta1(a) => [
                self.clone(),
                self.clone(),
                C::Sigma1(a.clone()),
                C::Pi1(a.clone()),
                self.clone(),
            ],
            C::Sigma1(a) => [
                self.clone(),
                self.clone(),
                self.clone(),
                C::Pi1(a.succ()),
                C::Pi1(a.clone()),
            ],
            C::Pi1(a) => [
                self.clone(),
                self.clone(),
                C::Sigma1(a.succ()),
                self.clone(),
                C::Sigma1(a.clone()),
            ],
            C::SigmaBelow(l) => [
                C::SigmaBelowSigma(l.clone()),
                C::SigmaBelowDelta(l.clone()),
                self.clone(),
                self.clone(),
                self.clone(),
            ],
            C::SigmaBelowSigma(l) => [
                self.clone(),
                C::Delta1(l.clone()),
                self.clone(),
                C::Pi1(l.clone()),
                C::SigmaBelowDelta(l.clone()),
            ],
            C::SigmaBelowDelta(l) => [
                C::Delta1(l.clone()),
                self.clone(),
                C::Sigma1(l.clone()),
                self.clone(),
                C::SigmaBelowSigma(l.clone()),
            ],
        }
    }

    fn apply(&self, col: usize) -> Pointclass {
        self.normalize().ops().into_iter().nth(col).unwrap().normalize()
    }

    pub fn close_sigma(&self) -> Pointclass {
        self.apply(0)
    }

    pub fn close_delta(&self) -> Pointclass {
        self.apply(1)
    }

    pub fn exists(&self) -> Pointclass {
        self.apply(2)
    }

    pub fn forall(&self) -> Pointclass {
        self.apply(3)
    }

    pub fn complement(&self) -> Pointclass {
        self.apply(4)
    }

    /// Differences `A \ B` with `A`, `B` in the class.
    pub fn diff(&self) -> Pointclass {
        self.join(&self.complement())
    }

    /// Preimages of class members along a map whose domain is `Pi0[2]`.
    pub fn preimage_pi02(&self) -> Pointclass {
        self.join(&Pointclass::Pi0(2))
    }

    pub fn finite_product(&self, other: &Pointclass) -> Pointclass {
        self.join(other)
    }

    pub fn finite_coproduct(&self, other: &Pointclass) -> Pointclass {
        self.join(other)
    }

    /// Least `a` with `self <= Sigma1[a]`.
    pub fn ms(&self) -> Ordinal {
        let l = self.level();
        if self.leq(&Pointclass::sigma1(l.clone())) {
            l
        } else {
            l.succ()
        }
    }

    /// Least `a` with `self <= Pi1[a]`.
    pub fn mp(&self) -> Ordinal {
        let l = self.level();
        if self.leq(&Pointclass::pi1(l.clone())) {
            l
        } else {
            l.succ()
        }
    }
}

impl fmt::Display for Pointclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Pointclass as C;
        match self {
            C::Sigma0(k) => write!(f, "Sigma0[{k}]"),
            C::Pi0(k) => write!(f, "Pi0[{k}]"),
            C::BoolOpen => write!(f, "BoolOpen"),
            C::Delta1(a) => write!(f, "Delta1[{a}]"),
            C::Sigma1(a) => write!(f, "Sigma1[{a}]"),
            C::Pi1(a) => write!(f, "Pi1[{a}]"),
            C::SigmaBelow(a) => write!(f, "SigmaBelow[{a}]"),
            C::SigmaBelowSigma(a) => write!(f, "SigmaBelowSigma[{a}]"),
            C::SigmaBelowDelta(a) => write!(f, "SigmaBelowDelta[{a}]"),
        }
    }
}

impl FromStr for Pointclass {
    type Err = PointclassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "BoolOpen" {
            return Ok(Pointclass::BoolOpen);
        }
        let (head, rest) = s.split_once('[').ok_or_else(|| PointclassError::Unknown(s.into()))?;
        let arg = rest.strip_suffix(']').ok_or_else(|| PointclassError::Unknown(s.into()))?;
        let rank = || -> Result<u8, PointclassError> {
            match arg {
                "1" => Ok(1),
                "2" => Ok(2),
                _ => Err(PointclassError::Unknown(s.into())),
            }
        };
        let ord = || crate::ordinals::parse_at(arg, head.len() + 1);
        let limit = || -> Result<Ordinal, PointclassError> {
            let a = ord()?;
            if a.is_limit() {
                Ok(a)
            } else {
                Err(PointclassError::NotLimit(s.into()))
            }
        };
        Ok(match head {
            "Sigma0" => Pointclass::Sigma0(rank()?),
            "Pi0" => Pointclass::Pi0(rank()?),
            "Delta1" => Pointclass::Delta1(ord()?),
            "Sigma1" => Pointclass::sigma1(ord()?),
            "Pi1" => Pointclass::pi1(ord()?),
            "SigmaBelow" => Pointclass::SigmaBelow(limit()?),
            "SigmaBelowSigma" => Pointclass::SigmaBelowSigma(limit()?),
            "SigmaBelowDelta" => Pointclass::SigmaBelowDelta(limit()?),
            _ => return Err(PointclassError::Unknown(s.into())),
        })
    }
}

impl Serialize for Pointclass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pointclass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every class at the given levels; limit levels include the `SigmaBelow` family.
pub fn classes_at(levels: &[Ordinal]) -> Vec<Pointclass> {
    let mut out = Vec::new();
    for l in levels {
        let tags: &[Tag] = if l.is_zero() {
            &[Tag::S01, Tag::P01, Tag::Bo, Tag::D, Tag::S, Tag::P]
        } else if l.is_limit() {
            &[Tag::Sb, Tag::Sbs, Tag::Sbd, Tag::D, Tag::S, Tag::P]
        } else {
            &[Tag::D, Tag::S, Tag::P]
        };
        out.extend(tags.iter().map(|t| Pointclass::at(l, *t)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Pointclass {
        s.parse().unwrap()
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "Sigma0[1]", "Pi0[2]", "BoolOpen", "Delta1[0]", "Sigma1[w*2+1]", "Pi1[3]",
            "SigmaBelow[w]", "SigmaBelowSigma[w^2]", "SigmaBelowDelta[w]",
        ] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(c("Sigma1[0]"), Pointclass::Sigma0(2));
        assert!("SigmaBelow[3]".parse::<Pointclass>().is_err());
        assert!("Sigma0[3]".parse::<Pointclass>().is_err());
    }

    #[test]
    fn operation_rows() {
        let row = |s: &str| {
            let x = c(s);
            [x.close_sigma(), x.close_delta(), x.exists(), x.forall(), x.complement()]
                .map(|y| y.to_string())
        };
        assert_eq!(row("Sigma0[1]"), ["Sigma0[1]", "Pi0[2]", "Sigma0[1]", "Pi1[1]", "Pi0[1]"]);
        assert_eq!(row("Pi0[1]"), ["Sigma0[2]", "Pi0[1]", "Sigma1[1]", "Pi0[1]", "Sigma0[1]"]);
        assert_eq!(row("Sigma0[2]"), ["Sigma0[2]", "Delta1[1]", "Sigma1[1]", "Pi1[1]", "Pi0[2]"]);
        assert_eq!(row("Pi0[2]"), ["Delta1[1]", "Pi0[2]", "Sigma1[1]", "Pi1[1]", "Sigma0[2]"]);
        assert_eq!(row("Sigma1[2]"), ["Sigma1[2]", "Sigma1[2]", "Sigma1[2]", "Pi1[3]", "Pi1[2]"]);
        assert_eq!(row("Pi1[w]"), ["Pi1[w]", "Pi1[w]", "Sigma1[w+1]", "Pi1[w]", "Sigma1[w]"]);
        assert_eq!(
            row("SigmaBelow[w]"),
            ["SigmaBelowSigma[w]", "SigmaBelowDelta[w]", "SigmaBelow[w]", "SigmaBelow[w]", "SigmaBelow[w]"]
        );
        assert_eq!(
            row("SigmaBelowSigma[w]"),
            ["SigmaBelowSigma[w]", "Delta1[w]", "SigmaBelowSigma[w]", "Pi1[w]", "SigmaBelowDelta[w]"]
        );
    }

    #[test]
    fn joins_of_incomparables() {
        assert_eq!(c("Sigma0[1]").join(&c("Pi0[1]")), Pointclass::BoolOpen);
        assert_eq!(c("Sigma0[2]").join(&c("Pi0[2]")), c("Delta1[1]"));
        assert_eq!(c("Sigma1[w]").join(&c("Pi1[w]")), c("Delta1[w+1]"));
        assert_eq!(c("SigmaBelowSigma[w]").join(&c("SigmaBelowDelta[w]")), c("Delta1[w]"));
        assert_eq!(c("Pi1[2]").join(&c("SigmaBelow[w]")), c("SigmaBelow[w]"));
    }

    #[test]
    fn lifting_levels() {
        assert_eq!(c("Pi0[2]").ms(), Ordinal::nat(1));
        assert_eq!(c("Pi0[2]").mp(), Ordinal::zero());
        assert_eq!(c("Pi1[3]").ms(), Ordinal::nat(4));
        assert_eq!(c("Delta1[0]").ms(), Ordinal::zero());
        assert_eq!(c("SigmaBelowDelta[w]").mp(), Ordinal::omega());
    }
}
