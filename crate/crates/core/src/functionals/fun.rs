//! Names of points of `N<a>` and the maps between names and functionals.
//!
//! `N<0>` is named by `n0^w`, `N<1>` by itself, `N<a+1>` for `a >= 1` by an
//! associate (index 0 carries the value, the rest is zero), and `N<l>` for
//! limit `l` by the tuple of its components in enumeration order.

use std::sync::Arc;

use serde::Serialize;

use super::FunError;
use crate::baire::{
    delta0, eval_index, eval_universal, seq_decode, tuple_points, BairePoint, EvalOutcome, Fuel, Functional, Name,
    Nat, PrefixSource, Source, Stop,
};
use crate::ordinals::{enumerate_below, Cap, Kind, Ordinal};
use crate::repcalc::{Classifier, Family, Representation, SpaceExpr, Tower};

pub type Fun = Functional;

pub fn fun(f: impl Fn(&Name, &mut Fuel) -> Result<u64, Stop> + Send + Sync + 'static) -> Fun {
    Arc::new(f)
}

struct Lazy(Box<dyn Fn(&Nat, &mut Fuel) -> Result<u64, Stop> + Send + Sync>);

impl Source for Lazy {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        (self.0)(i, fuel)
    }
}

/// A name whose entries are computed on demand with the caller's fuel.
pub fn lazy_name(f: impl Fn(&Nat, &mut Fuel) -> Result<u64, Stop> + Send + Sync + 'static) -> Name {
    Arc::new(Lazy(Box::new(f)))
}

/// `v0^w`, with `v` read on demand.
pub fn lazy_delta0(v: impl Fn(&mut Fuel) -> Result<u64, Stop> + Send + Sync + 'static) -> Name {
    lazy_name(move |i, fuel| if i.is_zero() { v(fuel) } else { Ok(0) })
}

/// Name of `f: omega -> omega` as the sequence of its values.
struct FunSequence(Fun);

impl Source for FunSequence {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let n = i.small().ok_or(Stop::Exhausted)?;
        (self.0)(&delta0(n), fuel)
    }
}

/// Associate of a functional. At `pair(0, code(s))` it answers `f(x) + 1`
/// once `f` is decided by the prefix `s`, and 0 before that; every other
/// output index answers 0.
struct FunAssociate(Fun);

impl Source for FunAssociate {
    fn get(&self, c: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let (n, code) = c.unpair();
        if !n.is_zero() {
            return Ok(1);
        }
        let Some(sigma) = seq_decode(&code) else { return Ok(0) };
        let x: Name = Arc::new(PrefixSource(sigma));
        match (self.0)(&x, fuel) {
            Ok(v) => Ok(v.saturating_add(1)),
            Err(Stop::Short) => Ok(0),
            Err(e) => Err(e),
        }
    }

    fn functional(&self) -> Option<Functional> {
        Some(self.0.clone())
    }
}

/// The associate name of `f`, carrying `f` for direct application.
pub fn associate(f: Fun) -> Name {
    Arc::new(FunAssociate(f))
}

/// Name in `N<level>` of the functional `f`, for a successor `level`.
pub fn realize(level: &Ordinal, f: Fun) -> Name {
    if *level == Ordinal::nat(1) {
        Arc::new(FunSequence(f))
    } else {
        associate(f)
    }
}

/// Applies an associate name to an argument name, directly when the name
/// carries its functional.
pub fn apply_fun(p: &Name, x: &Name, fuel: &mut Fuel) -> Result<u64, Stop> {
    match p.functional() {
        Some(f) => {
            fuel.tick()?;
            f(x, fuel)
        }
        None => eval_index(p, x, &Nat::Small(0), fuel),
    }
}

/// The functional named by `p` in `N<level>`, for a successor `level`.
pub fn as_fun(level: &Ordinal, p: Name) -> Fun {
    if *level == Ordinal::nat(1) {
        fun(move |x, fuel| {
            let n = x.at(0, fuel)?;
            p.at(n, fuel)
        })
    } else {
        fun(move |x, fuel| apply_fun(&p, x, fuel))
    }
}

/// The everywhere-zero point of `N<a>`.
pub fn base_point(a: &Ordinal) -> Name {
    match a.kind() {
        Kind::Zero => BairePoint::zeros(),
        Kind::Successor(p) if p.is_zero() => BairePoint::zeros(),
        Kind::Successor(_) => associate(fun(|_, _| Ok(0))),
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            tuple_points(Arc::new(move |m| base_point(&e.nth(m))))
        }
    }
}

pub struct FunctionalSpace {
    pub level: Ordinal,
    pub expr: SpaceExpr,
    pub rep: Representation,
}

/// `N<0> = omega`, `N<a+1> = omega^N<a>`, `N<l> = prod_{a<l} N<a>`.
pub fn build_space(level: &Ordinal, cap: &Cap) -> Result<FunctionalSpace, crate::repcalc::RepError> {
    let expr = match level.kind() {
        Kind::Zero => SpaceExpr::Omega,
        Kind::Successor(p) => SpaceExpr::exp(SpaceExpr::Omega, SpaceExpr::nk(p)),
        Kind::Limit => SpaceExpr::ProdOmega(Family::Below(level.clone(), Tower::Nk)),
    };
    let classifier = Classifier::new(crate::repcalc::AtomTable::standard(), cap.clone());
    let rep = classifier.rep(&expr)?;
    Ok(FunctionalSpace { level: level.clone(), expr, rep })
}

/// Entries after the head that must be zero in a decoded output.
pub const GUARD: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FunOutcome {
    Value { value: u64 },
    Exhausted { spent: u64 },
    /// The argument name ran out before the value was decided.
    Short,
    Inconsistent { index: u64, first: u64, second: u64 },
    /// The output had a nonzero entry after the head.
    Malformed { index: u64, value: u64 },
}

/// `f(x)` for `f` named in `N<level>`, `level` a successor.
pub fn eval_functional(f: &Name, level: &Ordinal, x: &Name, fuel: &mut Fuel) -> Result<FunOutcome, FunError> {
    let stopped = |s: Stop, fuel: &Fuel| match s {
        Stop::Exhausted => FunOutcome::Exhausted { spent: fuel.spent },
        Stop::Short => FunOutcome::Short,
        Stop::Inconsistent { index, first, second } => FunOutcome::Inconsistent { index, first, second },
    };
    match level.kind() {
        Kind::Successor(p) if p.is_zero() => {
            let r = x.at(0, fuel).and_then(|n| f.at(n, fuel));
            Ok(r.map_or_else(|s| stopped(s, fuel), |value| FunOutcome::Value { value }))
        }
        Kind::Successor(_) => Ok(match eval_universal(f, x, 1 + GUARD, fuel) {
            EvalOutcome::Determined { values } => match values.iter().enumerate().skip(1).find(|(_, v)| **v != 0) {
                Some((i, v)) => FunOutcome::Malformed { index: i as u64, value: *v },
                None => FunOutcome::Value { value: values[0] },
            },
            EvalOutcome::Exhausted { spent, .. } => FunOutcome::Exhausted { spent },
            EvalOutcome::Short { .. } => FunOutcome::Short,
            EvalOutcome::Inconsistent { index, first, second } => FunOutcome::Inconsistent { index, first, second },
        }),
        _ => Err(FunError::Unsupported {
            missing: "successor-level".into(),
            what: format!("evaluation at level {level}"),
        }),
    }
}
