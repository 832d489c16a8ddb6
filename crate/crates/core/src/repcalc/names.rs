//! Name-level combinators behind the bound rules.

use std::sync::Arc;

use serde::Serialize;

use super::expr::SpaceExpr;
use super::RepError;
use crate::baire::{
    cons, curry_universal, encode_strategy, pair_points, prefix_of, tail, universal_apply, unpair_points, Fuel, Name,
    Stop, Strategy,
};

pub fn pair(x: Name, y: Name) -> Name {
    pair_points(x, y)
}

pub fn unpair(z: Name) -> (Name, Name) {
    unpair_points(z)
}

/// Name of `x` in summand `k` of a countable coproduct.
pub fn inject(k: u64, x: Name) -> Name {
    cons(k, x)
}

/// Summand tag and component name.
pub fn case(q: &Name, fuel: &mut Fuel) -> Result<(u64, Name), Stop> {
    tail(q, fuel)
}

/// Applies an exponential name (an associate) to an argument name.
pub fn apply(p: Name, x: Name) -> Name {
    universal_apply(p, x)
}

/// The associate of `p |-> (q |-> F<p, q>)`.
pub fn curry(f: Arc<dyn Strategy>) -> Name {
    encode_strategy(curry_universal(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sierpinski {
    /// A nonzero entry was found at this index.
    Top { at: u64 },
    /// No nonzero entry within the window; the name may still denote top.
    BottomSoFar,
}

/// `0^w` denotes bottom, any name with a nonzero entry denotes top.
pub fn sierpinski_state(p: &Name, window: u64, fuel: &mut Fuel) -> Result<Sierpinski, Stop> {
    for i in 0..window {
        if p.at(i, fuel)? != 0 {
            return Ok(Sierpinski::Top { at: i });
        }
    }
    Ok(Sierpinski::BottomSoFar)
}

/// `e([x])(h) = h(x)`: the point of `S^(S^X)` given by an `X`-name, as a
/// map on names of opens `h`.
pub fn t0_embed(x: Name) -> impl Fn(&Name) -> Name {
    move |h: &Name| universal_apply(h.clone(), x.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decoded {
    Number { value: u64 },
    Prefix { values: Vec<u64> },
    Sierpinski { state: Sierpinski },
}

/// Reads the point a name denotes, for the atoms with a name calculus.
pub fn decode(space: &SpaceExpr, x: &Name, window: u64, fuel: &mut Fuel) -> Result<Decoded, RepError> {
    let stopped = |s: Stop| RepError::Unsupported(format!("evaluation stopped: {s}"));
    match space.canonical() {
        SpaceExpr::Omega => Ok(Decoded::Number { value: x.at(0, fuel).map_err(stopped)? }),
        SpaceExpr::Baire => Ok(Decoded::Prefix { values: prefix_of(x, window, fuel).map_err(stopped)? }),
        SpaceExpr::Sierpinski => Ok(Decoded::Sierpinski { state: sierpinski_state(x, window, fuel).map_err(stopped)? }),
        SpaceExpr::Reals | SpaceExpr::Rk(_) => {
            Err(RepError::Unsupported("name-level evaluation on reals has no name calculus".into()))
        }
        other => Err(RepError::Unsupported(format!("no atom decoder for {other}"))),
    }
}
