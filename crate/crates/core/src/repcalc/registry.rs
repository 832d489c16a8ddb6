//! Builtin maps usable in equalizers, coequalizers and retracts.

use std::sync::Arc;

use super::expr::SpaceExpr;
use super::RepError;
use crate::baire::{even_part, odd_part, BairePoint, Fuel, Name, Nat, Source, Stop};
use crate::ordinals::Ordinal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapId {
    Id,
    /// Constant map onto the all-zero name of the space.
    Const0,
    Succ,
    Proj1,
    Proj2,
    PwF,
    PwG,
    /// `x |-> (y |-> top)` into `S^N<a>`.
    Top(Ordinal),
    /// `x |-> (y |-> bottom iff f(y) = x)` into `S^N<a>` for a surjection `f`.
    Fiber(Ordinal),
}

pub fn parse_map(id: &str) -> Result<MapId, RepError> {
    let level = |s: &str| s.parse::<Ordinal>().map_err(|_| RepError::UnknownMap(id.to_string()));
    Ok(match id {
        "id" => MapId::Id,
        "const0" => MapId::Const0,
        "succ" => MapId::Succ,
        "proj1" => MapId::Proj1,
        "proj2" => MapId::Proj2,
        "pw-f" => MapId::PwF,
        "pw-g" => MapId::PwG,
        _ => match id.split_once('@') {
            Some(("top", a)) => MapId::Top(level(a)?),
            Some(("fiber", a)) => MapId::Fiber(level(a)?),
            _ => return Err(RepError::UnknownMap(id.to_string())),
        },
    })
}

/// Codomain of map `id` applied on `dom`, or a signature error.
pub fn codomain(id: &str, dom: &SpaceExpr) -> Result<SpaceExpr, RepError> {
    let map = parse_map(id)?;
    let c = dom.canonical();
    let mismatch = || RepError::Signature(format!("{id} is not defined on {dom}"));
    match map {
        MapId::Id | MapId::Const0 => Ok(dom.clone()),
        MapId::Succ => match c {
            SpaceExpr::Omega | SpaceExpr::Baire => Ok(dom.clone()),
            _ => Err(mismatch()),
        },
        MapId::Proj1 | MapId::Proj2 => match dom {
            SpaceExpr::Prod(a, b) => Ok(if map == MapId::Proj1 { (**a).clone() } else { (**b).clone() }),
            _ => Err(mismatch()),
        },
        MapId::PwF | MapId::PwG => {
            if c == SpaceExpr::POmega.canonical() {
                Ok(SpaceExpr::POmega)
            } else {
                Err(mismatch())
            }
        }
        MapId::Top(a) | MapId::Fiber(a) => {
            if c == SpaceExpr::Baire {
                Ok(SpaceExpr::HyperO(Box::new(SpaceExpr::nk(a))))
            } else {
                Err(mismatch())
            }
        }
    }
}

/// Name-level realizer of a map, for the maps that have one.
pub fn realizer(id: &str) -> Result<Arc<dyn Fn(&Name) -> Name + Send + Sync>, RepError> {
    Ok(match parse_map(id)? {
        MapId::Id => Arc::new(|x: &Name| x.clone()),
        MapId::Const0 => Arc::new(|_: &Name| BairePoint::zeros()),
        MapId::Succ => Arc::new(|x: &Name| Arc::new(Succ(x.clone())) as Name),
        MapId::Proj1 => Arc::new(|x: &Name| even_part(x.clone())),
        MapId::Proj2 => Arc::new(|x: &Name| odd_part(x.clone())),
        MapId::PwF => Arc::new(|x: &Name| Arc::new(PowerMap { input: x.clone(), g: false }) as Name),
        MapId::PwG => Arc::new(|x: &Name| Arc::new(PowerMap { input: x.clone(), g: true }) as Name),
        MapId::Top(_) | MapId::Fiber(_) => return Err(RepError::Unsupported(format!("{id} is symbolic only"))),
    })
}

/// Pointwise successor; on `omega` names this maps `n0^w` to `(n+1)1^w`,
/// which still denotes `n+1` only at the head, so it is used on Baire space.
struct Succ(Name);

impl Source for Succ {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        Ok(self.0.get(i, fuel)?.saturating_add(1))
    }
}

/// The two maps on `P(omega) = S^omega`. A name is a tuple whose component
/// `m` is a Sierpinski name for `m in p`, so `p` contains `m` iff some entry
/// `pair(m, n)` is nonzero. The first map sends `p` to `{}` or `{0}`
/// according to emptiness; the second to `{0, 1}` when `p` has two elements
/// and to `{0}` otherwise.
struct PowerMap {
    input: Name,
    g: bool,
}

impl Source for PowerMap {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let (m, n) = i.unpair();
        let (Some(m), Some(n)) = (m.small(), n.small()) else { return Ok(0) };
        let target = match (self.g, m) {
            (false, 0) => 1,
            (true, 0) => return Ok(1),
            (true, 1) => 2,
            _ => return Ok(0),
        };
        // distinct elements of p witnessed among the first n + 1 entries
        let mut seen: Vec<u64> = Vec::new();
        for j in 0..=n {
            fuel.tick()?;
            if self.input.at(j, fuel)? != 0 {
                let elem = crate::baire::unpair_nat(j).0;
                if !seen.contains(&elem) {
                    seen.push(elem);
                }
                if seen.len() >= target {
                    return Ok(1);
                }
            }
        }
        Ok(0)
    }
}
