//! Seeded sample points, probe arguments and extensional comparison of
//! names, for round-trip checks.

use std::sync::Arc;

use super::fun::{apply_fun, associate, base_point, fun, GUARD};
use crate::baire::{delta0, even_part, odd_part, pair_points, project, tuple_points, BairePoint, Fuel, Name, Stop};
use crate::ordinals::{enumerate_below, Kind, Ordinal};
use crate::repcalc::SpaceExpr;

/// The spaces homeomorphisms act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Level(Ordinal),
    Prod(Box<Space>, Box<Space>),
    /// `N<c+1>^N<b>` with points given uncurried: an associate of a
    /// functional on names `<y, x>`, `y` in `N<b>` and `x` in `N<c>`.
    Uncurried { c: Ordinal, b: Ordinal },
}

impl Space {
    pub fn prod(a: Space, b: Space) -> Space {
        Space::Prod(Box::new(a), Box::new(b))
    }

    pub fn expr(&self) -> SpaceExpr {
        match self {
            Space::Level(a) => SpaceExpr::nk(a.clone()),
            Space::Prod(a, b) => SpaceExpr::prod(a.expr(), b.expr()),
            Space::Uncurried { c, b } => SpaceExpr::exp(SpaceExpr::nk(c.succ()), SpaceExpr::nk(b.clone())),
        }
    }
}

/// Components compared for points of a limit level.
const LIMIT_COMPONENTS: u64 = 6;
/// Probe arguments besides the base point.
const PROBES: u64 = GUARD as u64 - 1;

/// A fixed 64-bit mixing function (splitmix64 finalizer).
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A number read off a point of `N<a>`; different `k` look at different parts.
pub fn observe(a: &Ordinal, x: &Name, k: u64, fuel: &mut Fuel) -> Result<u64, Stop> {
    match a.kind() {
        Kind::Zero => x.at(0, fuel),
        Kind::Successor(p) if p.is_zero() => x.at(k % 8, fuel),
        Kind::Successor(p) => apply_fun(x, &probe(&p, k), fuel),
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            let m = k % 3;
            observe(&e.nth(m), &project(x.clone(), m), k / 3, fuel)
        }
    }
}

/// The `k`-th probe argument in `N<a>`.
pub fn probe(a: &Ordinal, k: u64) -> Name {
    match a.kind() {
        Kind::Zero => delta0(k % 16),
        Kind::Successor(p) if p.is_zero() => BairePoint::from_fn(move |i| mix(k, i) % 5),
        Kind::Successor(p) => associate(fun(move |x, fuel| Ok((observe(&p, x, k, fuel)? + k) % 5))),
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            tuple_points(Arc::new(move |m| probe(&e.nth(m), k)))
        }
    }
}

fn sample_level(a: &Ordinal, seed: u64) -> Name {
    match a.kind() {
        Kind::Zero => delta0(seed % 64),
        Kind::Successor(p) if p.is_zero() => BairePoint::from_fn(move |i| mix(seed, i) % 8),
        Kind::Successor(p) => {
            let (i, j) = (seed % 4, (seed / 4) % 4);
            associate(fun(move |x, fuel| {
                let u = observe(&p, x, i, fuel)?;
                let v = observe(&p, x, j, fuel)?;
                Ok(mix(seed, mix(u, v)) % 8)
            }))
        }
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            tuple_points(Arc::new(move |m| sample_level(&e.nth(m), mix(seed, m))))
        }
    }
}

/// A pseudo-random point of `space` determined by `seed`.
pub fn sample(space: &Space, seed: u64) -> Name {
    match space {
        Space::Level(a) => sample_level(a, seed),
        Space::Prod(l, r) => pair_points(sample(l, mix(seed, 1)), sample(r, mix(seed, 2))),
        Space::Uncurried { c, b } => {
            let (c, b) = (c.clone(), b.clone());
            let (i, j) = (seed % 4, (seed / 4) % 4);
            associate(fun(move |z, fuel| {
                let u = observe(&b, &even_part(z.clone()), i, fuel)?;
                let v = observe(&c, &odd_part(z.clone()), j, fuel)?;
                Ok(mix(seed, mix(u, v)) % 8)
            }))
        }
    }
}

/// Arguments on which functionals are compared: the base point, then probes.
fn arguments(a: &Ordinal) -> Vec<Name> {
    std::iter::once(base_point(a)).chain((0..PROBES).map(|k| probe(a, k))).collect()
}

fn same_level(a: &Ordinal, x: &Name, y: &Name, fuel: &mut Fuel) -> Result<bool, Stop> {
    match a.kind() {
        Kind::Zero => Ok(x.at(0, fuel)? == y.at(0, fuel)?),
        Kind::Successor(p) if p.is_zero() => {
            for i in 0..GUARD as u64 {
                if x.at(i, fuel)? != y.at(i, fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Kind::Successor(p) => {
            for t in arguments(&p) {
                if apply_fun(x, &t, fuel)? != apply_fun(y, &t, fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            for m in 0..LIMIT_COMPONENTS {
                if !same_level(&e.nth(m), &project(x.clone(), m), &project(y.clone(), m), fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Whether `x` and `y` name the same point, as far as the probes see.
pub fn same_point(space: &Space, x: &Name, y: &Name, fuel: &mut Fuel) -> Result<bool, Stop> {
    match space {
        Space::Level(a) => same_level(a, x, y, fuel),
        Space::Prod(l, r) => Ok(same_point(l, &even_part(x.clone()), &even_part(y.clone()), fuel)?
            && same_point(r, &odd_part(x.clone()), &odd_part(y.clone()), fuel)?),
        Space::Uncurried { c, b } => {
            let ys = arguments(b);
            let xs = arguments(c);
            for (s, t) in ys.into_iter().zip(xs) {
                let arg = pair_points(s, t);
                if apply_fun(x, &arg, fuel)? != apply_fun(y, &arg, fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn samples_equal_themselves_and_differ_from_others() {
        for s in [
            Space::Level(o("0")),
            Space::Level(o("1")),
            Space::Level(o("2")),
            Space::Level(o("3")),
            Space::Level(o("w")),
            Space::prod(Space::Level(o("1")), Space::Level(o("2"))),
            Space::Uncurried { c: o("1"), b: o("0") },
        ] {
            let mut fuel = Fuel::new(1_000_000);
            let x = sample(&s, 11);
            assert!(same_point(&s, &x, &x, &mut fuel).unwrap(), "{s:?}");
            let distinct = (0..6).filter(|k| !same_point(&s, &x, &sample(&s, 100 + k), &mut fuel).unwrap()).count();
            assert!(distinct >= 4, "{s:?}: only {distinct} of 6 samples differ");
        }
    }

    #[test]
    fn mixing_is_fixed() {
        assert_eq!(mix(0, 0), mix(0, 0));
        assert_ne!(mix(0, 1), mix(1, 0));
    }
}
