//! Executable homeomorphisms between the spaces `N<a>`, as maps on names,
//! and a seeded round-trip check for them.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fun::{apply_fun, as_fun, associate, base_point, fun, lazy_delta0, lazy_name, realize};
use super::plan::{exponent_plan, product_plan, retract_plan, ExponentPlan, ProductPlan, RetractPlan};
use super::sample::{sample, same_point, Space};
use super::FunError;
use crate::baire::{
    delta0, even_part, odd_part, pair_nat_checked, pair_points, prefix_of, project, tuple_points, unpair_nat, Fuel,
    Name, Stop,
};
use crate::ordinals::{enumerate_below, Kind, Ordinal};

pub type NameMap = Arc<dyn Fn(&Name) -> Name + Send + Sync>;

fn map(f: impl Fn(&Name) -> Name + Send + Sync + 'static) -> NameMap {
    Arc::new(f)
}

#[derive(Clone)]
pub struct Homeo {
    pub source: Space,
    pub target: Space,
    pub forward: NameMap,
    pub backward: NameMap,
    pub provenance: Vec<String>,
}

fn split(z: &Name) -> (Name, Name) {
    (even_part(z.clone()), odd_part(z.clone()))
}

/// A value computed on first successful use and kept.
#[derive(Default)]
struct Once(OnceLock<u64>);

impl Once {
    fn get(&self, fuel: &mut Fuel, f: impl FnOnce(&mut Fuel) -> Result<u64, Stop>) -> Result<u64, Stop> {
        if let Some(v) = self.0.get() {
            return Ok(*v);
        }
        let v = f(fuel)?;
        Ok(*self.0.get_or_init(|| v))
    }
}

/// Exchanges the values `a` and `b`, fixes everything else.
fn exchange(v: u64, a: u64, b: u64) -> u64 {
    if v == a {
        b
    } else if v == b {
        a
    } else {
        v
    }
}

/// `omega x N<a> ~ N<a>` for `a = 0` or a successor.
///
/// At a successor, with `x0` the base point of `N<a-1>`:
/// `(n, f) |-> f` with the values `f(x0)` and `<n, f(x0)>` exchanged.
fn swap(a: &Ordinal) -> Homeo {
    let source = Space::prod(Space::Level(Ordinal::zero()), Space::Level(a.clone()));
    let target = Space::Level(a.clone());
    let provenance = vec![format!("swap@a={a}")];
    let Kind::Successor(p) = a.kind() else {
        let forward = map(|z| {
            let (x, y) = split(z);
            lazy_delta0(move |fuel| pair_nat_checked(x.at(0, fuel)?, y.at(0, fuel)?).ok_or(Stop::Exhausted))
        });
        let backward = map(|k| {
            let (k1, k2) = (k.clone(), k.clone());
            pair_points(
                lazy_delta0(move |fuel| Ok(unpair_nat(k1.at(0, fuel)?).0)),
                lazy_delta0(move |fuel| Ok(unpair_nat(k2.at(0, fuel)?).1)),
            )
        });
        return Homeo { source, target, forward, backward, provenance };
    };
    let x0 = base_point(&p);
    let (level, level2) = (a.clone(), a.clone());
    let x0b = x0.clone();
    let forward = map(move |z| {
        let (n, f) = split(z);
        let f = as_fun(&level, f);
        let (x0, fx0) = (x0.clone(), Once::default());
        realize(
            &level,
            fun(move |x, fuel| {
                let b = fx0.get(fuel, |fuel| f(&x0, fuel))?;
                let a = pair_nat_checked(n.at(0, fuel)?, b).ok_or(Stop::Exhausted)?;
                Ok(exchange(f(x, fuel)?, a, b))
            }),
        )
    });
    let backward = map(move |g| {
        let g = as_fun(&level2, g.clone());
        let (g1, x1, x2) = (g.clone(), x0b.clone(), x0b.clone());
        let gx0 = Arc::new(Once::default());
        let gx1 = gx0.clone();
        let n = lazy_delta0(move |fuel| Ok(unpair_nat(gx1.get(fuel, |fuel| g1(&x1, fuel))?).0));
        let f = realize(
            &level2,
            fun(move |x, fuel| {
                let a = gx0.get(fuel, |fuel| g(&x2, fuel))?;
                Ok(exchange(g(x, fuel)?, unpair_nat(a).1, a))
            }),
        );
        pair_points(n, f)
    });
    Homeo { source, target, forward, backward, provenance }
}

/// `N<a> x N<a> ~ N<a>`: pointwise pairing of values, componentwise at limits.
fn self_product(a: &Ordinal) -> Homeo {
    let source = Space::prod(Space::Level(a.clone()), Space::Level(a.clone()));
    let target = Space::Level(a.clone());
    let provenance = vec![format!("square@a={a}")];
    let (forward, backward) = match a.kind() {
        Kind::Zero => {
            let s = swap(a);
            (s.forward, s.backward)
        }
        Kind::Successor(_) => {
            let (l1, l2) = (a.clone(), a.clone());
            let forward = map(move |z| {
                let (x, y) = split(z);
                let (f, g) = (as_fun(&l1, x), as_fun(&l1, y));
                realize(&l1, fun(move |t, fuel| pair_nat_checked(f(t, fuel)?, g(t, fuel)?).ok_or(Stop::Exhausted)))
            });
            let backward = map(move |h| {
                let h = as_fun(&l2, h.clone());
                let h2 = h.clone();
                pair_points(
                    realize(&l2, fun(move |t, fuel| Ok(unpair_nat(h(t, fuel)?).0))),
                    realize(&l2, fun(move |t, fuel| Ok(unpair_nat(h2(t, fuel)?).1))),
                )
            });
            (forward, backward)
        }
        Kind::Limit => {
            let e = enumerate_below(a).expect("limit");
            let e2 = e.clone();
            let forward = map(move |z| {
                let (x, y) = split(z);
                let e = e.clone();
                tuple_points(Arc::new(move |m| {
                    let c = self_product(&e.nth(m));
                    (c.forward)(&pair_points(project(x.clone(), m), project(y.clone(), m)))
                }))
            });
            let backward = map(move |t| {
                let (t1, t2, ea, eb) = (t.clone(), t.clone(), e2.clone(), e2.clone());
                pair_points(
                    tuple_points(Arc::new(move |m| even_part((self_product(&ea.nth(m)).backward)(&project(t1.clone(), m))))),
                    tuple_points(Arc::new(move |m| odd_part((self_product(&eb.nth(m)).backward)(&project(t2.clone(), m))))),
                )
            });
            (forward, backward)
        }
    };
    Homeo { source, target, forward, backward, provenance }
}

/// `N<p+1> x N<b+1> ~ N<b+1>` from `W: N<p> x N<b> ~ N<b>`: curry both
/// coordinates over `x`, pair them with the swap at `b+1`, uncurry back.
fn lift(p: &Ordinal, b: &Ordinal, w: Homeo, provenance: Vec<String>) -> Homeo {
    let (a1, b1) = (p.succ(), b.succ());
    let source = Space::prod(Space::Level(a1.clone()), Space::Level(b1.clone()));
    let target = Space::Level(b1.clone());
    let sw = swap(&b1);
    let (wf, wb) = (w.forward.clone(), w.backward.clone());

    let forward = {
        let (a1, b1, wf, wb, phi) = (a1.clone(), b1.clone(), wf.clone(), wb.clone(), sw.forward.clone());
        map(move |z| {
            let (fz, gz) = split(z);
            let f = as_fun(&a1, fz);
            let g = as_fun(&b1, gz);
            let (b1, wf, wb, phi) = (b1.clone(), wf.clone(), wb.clone(), phi.clone());
            realize(
                &b1.clone(),
                fun(move |yy, fuel| {
                    let (x, y) = split(&wb(yy));
                    let fx = f(&x, fuel)?;
                    let (g, wf) = (g.clone(), wf.clone());
                    let column = realize(&b1, fun(move |y2, fuel| g(&wf(&pair_points(x.clone(), y2.clone())), fuel)));
                    let out = phi(&pair_points(delta0(fx), column));
                    as_fun(&b1, out)(&y, fuel)
                }),
            )
        })
    };

    let backward = {
        let psi = sw.backward.clone();
        map(move |hz| {
            let h = as_fun(&b1, hz.clone());
            let (b1c, wf, psi) = (b1.clone(), wf.clone(), psi.clone());
            // psi_{b+1}(y |-> h(W(x, y)))
            let column: Arc<dyn Fn(Name) -> Name + Send + Sync> = Arc::new(move |x: Name| {
                let (h, wf) = (h.clone(), wf.clone());
                psi(&realize(&b1c, fun(move |y, fuel| h(&wf(&pair_points(x.clone(), y.clone())), fuel))))
            });
            let c1 = column.clone();
            let f = realize(&a1, fun(move |x, fuel| even_part(c1(x.clone())).at(0, fuel)));
            let (b1c, wb) = (b1.clone(), wb.clone());
            let g = realize(
                &b1,
                fun(move |z, fuel| {
                    let (x, y) = split(&wb(z));
                    as_fun(&b1c, odd_part(column(x)))(&y, fuel)
                }),
            );
            pair_points(f, g)
        })
    };
    Homeo { source, target, forward, backward, provenance }
}

/// `N<a> x N<b> ~ N<b>` from `V: N<b-1> x N<b> ~ N<b>` and
/// `R: N<a> x N<b-1> ~ N<b-1>`: `(x, y) |-> V(R(x, u), v)` for `(u, v) = V^-1(y)`.
fn chain(a: &Ordinal, b: &Ordinal, v: Homeo, r: Homeo, provenance: Vec<String>) -> Homeo {
    let source = Space::prod(Space::Level(a.clone()), Space::Level(b.clone()));
    let target = Space::Level(b.clone());
    let (vf, vb, rf, rb) = (v.forward, v.backward, r.forward, r.backward);
    let (vf2, vb2) = (vf.clone(), vb.clone());
    let forward = map(move |z| {
        let (x, y) = split(z);
        let (u, w) = split(&vb(&y));
        vf(&pair_points(rf(&pair_points(x, u)), w))
    });
    let backward = map(move |t| {
        let (s, w) = split(&vb2(t));
        let (x, u) = split(&rb(&s));
        pair_points(x, vf2(&pair_points(u, w)))
    });
    Homeo { source, target, forward, backward, provenance }
}

/// `N<a> x N<l> ~ N<l>` for limit `l > a`, merging into the `N<a>` component.
fn absorb(a: &Ordinal, limit: &Ordinal, c: Homeo, provenance: Vec<String>) -> Homeo {
    let source = Space::prod(Space::Level(a.clone()), Space::Level(limit.clone()));
    let target = Space::Level(limit.clone());
    let m = enumerate_below(limit).expect("limit").index_of(a).expect("a below the limit");
    let (cf, cb) = (c.forward, c.backward);
    let forward = map(move |z| {
        let (x, t) = split(z);
        let merged = cf(&pair_points(x, project(t.clone(), m)));
        tuple_points(Arc::new(move |j| if j == m { merged.clone() } else { project(t.clone(), j) }))
    });
    let backward = map(move |t| {
        let (x, y) = split(&cb(&project(t.clone(), m)));
        let t = t.clone();
        pair_points(x, tuple_points(Arc::new(move |j| if j == m { y.clone() } else { project(t.clone(), j) })))
    });
    Homeo { source, target, forward, backward, provenance }
}

fn from_plan(plan: &ProductPlan) -> Homeo {
    let provenance = plan.provenance();
    match plan {
        ProductPlan::Swap(a) => swap(a),
        ProductPlan::SelfProduct(a) => self_product(a),
        ProductPlan::Lift(a, inner) => lift(&a.pred().expect("lift at a successor"), a, from_plan(inner), provenance),
        ProductPlan::Chain { a, k, step, rest } => chain(a, &a.add_nat(*k), from_plan(step), from_plan(rest), provenance),
        ProductPlan::Absorb { a, limit, inner } => absorb(a, limit, from_plan(inner), provenance),
    }
}

/// `N<a> x N<b> ~ N<b>` for `a <= b`.
pub fn homeo_product(a: &Ordinal, b: &Ordinal) -> Result<Homeo, FunError> {
    Ok(from_plan(&product_plan(a, b)?))
}

/// `omega x N<a> ~ N<a>` for `a = 0` or a successor.
pub fn homeo_swap(a: &Ordinal) -> Result<Homeo, FunError> {
    if a.is_limit() {
        return Err(FunError::Unsupported { missing: "swap-at-limit".into(), what: format!("omega x N<{a}>") });
    }
    Ok(swap(a))
}

/// `N<a>^N<b> ~ N<max(a, b+1)>`.
pub fn homeo_exponent(a: &Ordinal, b: &Ordinal) -> Result<Homeo, FunError> {
    let plan = exponent_plan(a, b)?;
    let provenance = plan.provenance();
    match plan {
        ExponentPlan::Definition(b) => {
            let s = Space::Level(b.succ());
            Ok(Homeo { source: s.clone(), target: s, forward: map(Name::clone), backward: map(Name::clone), provenance })
        }
        ExponentPlan::Uncurry { c, b, merge, swapped } => {
            let w = from_plan(&merge);
            let top = if swapped { b.clone() } else { c.clone() }.succ();
            let source = Space::Uncurried { c, b };
            let target = Space::Level(top.clone());
            // W works on <p, q> with p the smaller level; the uncurried point wants <y, x>.
            let arrange = move |p: Name, q: Name| if swapped { pair_points(q, p) } else { pair_points(p, q) };
            let (wf, wb) = (w.forward, w.backward);
            let forward = {
                let top = top.clone();
                map(move |big| {
                    let (big, wb) = (big.clone(), wb.clone());
                    realize(
                        &top,
                        fun(move |z, fuel| {
                            let (p, q) = split(&wb(z));
                            apply_fun(&big, &arrange(p, q), fuel)
                        }),
                    )
                })
            };
            let backward = map(move |h| {
                let h = as_fun(&top, h.clone());
                let wf = wf.clone();
                associate(fun(move |yx, fuel| {
                    let (y, x) = split(yx);
                    let z = if swapped { wf(&pair_points(x, y)) } else { wf(&pair_points(y, x)) };
                    h(&z, fuel)
                }))
            });
            Ok(Homeo { source, target, forward, backward, provenance })
        }
    }
}

/// `N<a>` as a retract of `N<b>`, `a < b`: `section` then `retraction` is
/// the identity on `N<a>`.
#[derive(Clone)]
pub struct Retraction {
    pub source: Space,
    pub target: Space,
    pub section: NameMap,
    pub retraction: NameMap,
    pub provenance: Vec<String>,
}

pub fn retract_witness(a: &Ordinal, b: &Ordinal) -> Result<Retraction, FunError> {
    let plan = retract_plan(a, b)?;
    let (source, target) = (Space::Level(a.clone()), Space::Level(b.clone()));
    let (section, retraction, provenance) = match plan {
        RetractPlan::Constant => (
            map(|x| {
                let x = x.clone();
                lazy_name(move |_, fuel| x.at(0, fuel))
            }),
            map(|y| {
                let y = y.clone();
                lazy_delta0(move |fuel| y.at(0, fuel))
            }),
            vec!["retract@const".to_string()],
        ),
        RetractPlan::Compose => (
            map(|x| {
                let x = x.clone();
                realize(&Ordinal::nat(2), fun(move |y, fuel| x.at(y.at(0, fuel)?, fuel)))
            }),
            map(|f| {
                let f = f.clone();
                lazy_name(move |i, fuel| apply_fun(&f, &delta0(i.small().ok_or(Stop::Exhausted)?), fuel))
            }),
            vec!["retract@compose".to_string()],
        ),
        RetractPlan::Product(plan) => {
            let w = from_plan(&plan);
            let base = base_point(b);
            let (wf, wb) = (w.forward, w.backward);
            (
                map(move |x| wf(&pair_points(x.clone(), base.clone()))),
                map(move |y| even_part(wb(y))),
                plan.provenance(),
            )
        }
    };
    Ok(Retraction { source, target, section, retraction, provenance })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sample: usize,
    /// `backward-forward` or `forward-backward`.
    pub direction: String,
    /// First entries of the failing sample's name.
    pub prefix: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub source: String,
    pub target: String,
    pub provenance: Vec<String>,
    pub samples: usize,
    pub determined: usize,
    pub passed: usize,
    pub undetermined: usize,
    pub first_failure: Option<Failure>,
    /// Every determined sample passed.
    pub ok: bool,
}

fn shown(x: &Name, fuel: u64) -> Vec<u64> {
    prefix_of(x, 8, &mut Fuel::new(fuel)).unwrap_or_default()
}

type Check<'a> = (&'a Space, &'a NameMap, &'a NameMap, &'static str);

fn round_trip(
    source: &Space,
    target: &Space,
    provenance: &[String],
    checks: &[Check<'_>],
    samples: usize,
    seed: u64,
    fuel: u64,
) -> RoundTrip {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut determined, mut passed, mut first_failure) = (0, 0, None);
    for i in 0..samples {
        let s: u64 = rng.gen();
        let mut budget = Fuel::new(fuel);
        let mut verdict = Ok(None);
        for (k, (space, there, back, direction)) in checks.iter().enumerate() {
            let x = sample(space, s ^ k as u64);
            match same_point(space, &x, &back(&there(&x)), &mut budget) {
                Ok(true) => {}
                Ok(false) => {
                    verdict = Ok(Some(Failure { sample: i, direction: direction.to_string(), prefix: shown(&x, fuel) }));
                    break;
                }
                Err(e) => {
                    verdict = Err(e);
                    break;
                }
            }
        }
        match verdict {
            Ok(None) => {
                determined += 1;
                passed += 1;
            }
            Ok(Some(f)) => {
                determined += 1;
                first_failure.get_or_insert(f);
            }
            Err(_) => {}
        }
    }
    RoundTrip {
        source: source.expr().to_string(),
        target: target.expr().to_string(),
        provenance: provenance.to_vec(),
        samples,
        determined,
        passed,
        undetermined: samples - determined,
        first_failure,
        ok: determined == passed,
    }
}

/// Both composites of `h` on seeded samples, each sample with its own fuel.
pub fn check_homeo(h: &Homeo, samples: usize, seed: u64, fuel: u64) -> RoundTrip {
    let checks = [
        (&h.source, &h.forward, &h.backward, "backward-forward"),
        (&h.target, &h.backward, &h.forward, "forward-backward"),
    ];
    round_trip(&h.source, &h.target, &h.provenance, &checks, samples, seed, fuel)
}

/// `retraction . section = id` on seeded samples.
pub fn check_retract(r: &Retraction, samples: usize, seed: u64, fuel: u64) -> RoundTrip {
    let checks = [(&r.source, &r.section, &r.retraction, "retraction-section")];
    round_trip(&r.source, &r.target, &r.provenance, &checks, samples, seed, fuel)
}
