use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use super::{Fuel, Name, Nat, Source, Stop};

/// Indices above this many bits cannot be halved or doubled; reads through
/// an interleaving at such an index stop with [`Stop::Exhausted`].
pub const MAX_INDEX_BITS: u64 = 1 << 22;

const CACHE_LIMIT: u64 = 1 << 16;

enum Generator {
    Machine(Box<dyn Fn(u64) -> u64 + Send + Sync>),
    General(Box<dyn Fn(&Nat) -> u64 + Send + Sync>),
}

/// A total point given by a rule, with the values at small indices memoised.
pub struct BairePoint {
    gen: Generator,
    cache: RwLock<Vec<u64>>,
}

impl BairePoint {
    /// Point from a rule on machine-word indices; larger indices read 0.
    pub fn from_fn(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Name {
        Arc::new(BairePoint { gen: Generator::Machine(Box::new(f)), cache: RwLock::new(Vec::new()) })
    }

    pub fn from_nat_fn(f: impl Fn(&Nat) -> u64 + Send + Sync + 'static) -> Name {
        Arc::new(BairePoint { gen: Generator::General(Box::new(f)), cache: RwLock::new(Vec::new()) })
    }

    pub fn constant(v: u64) -> Name {
        Self::from_nat_fn(move |_| v)
    }

    pub fn zeros() -> Name {
        Self::constant(0)
    }

    /// The sequence `s` followed by zeros.
    pub fn from_prefix(s: Vec<u64>) -> Name {
        Self::from_fn(move |i| s.get(i as usize).copied().unwrap_or(0))
    }

    fn compute(&self, i: &Nat) -> u64 {
        match (&self.gen, i) {
            (Generator::Machine(f), Nat::Small(k)) => f(*k),
            (Generator::Machine(_), Nat::Big(_)) => 0,
            (Generator::General(f), i) => f(i),
        }
    }
}

impl Source for BairePoint {
    fn get(&self, i: &Nat, _fuel: &mut Fuel) -> Result<u64, Stop> {
        let Some(k) = i.small().filter(|k| *k < CACHE_LIMIT) else {
            return Ok(self.compute(i));
        };
        if let Some(v) = self.cache.read().unwrap().get(k as usize) {
            return Ok(*v);
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() as u64 <= k {
            let next = Nat::Small(cache.len() as u64);
            let v = self.compute(&next);
            cache.push(v);
        }
        Ok(cache[k as usize])
    }
}

/// `n` followed by zeros.
pub fn delta0(n: u64) -> Name {
    BairePoint::from_fn(move |i| if i == 0 { n } else { 0 })
}

/// A finite prefix read as a partial name; reading past it stops with [`Stop::Short`].
pub struct PrefixSource(pub Vec<u64>);

impl Source for PrefixSource {
    fn get(&self, i: &Nat, _fuel: &mut Fuel) -> Result<u64, Stop> {
        i.small()
            .and_then(|k| self.0.get(usize::try_from(k).ok()?).copied())
            .ok_or(Stop::Short)
    }
}

pub fn prefix_of(x: &Name, len: u64, fuel: &mut Fuel) -> Result<Vec<u64>, Stop> {
    (0..len).map(|i| x.at(i, fuel)).collect()
}

struct Interleave(Name, Name);

impl Source for Interleave {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let (bit, half) = i.halve(MAX_INDEX_BITS).ok_or(Stop::Exhausted)?;
        if bit == 0 {
            self.0.get(&half, fuel)
        } else {
            self.1.get(&half, fuel)
        }
    }

    fn halves(&self) -> Option<(Name, Name)> {
        Some((self.0.clone(), self.1.clone()))
    }
}

/// `<x, y>` with `z(2i) = x(i)` and `z(2i+1) = y(i)`.
pub fn pair_points(x: Name, y: Name) -> Name {
    Arc::new(Interleave(x, y))
}

struct Part(Name, u64);

impl Source for Part {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let j = i.double_plus(self.1, MAX_INDEX_BITS).ok_or(Stop::Exhausted)?;
        self.0.get(&j, fuel)
    }
}

/// Inverse of `pair_points`.
pub fn unpair_points(z: Name) -> (Name, Name) {
    (even_part(z.clone()), odd_part(z))
}

pub fn even_part(z: Name) -> Name {
    match z.halves() {
        Some((x, _)) => x,
        None => Arc::new(Part(z, 0)),
    }
}

pub fn odd_part(z: Name) -> Name {
    match z.halves() {
        Some((_, y)) => y,
        None => Arc::new(Part(z, 1)),
    }
}

struct Tuple {
    family: Arc<dyn Fn(u64) -> Name + Send + Sync>,
    made: Mutex<HashMap<u64, Name>>,
}

impl Source for Tuple {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let (m, n) = i.unpair();
        let Some(m) = m.small() else { return Ok(0) };
        self.made(m).get(&n, fuel)
    }

    fn component(&self, m: u64) -> Option<Name> {
        Some(self.made(m))
    }
}

impl Tuple {
    fn made(&self, m: u64) -> Name {
        let mut made = self.made.lock().unwrap();
        made.entry(m).or_insert_with(|| (self.family)(m)).clone()
    }
}

/// Countable tuple: `z(pair(m, n)) = x_m(n)`.
pub fn tuple_points(family: Arc<dyn Fn(u64) -> Name + Send + Sync>) -> Name {
    Arc::new(Tuple { family, made: Mutex::new(HashMap::new()) })
}

struct Project(Name, u64);

impl Source for Project {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        self.0.get(&Nat::pair(Nat::Small(self.1), i.clone()), fuel)
    }
}

/// Component `m` of a countable tuple.
pub fn project(z: Name, m: u64) -> Name {
    z.component(m).unwrap_or_else(|| Arc::new(Project(z, m)))
}

struct Shift(Name, u64);

impl Source for Shift {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let mut j = i.clone();
        for _ in 0..self.1 {
            j = j.succ();
        }
        self.0.get(&j, fuel)
    }
}

/// `x` with its first `k` entries dropped.
pub fn drop_prefix(x: Name, k: u64) -> Name {
    Arc::new(Shift(x, k))
}

/// `(q(0), q(1)q(2)...)`.
pub fn tail(q: &Name, fuel: &mut Fuel) -> Result<(u64, Name), Stop> {
    Ok((q.at(0, fuel)?, drop_prefix(q.clone(), 1)))
}

struct Cons(u64, Name);

impl Source for Cons {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        match i.pred() {
            None => Ok(self.0),
            Some(j) => self.1.get(&j, fuel),
        }
    }
}

pub fn cons(a: u64, x: Name) -> Name {
    Arc::new(Cons(a, x))
}
