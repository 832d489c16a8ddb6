//! The universal function `u(p, x)`: a name `p` codes a strategy through
//! `p(pair(n, code(sigma))) = answer + 1`, with 0 for "not yet decided".

use std::sync::Arc;

use serde::Serialize;

use super::{seq_decode, BairePoint, Fuel, Name, Nat, Source, Stop, Strategy};
use crate::pointclass::Pointclass;

/// The name coding `s`.
pub fn encode_strategy(s: Arc<dyn Strategy>) -> Name {
    BairePoint::from_nat_fn(move |c| {
        let (n, code) = c.unpair();
        match seq_decode(&code) {
            Some(sigma) => s.answer(&n, &sigma).map_or(0, |v| v.saturating_add(1)),
            None => 0,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EvalOutcome {
    Determined { values: Vec<u64> },
    Exhausted { spent: u64, partial: Vec<Option<u64>> },
    /// The input ran out (a finite prefix) before every index was decided.
    Short { partial: Vec<Option<u64>> },
    Inconsistent { index: u64, first: u64, second: u64 },
}

/// Reads the first `depth` values of `u(p, x)`. In round `k` every index
/// below `depth` is queried against `x|k`, one unit of fuel per query; the
/// evaluation stops after the first round in which all are decided.
pub fn eval_universal(p: &Name, x: &Name, depth: usize, fuel: &mut Fuel) -> EvalOutcome {
    let mut out: Vec<Option<u64>> = vec![None; depth];
    let mut code = Nat::Small(0);
    let mut k = 0u64;
    loop {
        for (n, slot) in out.iter_mut().enumerate() {
            if let Err(stop) = fuel.tick() {
                debug_assert_eq!(stop, Stop::Exhausted);
                return EvalOutcome::Exhausted { spent: fuel.spent, partial: out };
            }
            let v = match p.get(&Nat::pair(Nat::Small(n as u64), code.clone()), fuel) {
                Ok(v) => v,
                Err(stop) => return stopped(stop, out, fuel),
            };
            if v == 0 {
                continue;
            }
            match *slot {
                None => *slot = Some(v - 1),
                Some(w) if w != v - 1 => {
                    return EvalOutcome::Inconsistent { index: n as u64, first: w, second: v - 1 }
                }
                Some(_) => {}
            }
        }
        if out.iter().all(Option::is_some) {
            return EvalOutcome::Determined { values: out.into_iter().flatten().collect() };
        }
        let a = match x.at(k, fuel) {
            Ok(a) => a,
            Err(stop) => return stopped(stop, out, fuel),
        };
        code = Nat::pair(code, Nat::Small(a)).succ();
        k += 1;
    }
}

fn stopped(stop: Stop, partial: Vec<Option<u64>>, fuel: &Fuel) -> EvalOutcome {
    match stop {
        Stop::Exhausted => EvalOutcome::Exhausted { spent: fuel.spent, partial },
        Stop::Short => EvalOutcome::Short { partial },
        Stop::Inconsistent { index, first, second } => EvalOutcome::Inconsistent { index, first, second },
    }
}

/// The single value `u(p, x)(c)`, scanning prefixes of `x` until `p` answers.
pub fn eval_index(p: &Name, x: &Name, c: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
    let mut code = Nat::Small(0);
    let mut k = 0u64;
    loop {
        fuel.tick()?;
        let v = p.get(&Nat::pair(c.clone(), code.clone()), fuel)?;
        if v > 0 {
            return Ok(v - 1);
        }
        let a = x.at(k, fuel)?;
        code = Nat::pair(code, Nat::Small(a)).succ();
        k += 1;
    }
}

struct UniversalApply(Name, Name);

impl Source for UniversalApply {
    fn get(&self, c: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        eval_index(&self.0, &self.1, c, fuel)
    }
}

/// The point `u(p, x)` as a lazy name.
pub fn universal_apply(p: Name, x: Name) -> Name {
    Arc::new(UniversalApply(p, x))
}

/// Strategy for `x |-> (y |-> F<x, y>)`, whose outputs are names in the
/// coding above.
pub struct Curried(pub Arc<dyn Strategy>);

pub fn curry_universal(f: Arc<dyn Strategy>) -> Arc<dyn Strategy> {
    Arc::new(Curried(f))
}

impl Strategy for Curried {
    fn answer(&self, c: &Nat, sigma: &[u64]) -> Option<u64> {
        let (n, code) = c.unpair();
        let Some(tau) = seq_decode(&code) else { return Some(0) };
        let len = (2 * sigma.len()).min(2 * tau.len() + 1);
        let rho: Vec<u64> = (0..len).map(|i| if i % 2 == 0 { sigma[i / 2] } else { tau[i / 2] }).collect();
        match self.0.answer(&n, &rho) {
            Some(v) => Some(v.saturating_add(1)),
            None if sigma.len() > tau.len() => Some(0),
            None => None,
        }
    }

    fn domain_bound(&self) -> Pointclass {
        Pointclass::Pi0(1)
    }
}
