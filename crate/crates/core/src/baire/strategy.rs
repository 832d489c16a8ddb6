//! Strategies: finite-information rules that compute a continuous partial
//! map on Baire space one output index at a time.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Fuel, Name, Nat, Source, Stop};
use crate::pointclass::Pointclass;

pub trait Strategy: Send + Sync {
    /// Value at output index `n` once the input is known to extend `sigma`,
    /// or `None` if `sigma` does not yet decide it. Answers must agree on
    /// comparable prefixes.
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64>;

    /// Upper bound on the complexity of the set of inputs where every output
    /// index is eventually answered.
    fn domain_bound(&self) -> Pointclass {
        Pointclass::Pi0(2)
    }
}

/// JSON form of a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StrategySpec {
    Identity,
    Const(u64),
    Table(TableSpec),
    /// Output `<l(x), r(x)>`.
    Interleave(Box<StrategySpec>, Box<StrategySpec>),
    /// Index 0 from the inner strategy, zeros elsewhere.
    Delta0(Box<StrategySpec>),
    Offset { by: u64, of: Box<StrategySpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    /// `(output index, input prefix, value)`.
    pub entries: Vec<(u64, Vec<u64>, u64)>,
    #[serde(default)]
    pub default: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("table entries for index {index} conflict on comparable prefixes")]
    Conflict { index: u64 },
}

struct Identity;

impl Strategy for Identity {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        sigma.get(usize::try_from(n.small()?).ok()?).copied()
    }

    fn domain_bound(&self) -> Pointclass {
        Pointclass::Pi0(1)
    }
}

struct Const(u64);

impl Strategy for Const {
    fn answer(&self, _n: &Nat, _sigma: &[u64]) -> Option<u64> {
        Some(self.0)
    }

    fn domain_bound(&self) -> Pointclass {
        Pointclass::Pi0(1)
    }
}

struct Table {
    spec: TableSpec,
    horizon: usize,
}

impl Strategy for Table {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        let k = n.small();
        let hit = self
            .spec
            .entries
            .iter()
            .find(|(i, p, _)| Some(*i) == k && sigma.starts_with(p));
        match hit {
            Some((_, _, v)) => Some(*v),
            None if sigma.len() >= self.horizon => self.spec.default,
            None => None,
        }
    }

    fn domain_bound(&self) -> Pointclass {
        if self.spec.default.is_some() {
            Pointclass::Pi0(1)
        } else {
            Pointclass::Pi0(2)
        }
    }
}

struct Interleave(Arc<dyn Strategy>, Arc<dyn Strategy>);

impl Strategy for Interleave {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        let (bit, half) = n.halve(super::MAX_INDEX_BITS)?;
        if bit == 0 {
            self.0.answer(&half, sigma)
        } else {
            self.1.answer(&half, sigma)
        }
    }

    fn domain_bound(&self) -> Pointclass {
        self.0.domain_bound().join(&self.1.domain_bound())
    }
}

struct Delta0(Arc<dyn Strategy>);

impl Strategy for Delta0 {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        if n.is_zero() {
            self.0.answer(n, sigma)
        } else {
            Some(0)
        }
    }

    fn domain_bound(&self) -> Pointclass {
        self.0.domain_bound()
    }
}

struct Offset(u64, Arc<dyn Strategy>);

impl Strategy for Offset {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        self.1.answer(n, sigma).map(|v| v.saturating_add(self.0))
    }

    fn domain_bound(&self) -> Pointclass {
        self.1.domain_bound()
    }
}

pub fn build_strategy(spec: &StrategySpec) -> Result<Arc<dyn Strategy>, StrategyError> {
    Ok(match spec {
        StrategySpec::Identity => Arc::new(Identity),
        StrategySpec::Const(v) => Arc::new(Const(*v)),
        StrategySpec::Table(t) => {
            for (a, (i, p, v)) in t.entries.iter().enumerate() {
                for (j, q, w) in &t.entries[a + 1..] {
                    if i == j && v != w && (p.starts_with(q) || q.starts_with(p)) {
                        return Err(StrategyError::Conflict { index: *i });
                    }
                }
            }
            let horizon = t.entries.iter().map(|(_, p, _)| p.len()).max().unwrap_or(0);
            Arc::new(Table { spec: t.clone(), horizon })
        }
        StrategySpec::Interleave(l, r) => Arc::new(Interleave(build_strategy(l)?, build_strategy(r)?)),
        StrategySpec::Delta0(s) => Arc::new(Delta0(build_strategy(s)?)),
        StrategySpec::Offset { by, of } => Arc::new(Offset(*by, build_strategy(of)?)),
    })
}

/// The point `s(x)`, read lazily. Each consultation of the strategy costs one unit of fuel.
pub struct Applied {
    pub strategy: Arc<dyn Strategy>,
    pub input: Name,
}

impl Source for Applied {
    fn get(&self, c: &Nat, fuel: &mut Fuel) -> Result<u64, Stop> {
        let mut sigma = Vec::new();
        loop {
            fuel.tick()?;
            if let Some(v) = self.strategy.answer(c, &sigma) {
                return Ok(v);
            }
            let next = self.input.at(sigma.len() as u64, fuel)?;
            sigma.push(next);
        }
    }
}

pub fn apply_strategy(s: Arc<dyn Strategy>, x: Name) -> Name {
    Arc::new(Applied { strategy: s, input: x })
}

/// Reference evaluation on a concrete prefix: the first answer for index `n`
/// over the prefixes of `x`, shortest first.
pub fn run_strategy(s: &dyn Strategy, x: &[u64], n: u64) -> Option<u64> {
    (0..=x.len()).find_map(|k| s.answer(&Nat::Small(n), &x[..k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire::{prefix_of, BairePoint};

    fn spec(s: &str) -> StrategySpec {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn json_forms() {
        assert_eq!(spec("\"identity\""), StrategySpec::Identity);
        assert_eq!(spec("{\"const\":3}"), StrategySpec::Const(3));
        let t = spec(r#"{"table":{"entries":[[0,[1],5],[0,[2],6]],"default":0}}"#);
        assert!(matches!(t, StrategySpec::Table(_)));
        let i = spec(r#"{"interleave":["identity",{"const":1}]}"#);
        assert!(matches!(i, StrategySpec::Interleave(_, _)));
        let o = spec(r#"{"delta0":{"offset":{"by":1,"of":"identity"}}}"#);
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"{"delta0":{"offset":{"by":1,"of":"identity"}}}"#);
        assert!(serde_json::from_str::<StrategySpec>("{\"bogus\":1}").is_err());
    }

    #[test]
    fn table_conflicts_rejected() {
        let t = spec(r#"{"table":{"entries":[[0,[1],5],[0,[1,2],6]],"default":null}}"#);
        assert!(build_strategy(&t).is_err());
        let ok = spec(r#"{"table":{"entries":[[0,[1],5],[0,[2,2],6]],"default":null}}"#);
        assert!(build_strategy(&ok).is_ok());
    }

    #[test]
    fn table_matches_direct_lookup() {
        let t = spec(r#"{"table":{"entries":[[0,[1],5],[0,[2,2],6],[1,[],9]],"default":0}}"#);
        let s = build_strategy(&t).unwrap();
        assert_eq!(run_strategy(&*s, &[1, 0], 0), Some(5));
        assert_eq!(run_strategy(&*s, &[2, 2], 0), Some(6));
        assert_eq!(run_strategy(&*s, &[2, 3], 0), Some(0));
        assert_eq!(run_strategy(&*s, &[2], 0), None);
        assert_eq!(run_strategy(&*s, &[], 1), Some(9));
    }

    #[test]
    fn applied_agrees_with_direct_run() {
        let s = build_strategy(&spec(r#"{"interleave":["identity",{"offset":{"by":1,"of":"identity"}}]}"#)).unwrap();
        let x = BairePoint::from_fn(|i| 3 * i + 1);
        let y = apply_strategy(s.clone(), x);
        let got = prefix_of(&y, 6, &mut Fuel::unlimited()).unwrap();
        let xs: Vec<u64> = (0..8).map(|i| 3 * i + 1).collect();
        let want: Vec<u64> = (0..6).map(|n| run_strategy(&*s, &xs, n).unwrap()).collect();
        assert_eq!(got, want);
        assert_eq!(got, [1, 2, 4, 5, 7, 8]);
    }

    #[test]
    fn applied_spends_fuel() {
        let s = build_strategy(&StrategySpec::Identity).unwrap();
        let y = apply_strategy(s, BairePoint::zeros());
        let mut fuel = Fuel::new(3);
        assert_eq!(y.at(5, &mut fuel), Err(Stop::Exhausted));
        assert_eq!(fuel.spent, 3);
    }
}
