//! Baire space: lazy points, strategies for continuous maps, and the
//! universal function that applies a coded strategy to a point.

mod nat;
mod point;
mod strategy;
mod universal;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use nat::{pair_nat, pair_nat_checked, seq_code, seq_decode, unpair_nat, Nat};
pub use point::{
    cons, delta0, drop_prefix, even_part, odd_part, pair_points, prefix_of, project, tail, tuple_points,
    unpair_points,
    BairePoint, PrefixSource, MAX_INDEX_BITS,
};
pub use strategy::{
    apply_strategy, build_strategy, run_strategy, Applied, Strategy, StrategyError, StrategySpec,
    TableSpec,
};
pub use universal::{
    curry_universal, encode_strategy, eval_index, eval_universal, universal_apply, Curried,
    EvalOutcome,
};

/// Why reading a name stopped before producing a value.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "stop", rename_all = "snake_case")]
pub enum Stop {
    #[error("fuel exhausted")]
    Exhausted,
    #[error("read past the end of a finite prefix")]
    Short,
    #[error("index {index} answered both {first} and {second}")]
    Inconsistent { index: u64, first: u64, second: u64 },
}

/// Step budget shared by nested evaluations.
#[derive(Debug, Clone)]
pub struct Fuel {
    pub limit: u64,
    pub spent: u64,
}

impl Fuel {
    pub fn new(limit: u64) -> Self {
        Fuel { limit, spent: 0 }
    }

    pub fn unlimited() -> Self {
        Fuel::new(u64::MAX)
    }

    pub fn tick(&mut self) -> Result<(), Stop> {
        if self.spent >= self.limit {
            return Err(Stop::Exhausted);
        }
        self.spent += 1;
        Ok(())
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.spent
    }
}

/// Anything that can be read as an element of Baire space.
pub trait Source: Send + Sync {
    fn get(&self, i: &Nat, fuel: &mut Fuel) -> Result<u64, Stop>;

    /// For names of functionals built from an executable map: that map, so
    /// callers can apply it directly instead of searching the coded table.
    fn functional(&self) -> Option<Functional> {
        None
    }

    /// The halves, when this name was built by pairing.
    fn halves(&self) -> Option<(Name, Name)> {
        None
    }

    /// Component `m`, when this name was built as a countable tuple.
    fn component(&self, _m: u64) -> Option<Name> {
        None
    }

    fn at(&self, i: u64, fuel: &mut Fuel) -> Result<u64, Stop> {
        self.get(&Nat::Small(i), fuel)
    }
}

/// A shared Baire-space name.
pub type Name = Arc<dyn Source>;

/// An executable continuous map from names to numbers.
pub type Functional = Arc<dyn Fn(&Name, &mut Fuel) -> Result<u64, Stop> + Send + Sync>;
