//! No continuous map from `X` onto `omega^X`: given `h`, the map
//! `g(x) = h(x)(x) + 1` is missed, and every sample shows why.
//!
//! A strategy file gives `h` uncurried, as a strategy `F` on `<x, y>` whose
//! output index 0 is `h(x)(y)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::expr::SpaceExpr;
use super::names::curry;
use super::RepError;
use crate::baire::{
    build_strategy, delta0, encode_strategy, eval_index, eval_universal, universal_apply, BairePoint, EvalOutcome,
    Fuel, Name, Nat, Stop, Strategy, StrategySpec,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagSpec {
    /// `omega` or `baire`.
    pub space: String,
    pub h: StrategySpec,
}

/// `x |-> F<x, x>(0) + 1` as a strategy with output `n0^w`.
struct Diagonal(Arc<dyn Strategy>);

impl Strategy for Diagonal {
    fn answer(&self, n: &Nat, sigma: &[u64]) -> Option<u64> {
        if !n.is_zero() {
            return Some(0);
        }
        let doubled: Vec<u64> = sigma.iter().flat_map(|&a| [a, a]).collect();
        self.0.answer(n, &doubled).map(|v| v.saturating_add(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SampleResult {
    Determined { g: u64, diagonal: u64, disagree: bool },
    Exhausted,
    Short,
    Inconsistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleLine {
    /// First entries of the sample name.
    pub sample: Vec<u64>,
    #[serde(flatten)]
    pub result: SampleResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub space: String,
    pub samples: Vec<SampleLine>,
    pub determined: usize,
    pub disagreements: usize,
    /// Every determined sample disagrees at the diagonal.
    pub holds: bool,
}

pub fn sample_names(space: &SpaceExpr, count: usize, seed: u64) -> Result<Vec<(Vec<u64>, Name)>, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let canon = space.canonical();
    (0..count)
        .map(|_| match canon {
            SpaceExpr::Omega => {
                let n = rng.gen_range(0..100);
                Ok((vec![n], delta0(n)))
            }
            SpaceExpr::Baire => {
                let prefix: Vec<u64> = (0..24).map(|_| rng.gen_range(0..10)).collect();
                let shown = prefix[..4].to_vec();
                Ok((shown, BairePoint::from_fn(move |i| prefix.get(i as usize).copied().unwrap_or(0))))
            }
            _ => Err(RepError::Unsupported(format!("diagonalization samples on {space}"))),
        })
        .collect()
}

fn stop_result(s: Stop) -> SampleResult {
    match s {
        Stop::Exhausted => SampleResult::Exhausted,
        Stop::Short => SampleResult::Short,
        Stop::Inconsistent { .. } => SampleResult::Inconsistent,
    }
}

/// The associate of `g` and a per-sample certificate. Each sample gets
/// its own budget of `fuel`.
pub fn diagonalize(spec: &DiagSpec, samples: usize, seed: u64, fuel: u64) -> Result<(Name, Certificate), RepError> {
    let space: SpaceExpr = spec.space.parse().map_err(|e| RepError::Unsupported(format!("space: {e}")))?;
    let f = build_strategy(&spec.h).map_err(|e| RepError::Unsupported(e.to_string()))?;
    let g = encode_strategy(Arc::new(Diagonal(f.clone())));
    let h = curry(f);
    let mut lines = Vec::new();
    for (shown, a) in sample_names(&space, samples, seed)? {
        let mut budget = Fuel::new(fuel);
        let result = match eval_universal(&g, &a, 1, &mut budget) {
            EvalOutcome::Determined { values } => {
                let ha = universal_apply(h.clone(), a.clone());
                match eval_index(&ha, &a, &Nat::Small(0), &mut budget) {
                    Ok(d) => SampleResult::Determined { g: values[0], diagonal: d, disagree: values[0] != d },
                    Err(s) => stop_result(s),
                }
            }
            EvalOutcome::Exhausted { .. } => SampleResult::Exhausted,
            EvalOutcome::Short { .. } => SampleResult::Short,
            EvalOutcome::Inconsistent { .. } => SampleResult::Inconsistent,
        };
        lines.push(SampleLine { sample: shown, result });
    }
    let determined = lines.iter().filter(|l| matches!(l.result, SampleResult::Determined { .. })).count();
    let disagreements =
        lines.iter().filter(|l| matches!(l.result, SampleResult::Determined { disagree: true, .. })).count();
    let cert = Certificate {
        space: space.to_string(),
        samples: lines,
        determined,
        disagreements,
        holds: determined == disagreements,
    };
    Ok((g, cert))
}
