//! The represented-spaces calculus: space expressions, symbolic bounds on
//! the complexity of their representations, and name-level combinators.

mod classify;
pub mod diag;
pub mod expr;
pub mod names;
pub mod registry;
pub mod rules;

use thiserror::Error;

use crate::ordinals::Ordinal;

pub use classify::{replay, Classification, Classifier, LowerBound, ReplayError, Representation, TraceNode};
pub use expr::{parse_expr, Family, OrdArg, SpaceExpr, Tower};
pub use rules::{AtomTable, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("ordinal {ordinal} is not below the cap {cap}")]
    CapOverflow { ordinal: Ordinal, cap: String },
    #[error("unknown map {0:?}")]
    UnknownMap(String),
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("exponential with a quotient-only base {0}")]
    QuotientBase(String),
    #[error("unbound index variable {0}")]
    UnboundVar(String),
    #[error("retract witness {witness} does not apply to {space}")]
    Witness { witness: String, space: String },
}
