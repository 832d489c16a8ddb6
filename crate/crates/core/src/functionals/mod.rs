//! The spaces `N<a>` of continuous functionals of countable type: their
//! canonical representations, executable homeomorphisms between them, and
//! evaluation of functional names.

pub mod fun;
pub mod homeo;
pub mod plan;
pub mod sample;

use thiserror::Error;

use crate::ordinals::Ordinal;

pub use fun::{
    apply_fun, as_fun, associate, base_point, build_space, eval_functional, fun, lazy_delta0, lazy_name, realize, Fun,
    FunOutcome, FunctionalSpace,
};
pub use homeo::{
    check_homeo, check_retract, homeo_exponent, homeo_product, homeo_swap, retract_witness, Failure, Homeo, NameMap,
    Retraction, RoundTrip,
};
pub use sample::{sample, same_point, Space};
pub use plan::{exponent_plan, product_plan, retract_plan, ExponentPlan, ProductPlan, Provenance, RetractPlan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunError {
    #[error("no executable construction for {what} (missing {missing})")]
    Unsupported { missing: String, what: String },
    #[error("expected {a} below {b}")]
    Order { a: Ordinal, b: Ordinal },
}
