//! Which homeomorphisms between the spaces `N<a>` have an executable
//! construction, and from which steps it is assembled.

use std::fmt;

use crate::ordinals::{Kind, Ordinal};

use super::FunError;

/// `N<a> x N<b> ~ N<b>` for `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductPlan {
    /// `omega x N<a> ~ N<a>` at a successor, or `omega x omega ~ omega`.
    Swap(Ordinal),
    /// `N<a> x N<a> ~ N<a>`.
    SelfProduct(Ordinal),
    /// `N<a> x N<a+1> ~ N<a+1>`, lifted from the plan one level down.
    Lift(Ordinal, Box<ProductPlan>),
    /// `N<a> x N<a+k> ~ N<a+k>` for `k >= 2`, chained through the step plans.
    Chain { a: Ordinal, k: u64, step: Box<ProductPlan>, rest: Box<ProductPlan> },
    /// `N<a> x N<l> ~ N<l>` for limit `l > a`: merge into component `a`.
    Absorb { a: Ordinal, limit: Ordinal, inner: Box<ProductPlan> },
}

/// `N<a>^N<b> ~ N<max(a, b+1)>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentPlan {
    /// `a = 0`: the definition of `N<b+1>`.
    Definition(Ordinal),
    /// `a = c+1`: uncurry to `omega^(N<b> x N<c>)` and merge the product.
    Uncurry { c: Ordinal, b: Ordinal, merge: ProductPlan, swapped: bool },
}

fn unsupported(missing: &str, what: String) -> FunError {
    FunError::Unsupported { missing: missing.to_string(), what }
}

/// `N<a> x N<a+1> ~ N<a+1>`.
fn lift_plan(a: &Ordinal) -> Result<ProductPlan, FunError> {
    match a.kind() {
        Kind::Zero => Ok(ProductPlan::Swap(Ordinal::nat(1))),
        Kind::Successor(p) => Ok(ProductPlan::Lift(a.clone(), Box::new(lift_plan(&p)?))),
        Kind::Limit => Err(unsupported("lift-at-limit", format!("N<{a}> x N<{}>", a.succ()))),
    }
}

pub fn product_plan(a: &Ordinal, b: &Ordinal) -> Result<ProductPlan, FunError> {
    if a > b {
        return Err(FunError::Order { a: a.clone(), b: b.clone() });
    }
    if a == b {
        return Ok(if a.is_zero() { ProductPlan::Swap(Ordinal::zero()) } else { ProductPlan::SelfProduct(a.clone()) });
    }
    let (base, l) = b.split_finite();
    let (abase, ak) = a.split_finite();
    if abase == base {
        let k = l - ak;
        if k == 1 {
            return lift_plan(a);
        }
        let step = lift_plan(&b.pred().expect("k >= 2"))?;
        let rest = product_plan(a, &b.pred().expect("k >= 2"))?;
        return Ok(ProductPlan::Chain { a: a.clone(), k, step: Box::new(step), rest: Box::new(rest) });
    }
    if l == 0 {
        let inner = product_plan(a, a)?;
        return Ok(ProductPlan::Absorb { a: a.clone(), limit: b.clone(), inner: Box::new(inner) });
    }
    Err(unsupported("lift-at-limit", format!("N<{a}> x N<{b}>")))
}

pub fn exponent_plan(a: &Ordinal, b: &Ordinal) -> Result<ExponentPlan, FunError> {
    match a.kind() {
        Kind::Zero => Ok(ExponentPlan::Definition(b.clone())),
        Kind::Successor(c) => {
            let swapped = b > &c;
            let merge = if swapped { product_plan(&c, b)? } else { product_plan(b, &c)? };
            Ok(ExponentPlan::Uncurry { c, b: b.clone(), merge, swapped })
        }
        Kind::Limit => Err(unsupported("exp-limit", format!("N<{a}>^N<{b}>"))),
    }
}

/// Section/retraction of `N<a>` into `N<b>`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractPlan {
    /// `n |-> n^w`, `x |-> x(0)`.
    Constant,
    /// `x |-> (y |-> x(y(0)))`, `f |-> (n |-> f(n0^w))`.
    Compose,
    /// `x |-> W(x, base)` and its first coordinate back.
    Product(ProductPlan),
}

pub fn retract_plan(a: &Ordinal, b: &Ordinal) -> Result<RetractPlan, FunError> {
    if a >= b {
        return Err(FunError::Order { a: a.clone(), b: b.clone() });
    }
    if a.is_zero() && *b == Ordinal::nat(1) {
        return Ok(RetractPlan::Constant);
    }
    if *a == Ordinal::nat(1) && *b == Ordinal::nat(2) {
        return Ok(RetractPlan::Compose);
    }
    Ok(RetractPlan::Product(product_plan(a, b)?))
}

impl ProductPlan {
    /// Step identifiers in the order they are applied.
    pub fn provenance(&self) -> Vec<String> {
        match self {
            ProductPlan::Swap(a) => vec![format!("swap@a={a}")],
            ProductPlan::SelfProduct(a) => vec![format!("square@a={a}")],
            ProductPlan::Lift(a, inner) => {
                let mut v = inner.provenance();
                v.push(format!("lift@({},{a})", a.pred().expect("lift at a successor")));
                v
            }
            ProductPlan::Chain { a, k, step, rest } => {
                let mut v = step.provenance();
                for s in rest.provenance() {
                    if !v.contains(&s) {
                        v.push(s);
                    }
                }
                v.push(format!("chain@({a},{})", a.add_nat(*k)));
                v
            }
            ProductPlan::Absorb { a, limit, inner } => {
                let mut v = inner.provenance();
                v.push(format!("absorb@({a},{limit})"));
                v
            }
        }
    }
}

impl ExponentPlan {
    pub fn provenance(&self) -> Vec<String> {
        match self {
            ExponentPlan::Definition(b) => vec![format!("def@b={b}")],
            ExponentPlan::Uncurry { c, b, merge, .. } => {
                let mut v = vec![format!("uncurry@({},{b})", c.succ())];
                v.extend(merge.provenance());
                v
            }
        }
    }
}

/// Renders a provenance list as `[a, b, c]`.
pub struct Provenance<'a>(pub &'a [String]);

impl fmt::Display for Provenance<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}
