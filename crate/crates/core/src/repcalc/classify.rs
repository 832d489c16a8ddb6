//! Bound propagation over space expressions, with a replayable trace.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{parse_expr, Family, OrdArg, SpaceExpr, Tower};
use super::registry::{codomain, parse_map};
use super::rules::{lower_cite, AtomTable, Rule};
use super::RepError;
use crate::functionals::{exponent_plan, retract_plan};
use crate::ordinals::{Cap, Kind, Ordinal};
use crate::pointclass::Pointclass;

fn is_false(b: &bool) -> bool {
    !*b
}

/// One derivation step. `output` bounds EQ of the representation, `dom`
/// bounds its domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub rule: String,
    pub cite: String,
    pub expr: String,
    pub inputs: Vec<TraceNode>,
    pub output: Pointclass,
    pub dom: Pointclass,
    #[serde(default, skip_serializing_if = "is_false")]
    pub quotient_only: bool,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub space: SpaceExpr,
    pub eq_bound: Pointclass,
    pub dom_bound: Pointclass,
    /// Only a quotient representation; admissibility is not claimed.
    pub quotient_only: bool,
    pub trace: TraceNode,
}

impl Representation {
    fn from_node(space: SpaceExpr, trace: TraceNode) -> Self {
        Representation {
            space,
            eq_bound: trace.output.clone(),
            dom_bound: trace.dom.clone(),
            quotient_only: trace.quotient_only,
            trace,
        }
    }
}

/// A class the space is known not to belong to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub not: Pointclass,
    pub rule: String,
    pub cite: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub expr: String,
    pub eq_bound: Pointclass,
    pub dom_bound: Pointclass,
    pub quotient_only: bool,
    pub lower: Option<LowerBound>,
    pub trace: TraceNode,
}

#[derive(Clone, Debug)]
pub struct Classifier {
    pub atoms: AtomTable,
    pub cap: Cap,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier { atoms: AtomTable::standard(), cap: Cap::epsilon0() }
    }
}

/// Deepest finite tower spelled out node by node.
const MAX_TOWER: u64 = 4096;

fn atom_key(e: &SpaceExpr) -> Option<&'static str> {
    match e.canonical() {
        SpaceExpr::Omega => Some("omega"),
        SpaceExpr::Baire => Some("baire"),
        SpaceExpr::Sierpinski => Some("sierpinski"),
        SpaceExpr::Reals => Some("reals"),
        SpaceExpr::Rk(OrdArg::Lit(a)) if a.is_zero() => Some("reals"),
        _ => None,
    }
}

fn least_limit_above(a: &Ordinal) -> Ordinal {
    a.split_finite().0.plus_omega()
}

/// A limit above every component level of a family whose body uses `var`.
fn cofinal_limit(body: &SpaceExpr, var: &str) -> Ordinal {
    body.substitute(var, 0)
        .ordinals()
        .iter()
        .map(least_limit_above)
        .max()
        .unwrap_or_else(Ordinal::omega)
}

fn exp_bound(y: &Pointclass, x: &Pointclass) -> Pointclass {
    let a = [Ordinal::nat(1), x.ms(), y.mp()].into_iter().max().unwrap();
    Pointclass::pi1(a)
}

fn coequalizer_bound(a: &Pointclass, x: &Pointclass) -> Pointclass {
    Pointclass::sigma1(Ordinal::nat(1).max(a.join(x).ms()))
}

fn t0_bound(x: &Pointclass) -> Pointclass {
    Pointclass::sigma1(Ordinal::nat(1).max(x.ms()).add_nat(2))
}

/// Level `a` such that `e` is, or normalizes to, `N<a>`.
fn normalized_level(e: &SpaceExpr) -> Option<Ordinal> {
    if let Some(a) = e.nk_level() {
        return Some(a);
    }
    match e {
        SpaceExpr::Exp(y, x) => {
            let (a, b) = (y.nk_level()?, x.nk_level()?);
            exponent_plan(&a, &b).ok()?;
            Some(a.max(b.succ()))
        }
        _ => None,
    }
}

impl Classifier {
    pub fn new(atoms: AtomTable, cap: Cap) -> Self {
        Classifier { atoms, cap }
    }

    pub fn classify(&self, e: &SpaceExpr) -> Result<Classification, RepError> {
        let r = self.rep(e)?;
        Ok(Classification {
            expr: e.to_string(),
            eq_bound: r.eq_bound,
            dom_bound: r.dom_bound,
            quotient_only: r.quotient_only,
            lower: self.lower(e),
            trace: r.trace,
        })
    }

    /// The lower-bound witness attached to `N<a+1>`, `a >= 1`, and `N<l>`.
    pub fn lower(&self, e: &SpaceExpr) -> Option<LowerBound> {
        let level = normalized_level(e)?;
        let (not, rule) = match level.kind() {
            Kind::Successor(p) if !p.is_zero() => (Pointclass::Sigma1(p), "lower-successor"),
            Kind::Limit => (Pointclass::SigmaBelowSigma(level), "lower-limit"),
            _ => return None,
        };
        let cite = lower_cite(rule)?.to_string();
        Some(LowerBound { not, rule: rule.to_string(), cite })
    }

    fn check_cap(&self, a: &Ordinal) -> Result<(), RepError> {
        if self.cap.admits(a) {
            Ok(())
        } else {
            Err(RepError::CapOverflow { ordinal: a.clone(), cap: self.cap.to_string() })
        }
    }

    fn mk(
        &self,
        rule: Rule,
        expr: String,
        inputs: Vec<TraceNode>,
        output: Pointclass,
        dom: Pointclass,
        quotient_only: bool,
    ) -> Result<TraceNode, RepError> {
        self.check_cap(&output.level())?;
        self.check_cap(&dom.level())?;
        Ok(TraceNode { rule: rule.name().to_string(), cite: rule.cite().to_string(), expr, inputs, output, dom, quotient_only })
    }

    pub fn rep(&self, e: &SpaceExpr) -> Result<Representation, RepError> {
        for a in e.ordinals() {
            self.check_cap(&a)?;
        }
        self.build(e)
    }

    fn build(&self, e: &SpaceExpr) -> Result<Representation, RepError> {
        use SpaceExpr::*;
        match e {
            Omega | Baire | Sierpinski | Reals => self.atom(e),
            POmega => self.sugar(e, e.canonical()),
            HyperO(x) => self.sugar(e, SpaceExpr::Exp(Box::new(Sierpinski), x.clone())),
            Nk(OrdArg::Lit(a)) => self.nk(a),
            Rk(OrdArg::Lit(a)) => self.rk(a),
            Nk(OrdArg::Var { var, .. }) | Rk(OrdArg::Var { var, .. }) => Err(RepError::UnboundVar(var.clone())),
            Prod(a, b) => self.product_rep(&self.build(a)?, &self.build(b)?),
            Coprod(xs) => {
                let reps = xs.iter().map(|x| self.build(x)).collect::<Result<Vec<_>, _>>()?;
                self.coproduct_rep(&reps)
            }
            ProdOmega(f) => {
                let fam = self.family(f)?;
                self.product_omega_rep(e, fam)
            }
            CoprodOmega(f) => {
                let fam = self.family(f)?;
                self.coproduct_omega_rep(e, fam)
            }
            Exp(y, x) => self.exp(e, y, x),
            Equalizer(x, f, g) => self.equalizer_rep(&self.build(x)?, f, g),
            Coequalizer(a, x, f, g) => self.coequalizer_rep(&self.build(a)?, &self.build(x)?, f, g),
            Retract(x, w) => self.retract_rep(&self.build(x)?, w),
            T0(x) => self.t0_quotient(&self.build(x)?),
        }
    }

    fn atom(&self, e: &SpaceExpr) -> Result<Representation, RepError> {
        let key = atom_key(e).expect("atom expression");
        let entry = self.atoms.get(key).ok_or_else(|| RepError::Unsupported(format!("no atom entry for {key}")))?;
        let node = self.mk(Rule::Atom, e.to_string(), vec![], entry.eq.clone(), entry.dom.clone(), false)?;
        Ok(Representation::from_node(e.clone(), node))
    }

    fn sugar(&self, e: &SpaceExpr, expanded: SpaceExpr) -> Result<Representation, RepError> {
        let inner = self.build(&expanded)?;
        let node = self.mk(Rule::Sugar, e.to_string(), vec![], inner.eq_bound.clone(), inner.dom_bound.clone(), inner.quotient_only)?;
        let node = TraceNode { inputs: vec![inner.trace], ..node };
        Ok(Representation::from_node(e.clone(), node))
    }

    fn below(&self, l: &Ordinal, tower: Tower) -> Result<TraceNode, RepError> {
        let c = Pointclass::SigmaBelow(l.clone());
        self.mk(Rule::Below, Family::Below(l.clone(), tower).to_string(), vec![], c.clone(), c, false)
    }

    fn tower_guard(a: &Ordinal) -> Result<(), RepError> {
        if a.split_finite().1 > MAX_TOWER {
            return Err(RepError::Unsupported(format!("tower of height {a} exceeds {MAX_TOWER} explicit steps")));
        }
        Ok(())
    }

    fn nk(&self, a: &Ordinal) -> Result<Representation, RepError> {
        Self::tower_guard(a)?;
        let space = SpaceExpr::nk(a.clone());
        match a.kind() {
            Kind::Zero => self.atom(&space),
            Kind::Successor(p) if p.is_zero() => self.atom(&space),
            Kind::Successor(p) => {
                let y = self.atom(&SpaceExpr::Omega)?;
                let x = self.nk(&p)?;
                self.exponential_rep_as(&y, &x, space)
            }
            Kind::Limit => {
                let fam = self.below(a, Tower::Nk)?;
                self.product_omega_rep(&space, fam)
            }
        }
    }

    fn rk(&self, a: &Ordinal) -> Result<Representation, RepError> {
        Self::tower_guard(a)?;
        let space = SpaceExpr::rk(a.clone());
        match a.kind() {
            Kind::Zero => self.atom(&space),
            Kind::Successor(p) if p.is_zero() => {
                let c = Pointclass::Pi0(2);
                let node = self.mk(Rule::RkOne, space.to_string(), vec![], c.clone(), c, false)?;
                Ok(Representation::from_node(space, node))
            }
            Kind::Successor(p) => {
                let y = self.atom(&SpaceExpr::Reals)?;
                let x = self.rk(&p)?;
                self.exponential_rep_as(&y, &x, space)
            }
            Kind::Limit => {
                let fam = self.below(a, Tower::Rk)?;
                self.product_omega_rep(&space, fam)
            }
        }
    }

    fn family(&self, f: &Family) -> Result<TraceNode, RepError> {
        match f {
            Family::Below(l, tower) => self.below(l, *tower),
            Family::Template { var, body } if !body.uses_var(var) => {
                let r = self.build(body)?;
                let node = self.mk(Rule::FamilyUniform, f.to_string(), vec![], r.eq_bound, r.dom_bound, r.quotient_only)?;
                Ok(TraceNode { inputs: vec![r.trace], ..node })
            }
            Family::Template { var, body } => {
                let lim = cofinal_limit(body, var);
                let mut eq = Pointclass::SigmaBelow(lim.clone());
                let mut dom = eq.clone();
                let mut q = false;
                let mut inputs = Vec::new();
                for k in 0..4 {
                    let r = self.build(&body.substitute(var, k))?;
                    eq = eq.join(&r.eq_bound);
                    dom = dom.join(&r.dom_bound);
                    q |= r.quotient_only;
                    inputs.push(r.trace);
                }
                self.mk(Rule::FamilyCofinal, f.to_string(), inputs, eq, dom, q)
            }
        }
    }

    pub fn product_rep(&self, a: &Representation, b: &Representation) -> Result<Representation, RepError> {
        let space = SpaceExpr::prod(a.space.clone(), b.space.clone());
        let node = self.mk(
            Rule::Prod,
            space.to_string(),
            vec![a.trace.clone(), b.trace.clone()],
            a.eq_bound.finite_product(&b.eq_bound),
            a.dom_bound.finite_product(&b.dom_bound),
            a.quotient_only || b.quotient_only,
        )?;
        Ok(Representation::from_node(space, node))
    }

    pub fn coproduct_rep(&self, xs: &[Representation]) -> Result<Representation, RepError> {
        let space = SpaceExpr::Coprod(xs.iter().map(|r| r.space.clone()).collect());
        let eq = Pointclass::join_all(xs.iter().map(|r| &r.eq_bound)).ok_or_else(|| RepError::Signature("empty coproduct".into()))?;
        let dom = Pointclass::join_all(xs.iter().map(|r| &r.dom_bound)).expect("nonempty");
        let q = xs.iter().any(|r| r.quotient_only);
        let node = self.mk(Rule::Coprod, space.to_string(), xs.iter().map(|r| r.trace.clone()).collect(), eq, dom, q)?;
        Ok(Representation::from_node(space, node))
    }

    fn product_omega_rep(&self, space: &SpaceExpr, fam: TraceNode) -> Result<Representation, RepError> {
        let (eq, dom, q) = (fam.output.close_delta(), fam.dom.close_delta(), fam.quotient_only);
        let node = self.mk(Rule::ProdOmega, space.to_string(), vec![fam], eq, dom, q)?;
        Ok(Representation::from_node(space.clone(), node))
    }

    fn coproduct_omega_rep(&self, space: &SpaceExpr, fam: TraceNode) -> Result<Representation, RepError> {
        let (eq, dom, q) = (fam.output.close_sigma(), fam.dom.close_sigma(), fam.quotient_only);
        let node = self.mk(Rule::CoprodOmega, space.to_string(), vec![fam], eq, dom, q)?;
        Ok(Representation::from_node(space.clone(), node))
    }

    fn exp(&self, e: &SpaceExpr, y: &SpaceExpr, x: &SpaceExpr) -> Result<Representation, RepError> {
        let raw = self.exponential_rep(&self.build(y)?, &self.build(x)?)?;
        let (Some(a), Some(b)) = (y.nk_level(), x.nk_level()) else { return Ok(raw) };
        if exponent_plan(&a, &b).is_err() {
            return Ok(raw);
        }
        let norm = self.nk(&a.clone().max(b.succ()))?;
        let node = self.mk(
            Rule::HomeoNormalize,
            e.to_string(),
            vec![raw.trace, norm.trace],
            norm.eq_bound,
            norm.dom_bound,
            false,
        )?;
        Ok(Representation::from_node(e.clone(), node))
    }

    /// `Y^X`, written `(exp Y X)`.
    pub fn exponential_rep(&self, y: &Representation, x: &Representation) -> Result<Representation, RepError> {
        self.exponential_rep_as(y, x, SpaceExpr::exp(y.space.clone(), x.space.clone()))
    }

    fn exponential_rep_as(&self, y: &Representation, x: &Representation, space: SpaceExpr) -> Result<Representation, RepError> {
        if y.quotient_only {
            return Err(RepError::QuotientBase(y.space.to_string()));
        }
        let c = exp_bound(&y.eq_bound, &x.eq_bound);
        let node = self.mk(Rule::Exp, space.to_string(), vec![y.trace.clone(), x.trace.clone()], c.clone(), c, false)?;
        Ok(Representation::from_node(space, node))
    }

    pub fn equalizer_rep(&self, x: &Representation, f: &str, g: &str) -> Result<Representation, RepError> {
        let cf = codomain(f, &x.space)?;
        let cg = codomain(g, &x.space)?;
        if cf.canonical() != cg.canonical() {
            return Err(RepError::Signature(format!("{f} lands in {cf} but {g} lands in {cg}")));
        }
        let a = self.build(&cf)?;
        let space = SpaceExpr::Equalizer(Box::new(x.space.clone()), f.into(), g.into());
        let dom = x.dom_bound.join(&a.eq_bound.preimage_pi02());
        let node = self.mk(Rule::Equalizer, space.to_string(), vec![x.trace.clone(), a.trace], x.eq_bound.clone(), dom, x.quotient_only)?;
        Ok(Representation::from_node(space, node))
    }

    pub fn coequalizer_rep(&self, a: &Representation, x: &Representation, f: &str, g: &str) -> Result<Representation, RepError> {
        for m in [f, g] {
            let c = codomain(m, &a.space)?;
            if c.canonical() != x.space.canonical() {
                return Err(RepError::Signature(format!("{m} maps {} to {c}, not {}", a.space, x.space)));
            }
        }
        let space = SpaceExpr::Coequalizer(Box::new(a.space.clone()), Box::new(x.space.clone()), f.into(), g.into());
        let node = if parse_map(f)? == parse_map(g)? {
            self.mk(Rule::CoequalizerTrivial, space.to_string(), vec![x.trace.clone()], x.eq_bound.clone(), x.dom_bound.clone(), x.quotient_only)?
        } else {
            let c = coequalizer_bound(&a.eq_bound, &x.eq_bound);
            self.mk(Rule::Coequalizer, space.to_string(), vec![a.trace.clone(), x.trace.clone()], c, x.dom_bound.clone(), true)?
        };
        Ok(Representation::from_node(space, node))
    }

    pub fn t0_quotient(&self, x: &Representation) -> Result<Representation, RepError> {
        let space = SpaceExpr::T0(Box::new(x.space.clone()));
        let c = t0_bound(&x.eq_bound);
        let node = self.mk(Rule::T0, space.to_string(), vec![x.trace.clone()], c.clone(), c, false)?;
        Ok(Representation::from_node(space, node))
    }

    /// Witnesses: `id`; `head` (omega inside Baire space); `nk@a` (`N<a>` inside `N<b>`, `a < b`).
    pub fn retract_rep(&self, x: &Representation, witness: &str) -> Result<Representation, RepError> {
        let bad = || RepError::Witness { witness: witness.to_string(), space: x.space.to_string() };
        let ok = match witness {
            "id" => true,
            "head" => x.space.canonical() == SpaceExpr::Baire,
            _ => match (witness.strip_prefix("nk@"), x.space.nk_level()) {
                (Some(a), Some(b)) => {
                    let a: Ordinal = a.parse().map_err(|_| bad())?;
                    retract_plan(&a, &b).is_ok()
                }
                _ => false,
            },
        };
        if !ok {
            return Err(bad());
        }
        let space = SpaceExpr::Retract(Box::new(x.space.clone()), witness.into());
        let dom = x.dom_bound.join(&x.eq_bound);
        let node = self.mk(Rule::Retract, space.to_string(), vec![x.trace.clone()], x.eq_bound.clone(), dom, x.quotient_only)?;
        Ok(Representation::from_node(space, node))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("{path}: unknown rule {rule:?}")]
    UnknownRule { path: String, rule: String },
    #[error("{path}: {rule} carries a label that differs from the manifest")]
    Cite { path: String, rule: String },
    #[error("{path}: {rule} on {expr}: {msg}")]
    Shape { path: String, rule: String, expr: String, msg: String },
    #[error("{path}: {rule} on {expr}: recorded {field} {recorded}, recomputed {recomputed}")]
    Bound { path: String, rule: String, expr: String, field: &'static str, recorded: String, recomputed: String },
}

/// Recomputes every node of `trace` from its rule and inputs.
pub fn replay(trace: &TraceNode, atoms: &AtomTable) -> Result<(), ReplayError> {
    replay_at(trace, atoms, "root")
}

fn replay_at(node: &TraceNode, atoms: &AtomTable, path: &str) -> Result<(), ReplayError> {
    for (i, child) in node.inputs.iter().enumerate() {
        replay_at(child, atoms, &format!("{path}/{i}"))?;
    }
    let rule = Rule::from_name(&node.rule)
        .ok_or_else(|| ReplayError::UnknownRule { path: path.into(), rule: node.rule.clone() })?;
    if node.cite != rule.cite() {
        return Err(ReplayError::Cite { path: path.into(), rule: node.rule.clone() });
    }
    let shape = |msg: String| ReplayError::Shape { path: path.into(), rule: node.rule.clone(), expr: node.expr.clone(), msg };
    let (eq, dom, q) = recompute(rule, node, atoms).map_err(shape)?;
    let mismatch = |field: &'static str, recorded: String, recomputed: String| ReplayError::Bound {
        path: path.into(),
        rule: node.rule.clone(),
        expr: node.expr.clone(),
        field,
        recorded,
        recomputed,
    };
    if eq != node.output {
        return Err(mismatch("output", node.output.to_string(), eq.to_string()));
    }
    if dom != node.dom {
        return Err(mismatch("dom", node.dom.to_string(), dom.to_string()));
    }
    if q != node.quotient_only {
        return Err(mismatch("quotient_only", node.quotient_only.to_string(), q.to_string()));
    }
    Ok(())
}

fn parse_family(expr: &str) -> Result<Family, String> {
    match parse_expr(&format!("(prod-omega {expr})")) {
        Ok(SpaceExpr::ProdOmega(f)) => Ok(f),
        Ok(_) => unreachable!(),
        Err(e) => Err(format!("cannot parse family: {e}")),
    }
}

fn recompute(rule: Rule, node: &TraceNode, atoms: &AtomTable) -> Result<(Pointclass, Pointclass, bool), String> {
    let ins = &node.inputs;
    let arity = |n: usize| -> Result<(), String> {
        if ins.len() == n {
            Ok(())
        } else {
            Err(format!("expected {n} inputs, found {}", ins.len()))
        }
    };
    let same = |i: &TraceNode| (i.output.clone(), i.dom.clone(), i.quotient_only);
    Ok(match rule {
        Rule::Atom => {
            arity(0)?;
            let e = parse_expr(&node.expr).map_err(|e| e.to_string())?;
            let key = atom_key(&e).ok_or("not an atom")?;
            let entry = atoms.get(key).ok_or_else(|| format!("no atom entry for {key}"))?;
            (entry.eq.clone(), entry.dom.clone(), false)
        }
        Rule::Sugar | Rule::FamilyUniform | Rule::CoequalizerTrivial => {
            arity(1)?;
            same(&ins[0])
        }
        Rule::Exp => {
            arity(2)?;
            let c = exp_bound(&ins[0].output, &ins[1].output);
            (c.clone(), c, false)
        }
        Rule::RkOne => {
            arity(0)?;
            (Pointclass::Pi0(2), Pointclass::Pi0(2), false)
        }
        Rule::Prod | Rule::Coprod => {
            if ins.is_empty() {
                return Err("no inputs".into());
            }
            let eq = Pointclass::join_all(ins.iter().map(|i| &i.output)).unwrap();
            let dom = Pointclass::join_all(ins.iter().map(|i| &i.dom)).unwrap();
            (eq, dom, ins.iter().any(|i| i.quotient_only))
        }
        Rule::ProdOmega => {
            arity(1)?;
            (ins[0].output.close_delta(), ins[0].dom.close_delta(), ins[0].quotient_only)
        }
        Rule::CoprodOmega => {
            arity(1)?;
            (ins[0].output.close_sigma(), ins[0].dom.close_sigma(), ins[0].quotient_only)
        }
        Rule::FamilyCofinal => {
            let Family::Template { var, body } = parse_family(&node.expr)? else {
                return Err("expected a template".into());
            };
            let mut eq = Pointclass::SigmaBelow(cofinal_limit(&body, &var));
            let mut dom = eq.clone();
            for i in ins {
                eq = eq.join(&i.output);
                dom = dom.join(&i.dom);
            }
            (eq, dom, ins.iter().any(|i| i.quotient_only))
        }
        Rule::Below => {
            arity(0)?;
            let Family::Below(l, _) = parse_family(&node.expr)? else {
                return Err("expected (below l nk|rk)".into());
            };
            let c = Pointclass::SigmaBelow(l);
            (c.clone(), c, false)
        }
        Rule::Equalizer => {
            arity(2)?;
            let dom = ins[0].dom.join(&ins[1].output.preimage_pi02());
            (ins[0].output.clone(), dom, ins[0].quotient_only)
        }
        Rule::Coequalizer => {
            arity(2)?;
            (coequalizer_bound(&ins[0].output, &ins[1].output), ins[1].dom.clone(), true)
        }
        Rule::T0 => {
            arity(1)?;
            let c = t0_bound(&ins[0].output);
            (c.clone(), c, false)
        }
        Rule::Retract => {
            arity(1)?;
            (ins[0].output.clone(), ins[0].dom.join(&ins[0].output), ins[0].quotient_only)
        }
        Rule::HomeoNormalize => {
            arity(2)?;
            (ins[1].output.clone(), ins[1].dom.clone(), false)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(s: &str) -> Classification {
        Classifier::default().classify(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn tower_table() {
        for (e, want) in [
            ("(nk 0)", "Pi0[1]"),
            ("(nk 1)", "Pi0[1]"),
            ("(nk 2)", "Pi1[1]"),
            ("(nk 5)", "Pi1[4]"),
            ("(nk w)", "SigmaBelowDelta[w]"),
            ("(nk w+1)", "Pi1[w]"),
            ("(nk w^2)", "SigmaBelowDelta[w^2]"),
            ("(rk 1)", "Pi0[2]"),
            ("(rk 3)", "Pi1[2]"),
            ("sierpinski", "BoolOpen"),
        ] {
            assert_eq!(classify(e).eq_bound.to_string(), want, "{e}");
        }
    }

    #[test]
    fn lower_bounds() {
        let c = classify("(nk 2)");
        assert_eq!(c.lower.unwrap().not.to_string(), "Sigma1[1]");
        assert_eq!(classify("(nk w*2)").lower.unwrap().not.to_string(), "SigmaBelowSigma[w*2]");
        assert!(classify("(nk 1)").lower.is_none());
        assert!(classify("(prod (nk 2) (nk 2))").lower.is_none());
        assert_eq!(classify("(exp omega (nk 2))").lower.unwrap().not.to_string(), "Sigma1[2]");
    }

    #[test]
    fn combinators() {
        assert_eq!(classify("(exp baire (nk 2))").eq_bound.to_string(), "Pi1[2]");
        assert_eq!(classify("(prod-omega (family (k) (nk 2)))").eq_bound.to_string(), "Pi1[1]");
        assert_eq!(classify("(coprod-omega (family (k) (nk 3)))").eq_bound.to_string(), "Pi1[2]");
        assert_eq!(classify("(prod-omega (family (k) baire))").eq_bound.to_string(), "Pi0[1]");
        assert_eq!(classify("(coprod-omega (family (k) (nk k)))").eq_bound.to_string(), "SigmaBelowSigma[w]");
        let c = classify("(coequalizer baire baire id const0)");
        assert!(c.quotient_only);
        assert_eq!(c.eq_bound.to_string(), "Sigma1[1]");
        let c = classify("(coequalizer baire baire id id)");
        assert!(!c.quotient_only);
        assert_eq!(c.trace.rule, "coequalizer-trivial");
        assert_eq!(classify("(t0 (coequalizer (nk 2) (nk 2) id const0))").eq_bound.to_string(), "Sigma1[4]");
        let c = classify("(equalizer baire id const0)");
        assert_eq!((c.eq_bound.to_string(), c.dom_bound.to_string()), ("Pi0[1]".into(), "Pi0[2]".into()));
        assert_eq!(classify("(retract (nk 3) nk@1)").eq_bound.to_string(), "Pi1[2]");
        assert_eq!(classify("(retract baire head)").eq_bound.to_string(), "Pi0[1]");
    }

    #[test]
    fn errors() {
        let k = Classifier::default();
        let p = |s: &str| parse_expr(s).unwrap();
        assert!(matches!(k.classify(&p("(equalizer baire pw-f pw-g)")), Err(RepError::Signature(_))));
        assert!(matches!(k.classify(&p("(equalizer baire id frob)")), Err(RepError::UnknownMap(_))));
        assert!(matches!(k.classify(&p("(retract omega head)")), Err(RepError::Witness { .. })));
        assert!(matches!(k.classify(&p("(retract (nk 2) nk@w)")), Err(RepError::Witness { .. })));
        assert!(matches!(
            k.classify(&p("(exp (coequalizer baire baire id const0) omega)")),
            Err(RepError::QuotientBase(_))
        ));
        let capped = Classifier::new(AtomTable::standard(), Cap(Some("w".parse().unwrap())));
        assert!(matches!(capped.classify(&p("(nk w)")), Err(RepError::CapOverflow { .. })));
        assert!(capped.classify(&p("(nk 7)")).is_ok());
        assert!(matches!(
            capped.classify(&p("(prod-omega (family (k) (nk k)))")),
            Err(RepError::CapOverflow { .. })
        ));
    }

    #[test]
    fn normalization_tightens_only_at_the_bottom() {
        assert_eq!(classify("(exp baire omega)").eq_bound.to_string(), "Pi0[1]");
        assert_eq!(classify("(exp (nk 3) (nk 2))").eq_bound.to_string(), "Pi1[2]");
        assert_eq!(classify("(exp (nk 3) (nk 2))").trace.rule, "homeo-normalize");
    }

    #[test]
    fn replay_detects_a_corrupted_atom_table() {
        let c = classify("(t0 (coequalizer baire baire id const0))");
        let atoms = AtomTable::standard();
        replay(&c.trace, &atoms).unwrap();
        let bad = atoms.with("baire", Pointclass::Pi1(Ordinal::nat(1)), Pointclass::Pi0(1));
        assert!(matches!(replay(&c.trace, &bad), Err(ReplayError::Bound { .. })));
        let mut forged = c.trace.clone();
        forged.output = Pointclass::Sigma1(Ordinal::nat(2));
        assert!(replay(&forged, &atoms).is_err());
    }
}
