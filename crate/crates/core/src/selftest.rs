//! The bundled invariant suites, run in a fixed order with a fixed seed so
//! that the JSON report is reproducible byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baire::{
    build_strategy, delta0, encode_strategy, eval_universal, pair_nat, pair_points, prefix_of, run_strategy,
    tuple_points, unpair_nat, BairePoint, EvalOutcome, Fuel, StrategySpec, TableSpec,
};
use crate::functionals::{
    check_homeo, check_retract, eval_functional, homeo_exponent, homeo_product, homeo_swap, retract_witness,
    FunOutcome, Homeo,
};
use crate::ordinals::{enumerate_below, Ordinal};
use crate::pointclass::Pointclass;
use crate::repcalc::diag::{diagonalize, DiagSpec};
use crate::repcalc::names::{apply, curry};
use crate::repcalc::{parse_expr, replay, AtomTable, Classifier, SpaceExpr};

/// Strategy and diagonalization files shipped with the crate.
pub mod bundled {
    pub const STRATEGIES: &[(&str, &str)] = &[
        ("const-7", include_str!("../data/strategies/const-7.json")),
        ("head-successor", include_str!("../data/strategies/head-successor.json")),
        ("arg-4", include_str!("../data/strategies/arg-4.json")),
    ];

    pub const DIAGONALIZE: &[(&str, &str)] = &[
        ("constant-zero", include_str!("../data/diagonalize/constant-zero.json")),
        ("head", include_str!("../data/diagonalize/head.json")),
    ];

    pub fn strategy(name: &str) -> Option<&'static str> {
        STRATEGIES.iter().chain(DIAGONALIZE).find(|(n, _)| *n == name).map(|(_, s)| *s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite { name: name.to_string(), checks: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub fuel: u64,
    /// Atom table the classifier under test is built from.
    pub atoms: AtomTable,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 25, fuel: 100_000, atoms: AtomTable::standard() }
    }
}

pub fn run(opts: &Options) -> Report {
    let suites = vec![
        ordinals(opts.seed),
        pairing(),
        universal(opts.seed),
        lattice(opts.seed),
        classifier_table(&opts.atoms),
        trace_soundness(&opts.atoms),
        negative_control(),
        normalization(&opts.atoms),
        evaluation(),
        homeomorphisms(opts),
        diagonalization(opts),
    ];
    let passed = suites.iter().all(Suite::passed);
    Report { seed: opts.seed, suites, passed }
}

fn o(s: &str) -> Ordinal {
    s.parse().expect("ordinal literal")
}

fn ordinals(seed: u64) -> Suite {
    let mut s = Suite::new("ordinals");
    let lambda = o("w^w");
    let e = enumerate_below(&lambda).expect("limit");
    for k in 0..2000 {
        let a = e.nth(k);
        s.check(a < lambda, || format!("nth({k}) = {a} not below {lambda}"));
        s.check(e.index_of(&a) == Ok(k), || format!("index_of(nth({k})) != {k}"));
        s.check(a.to_string().parse::<Ordinal>() == Ok(a.clone()), || format!("{a} does not reparse"));
        s.check(a.succ().pred() == Some(a.clone()), || format!("pred(succ({a})) != {a}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let [a, b, c] = [(); 3].map(|_| e.nth(rng.gen_range(0..500)));
        s.check(a.add(&b).add(&c) == a.add(&b.add(&c)), || format!("({a}+{b})+{c} != {a}+({b}+{c})"));
        if a <= b {
            s.check(c.add(&a) <= c.add(&b), || format!("{c}+{a} > {c}+{b}"));
            s.check(a.add(&c) <= b.add(&c), || format!("{a}+{c} > {b}+{c}"));
        }
    }
    s
}

fn pairing() -> Suite {
    let mut s = Suite::new("pairing");
    for m in 0..100 {
        for n in 0..100 {
            s.check(unpair_nat(pair_nat(m, n)) == (m, n), || format!("unpair(pair({m},{n}))"));
        }
    }
    let t = tuple_points(std::sync::Arc::new(BairePoint::constant));
    let mut fuel = Fuel::unlimited();
    for m in 0..50 {
        for n in 0..50 {
            s.check(t.at(pair_nat(m, n), &mut fuel) == Ok(m), || format!("tuple at pair({m},{n})"));
        }
    }
    s
}

/// A total table strategy: one entry per output index below 6, then a default.
pub fn random_table(rng: &mut ChaCha8Rng) -> StrategySpec {
    let entries = (0..6)
        .map(|i| {
            let len = rng.gen_range(0..4);
            let prefix = (0..len).map(|_| rng.gen_range(0..3)).collect();
            (i, prefix, rng.gen_range(0..10))
        })
        .collect();
    StrategySpec::Table(TableSpec { entries, default: Some(rng.gen_range(0..10)) })
}

fn universal(seed: u64) -> Suite {
    let mut s = Suite::new("universal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
    for t in 0..100 {
        let spec = random_table(&mut rng);
        let f = build_strategy(&spec).expect("tables without conflicts");
        let x: Vec<u64> = (0..40).map(|_| rng.gen_range(0..3)).collect();
        let direct: Vec<Option<u64>> = (0..32).map(|n| run_strategy(f.as_ref(), &x, n)).collect();
        let got = eval_universal(&encode_strategy(f), &BairePoint::from_prefix(x), 32, &mut Fuel::new(1_000_000));
        let ok = matches!(&got, EvalOutcome::Determined { values } if values.iter().map(|v| Some(*v)).eq(direct.iter().copied()));
        s.check(ok, || format!("extension, table {t}: {got:?}"));
    }
    for t in 0..100 {
        let spec = random_table(&mut rng);
        let f = build_strategy(&spec).expect("tables without conflicts");
        let p: Vec<u64> = (0..20).map(|_| rng.gen_range(0..3)).collect();
        let q: Vec<u64> = (0..20).map(|_| rng.gen_range(0..3)).collect();
        let pq: Vec<u64> = p.iter().zip(&q).flat_map(|(a, b)| [*a, *b]).collect();
        let direct: Vec<Option<u64>> = (0..16).map(|n| run_strategy(f.as_ref(), &pq, n)).collect();
        let gp = apply(curry(f), BairePoint::from_prefix(p));
        let got = eval_universal(&gp, &BairePoint::from_prefix(q), 16, &mut Fuel::new(10_000_000));
        let ok = matches!(&got, EvalOutcome::Determined { values } if values.iter().map(|v| Some(*v)).eq(direct.iter().copied()));
        s.check(ok, || format!("currying, table {t}: {got:?}"));
    }
    s
}

/// An ordinal `w^2*a + w*b + c` below `w^2*3`.
fn small_ordinal(rng: &mut ChaCha8Rng) -> Ordinal {
    let (a, b, c) = (rng.gen_range(0..3), rng.gen_range(0..4), rng.gen_range(0..4));
    let terms = [(2, a), (1, b), (0, c)].into_iter().filter(|t| t.1 > 0).map(|(e, k)| (Ordinal::nat(e), k)).collect();
    Ordinal::from_terms(terms).expect("decreasing exponents")
}

pub fn random_class(rng: &mut ChaCha8Rng) -> Pointclass {
    use Pointclass as C;
    let a = small_ordinal(rng);
    match rng.gen_range(0..10) {
        0 => [C::Sigma0(1), C::Pi0(1), C::Sigma0(2), C::Pi0(2), C::BoolOpen][rng.gen_range(0..5)].clone(),
        1 | 2 => C::Delta1(a),
        3 | 4 => C::sigma1(a),
        5 | 6 => C::pi1(a),
        k => {
            let l = if a.is_limit() { a } else { a.split_finite().0.plus_omega() };
            [C::SigmaBelow(l.clone()), C::SigmaBelowSigma(l.clone()), C::SigmaBelowDelta(l)][k - 7].clone()
        }
    }
}

fn lattice(seed: u64) -> Suite {
    let mut s = Suite::new("lattice");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1a77);
    type Op = (&'static str, fn(&Pointclass) -> Pointclass);
    let ops: [Op; 7] = [
        ("close_sigma", Pointclass::close_sigma),
        ("close_delta", Pointclass::close_delta),
        ("exists", Pointclass::exists),
        ("forall", Pointclass::forall),
        ("complement", Pointclass::complement),
        ("diff", Pointclass::diff),
        ("preimage_pi02", Pointclass::preimage_pi02),
    ];
    for _ in 0..10_000 {
        let (x, y, z) = (random_class(&mut rng), random_class(&mut rng), random_class(&mut rng));
        s.check(x.leq(&x), || format!("{x} not <= itself"));
        if x.leq(&y) && y.leq(&x) {
            s.check(x.normalize() == y.normalize(), || format!("{x} <= {y} <= {x} but distinct"));
        }
        if x.leq(&y) && y.leq(&z) {
            s.check(x.leq(&z), || format!("{x} <= {y} <= {z} but not {x} <= {z}"));
        }
        let j = x.join(&y);
        s.check(x.leq(&j) && y.leq(&j), || format!("join({x},{y}) = {j} is not an upper bound"));
        if x.leq(&z) && y.leq(&z) {
            s.check(j.leq(&z), || format!("join({x},{y}) = {j} above the bound {z}"));
        }
        if x.leq(&y) {
            for (name, op) in &ops {
                s.check(op(&x).leq(&op(&y)), || format!("{name} not monotone on {x} <= {y}"));
            }
        }
        let n = x.normalize();
        s.check(n.normalize() == n, || format!("normalize not idempotent at {x}"));
        s.check(n.to_string().parse::<Pointclass>() == Ok(n.clone()), || format!("{n} does not reparse"));
    }
    s
}

/// Successor levels `2 <= a <= w*2+3` checked against the table.
pub const TABLE_SUCCESSORS: &[&str] = &[
    "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "20", "w+1", "w+2", "w+3", "w+4", "w+5", "w+6", "w*2+1",
    "w*2+2", "w*2+3",
];

pub const TABLE_LIMITS: &[&str] = &["w", "w*2", "w^2"];

fn classifier_table(atoms: &AtomTable) -> Suite {
    let mut s = Suite::new("classifier-table");
    let k = Classifier::new(atoms.clone(), Default::default());
    let classify = |e: SpaceExpr| k.classify(&e);
    for a in TABLE_SUCCESSORS {
        let a = o(a);
        let p = a.pred().expect("successor");
        match classify(SpaceExpr::nk(a.clone())) {
            Ok(c) => {
                s.check(c.eq_bound == Pointclass::pi1(p.clone()), || format!("(nk {a}): {}", c.eq_bound));
                let lower = c.lower.as_ref().map(|l| (l.not.clone(), l.rule.as_str()));
                s.check(lower == Some((Pointclass::Sigma1(p), "lower-successor")), || format!("(nk {a}): lower {lower:?}"));
            }
            Err(e) => s.check(false, || format!("(nk {a}): {e}")),
        }
        match classify(SpaceExpr::rk(a.clone())) {
            Ok(c) => {
                let p = a.pred().expect("successor");
                s.check(c.eq_bound == Pointclass::pi1(p), || format!("(rk {a}): {}", c.eq_bound));
            }
            Err(e) => s.check(false, || format!("(rk {a}): {e}")),
        }
    }
    for l in TABLE_LIMITS {
        let l = o(l);
        match classify(SpaceExpr::nk(l.clone())) {
            Ok(c) => {
                s.check(c.eq_bound == Pointclass::SigmaBelowDelta(l.clone()), || format!("(nk {l}): {}", c.eq_bound));
                let lower = c.lower.as_ref().map(|l| (l.not.clone(), l.rule.as_str()));
                s.check(lower == Some((Pointclass::SigmaBelowSigma(l.clone()), "lower-limit")), || {
                    format!("(nk {l}): lower {lower:?}")
                });
            }
            Err(e) => s.check(false, || format!("(nk {l}): {e}")),
        }
    }
    for a in ["0", "1"] {
        match classify(SpaceExpr::nk(o(a))) {
            Ok(c) => {
                s.check(c.eq_bound == Pointclass::Pi0(1), || format!("(nk {a}): {}", c.eq_bound));
                s.check(c.lower.is_none(), || format!("(nk {a}) has a lower bound"));
            }
            Err(e) => s.check(false, || format!("(nk {a}): {e}")),
        }
    }
    s
}

/// Expressions with their expected bounds, classified and replayed.
pub const TRACE_CORPUS: &[(&str, &str)] = &[
    ("omega", "Pi0[1]"),
    ("baire", "Pi0[1]"),
    ("sierpinski", "BoolOpen"),
    ("(nk 2)", "Pi1[1]"),
    ("(nk w+1)", "Pi1[w]"),
    ("(nk w)", "SigmaBelowDelta[w]"),
    ("(rk 3)", "Pi1[2]"),
    ("(prod (nk 2) baire)", "Pi1[1]"),
    ("(exp baire (nk 2))", "Pi1[2]"),
    ("(exp (nk 3) (nk 2))", "Pi1[2]"),
    ("(prod-omega (family (k) (nk k)))", "SigmaBelowDelta[w]"),
    ("(coprod-omega (family (k) (nk 3)))", "Pi1[2]"),
    ("(t0 (coequalizer baire baire id const0))", "Sigma1[3]"),
    ("(retract (nk 3) nk@1)", "Pi1[2]"),
    ("(equalizer baire id const0)", "Pi0[1]"),
    ("(hyper-o (nk 1))", "Pi1[1]"),
];

fn trace_soundness(atoms: &AtomTable) -> Suite {
    let mut s = Suite::new("trace-soundness");
    let k = Classifier::new(atoms.clone(), Default::default());
    let reference = AtomTable::standard();
    for (text, expected) in TRACE_CORPUS {
        let c = match parse_expr(text).map_err(|e| e.to_string()).and_then(|e| k.classify(&e).map_err(|e| e.to_string())) {
            Ok(c) => c,
            Err(e) => {
                s.check(false, || format!("{text}: {e}"));
                continue;
            }
        };
        s.check(c.eq_bound.to_string() == *expected, || format!("{text}: {} (expected {expected})", c.eq_bound));
        let r = replay(&c.trace, &reference);
        s.check(r.is_ok(), || format!("{text}: replay: {}", r.unwrap_err()));
        let json = serde_json::to_string(&c.trace).expect("trace serializes");
        let back = serde_json::from_str::<crate::repcalc::TraceNode>(&json).map(|t| t == c.trace).unwrap_or(false);
        s.check(back, || format!("{text}: trace does not round-trip through JSON"));
    }
    s
}

/// A corrupted atom table must be caught by the trace-soundness suite.
pub fn corrupted_atoms() -> AtomTable {
    AtomTable::standard().with("baire", Pointclass::Sigma1(Ordinal::nat(1)), Pointclass::Pi0(1))
}

fn negative_control() -> Suite {
    let mut s = Suite::new("negative-control");
    let corrupted = trace_soundness(&corrupted_atoms());
    s.check(!corrupted.passed(), || "corrupted baire atom went unnoticed".into());
    s
}

fn normalization(atoms: &AtomTable) -> Suite {
    let mut s = Suite::new("normalization");
    let k = Classifier::new(atoms.clone(), Default::default());
    let levels = ["0", "1", "2", "3", "w", "w+1"];
    for a in levels {
        for b in levels {
            let (a, b) = (o(a), o(b));
            if crate::functionals::exponent_plan(&a, &b).is_err() {
                continue;
            }
            let top = a.clone().max(b.succ());
            let lhs = k.classify(&SpaceExpr::exp(SpaceExpr::nk(a.clone()), SpaceExpr::nk(b.clone())));
            let rhs = k.classify(&SpaceExpr::nk(top.clone()));
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l.eq_bound == r.eq_bound && l.lower == r.lower);
            s.check(ok, || format!("(exp (nk {a}) (nk {b})) vs (nk {top})"));
        }
    }
    s
}

fn evaluation() -> Suite {
    let mut s = Suite::new("evaluation");
    let load = |name: &str| -> StrategySpec {
        serde_json::from_str(bundled::strategy(name).expect("bundled")).expect("bundled strategy parses")
    };
    let name = |spec: &StrategySpec| encode_strategy(build_strategy(spec).expect("bundled strategy builds"));
    let two = Ordinal::nat(2);
    let arg = crate::baire::apply_strategy(build_strategy(&load("arg-4")).expect("builds"), BairePoint::zeros());
    let mut fuel = Fuel::new(100_000);
    let seven = eval_functional(&name(&load("const-7")), &two, &BairePoint::from_fn(|i| i * 3), &mut fuel);
    s.check(seven == Ok(FunOutcome::Value { value: 7 }), || format!("const-7: {seven:?}"));
    let five = eval_functional(&name(&load("head-successor")), &two, &arg, &mut fuel);
    s.check(five == Ok(FunOutcome::Value { value: 5 }), || format!("head-successor on 4: {five:?}"));
    let starved = eval_functional(&name(&load("head-successor")), &two, &arg, &mut Fuel::new(0));
    s.check(matches!(starved, Ok(FunOutcome::Exhausted { .. })), || format!("fuel 0: {starved:?}"));
    s
}

fn homeomorphisms(opts: &Options) -> Suite {
    let mut s = Suite::new("homeomorphisms");
    let mut fuel = Fuel::unlimited();
    let swap = homeo_swap(&Ordinal::nat(1)).expect("swap at 1");
    let img = (swap.forward)(&pair_points(delta0(2), BairePoint::zeros()));
    let img = prefix_of(&img, 8, &mut fuel);
    s.check(img == Ok(vec![5; 8]), || format!("phi(2, 0^w) = {img:?}"));
    let back = (swap.backward)(&BairePoint::constant(5));
    let (n, f) = crate::baire::unpair_points(back);
    let got = (n.at(0, &mut fuel), prefix_of(&f, 8, &mut fuel));
    s.check(got == (Ok(2), Ok(vec![0; 8])), || format!("psi(5^w) = {got:?}"));

    let mut witnesses: Vec<(String, Result<Homeo, _>)> = Vec::new();
    for a in ["1", "2"] {
        witnesses.push((format!("swap {a}"), homeo_swap(&o(a))));
    }
    for (a, b) in [("1", "2"), ("0", "2"), ("2", "w")] {
        witnesses.push((format!("product {a} {b}"), homeo_product(&o(a), &o(b))));
    }
    for (a, b) in [("0", "2"), ("1", "0"), ("1", "1")] {
        witnesses.push((format!("exponent {a} {b}"), homeo_exponent(&o(a), &o(b))));
    }
    for (label, w) in witnesses {
        match w {
            Ok(h) => {
                let r = check_homeo(&h, opts.samples, opts.seed, opts.fuel);
                s.check(r.ok && r.determined > 0, || format!("{label}: {r:?}"));
            }
            Err(e) => s.check(false, || format!("{label}: {e}")),
        }
    }
    for (a, b) in [("0", "1"), ("1", "2")] {
        match retract_witness(&o(a), &o(b)) {
            Ok(w) => {
                let r = check_retract(&w, opts.samples, opts.seed, opts.fuel);
                s.check(r.ok && r.determined > 0, || format!("retract {a} {b}: {r:?}"));
            }
            Err(e) => s.check(false, || format!("retract {a} {b}: {e}")),
        }
    }
    s
}

fn diagonalization(opts: &Options) -> Suite {
    let mut s = Suite::new("diagonalization");
    for (name, text) in bundled::DIAGONALIZE {
        let spec: DiagSpec = serde_json::from_str(text).expect("bundled example parses");
        match diagonalize(&spec, opts.samples, opts.seed, opts.fuel) {
            Ok((_, c)) => s.check(c.holds && c.determined > 0, || format!("{name}: {c:?}")),
            Err(e) => s.check(false, || format!("{name}: {e}")),
        }
    }
    s
}
