//! Acceptance gate: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use hyperrep::baire::{
    build_strategy, encode_strategy, eval_universal, pair_nat, pair_points, prefix_of, project, tuple_points,
    unpair_nat, unpair_points, BairePoint, EvalOutcome, Fuel, StrategySpec, TableSpec, delta0,
};
use hyperrep::functionals::{check_homeo, homeo_exponent, homeo_product, homeo_swap, Homeo};
use hyperrep::ordinals::Ordinal;
use hyperrep::pointclass::Pointclass;
use hyperrep::repcalc::diag::{diagonalize, DiagSpec};
use hyperrep::repcalc::names::{apply, curry};
use hyperrep::repcalc::rules::lower_cite;
use hyperrep::repcalc::{parse_expr, replay, AtomTable, Classifier, LowerBound, TraceNode};

type Outcome = Result<String, String>;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cantor(m: u64, n: u64) -> u64 {
    (m + n) * (m + n + 1) / 2 + m
}

fn pairing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (m, n) = (rng.gen_range(0..1u64 << 24), rng.gen_range(0..1u64 << 24));
        let k = pair_nat(m, n);
        ensure(k == cantor(m, n), || format!("pair({m},{n}) = {k}"))?;
        ensure(unpair_nat(k) == (m, n), || format!("unpair({k}) = {:?}", unpair_nat(k)))?;
    }
    let xs = |m: u64| BairePoint::from_fn(move |n| 1000 * m + n * n);
    let z = tuple_points(Arc::new(xs));
    let mut fuel = Fuel::unlimited();
    for m in 0..50 {
        let zm = project(z.clone(), m);
        for n in 0..50 {
            let want = 1000 * m + n * n;
            ensure(z.at(cantor(m, n), &mut fuel) == Ok(want), || format!("<x_i>(<{m},{n}>)"))?;
            ensure(zm.at(n, &mut fuel) == Ok(want), || format!("pi_{m}(<x_i>)({n})"))?;
        }
    }
    Ok("10000 pairs, tupling for m,n < 50".into())
}

/// A table with one entry per output index below 32, so entries never clash.
fn table(rng: &mut ChaCha8Rng) -> (Vec<(u64, Vec<u64>, u64)>, u64) {
    let mut entries = Vec::new();
    for i in 0..32 {
        if rng.gen_bool(0.7) {
            let prefix = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..2)).collect();
            entries.push((i, prefix, rng.gen_range(0..20)));
        }
    }
    (entries, rng.gen_range(0..20))
}

fn table_oracle(entries: &[(u64, Vec<u64>, u64)], default: u64, x: &[u64], n: u64) -> u64 {
    entries.iter().find(|(i, p, _)| *i == n && x.starts_with(p)).map_or(default, |e| e.2)
}

fn universal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 0..100 {
        let (entries, default) = table(&mut rng);
        let x: Vec<u64> = (0..40).map(|_| rng.gen_range(0..2)).collect();
        let want: Vec<u64> = (0..32).map(|n| table_oracle(&entries, default, &x, n)).collect();
        let f = build_strategy(&StrategySpec::Table(TableSpec { entries, default: Some(default) })).unwrap();
        let got = eval_universal(&encode_strategy(f), &BairePoint::from_prefix(x), 32, &mut Fuel::new(10_000_000));
        ensure(got == EvalOutcome::Determined { values: want }, || format!("extension, table {t}: {got:?}"))?;
    }
    for t in 0..100 {
        let (entries, default) = table(&mut rng);
        let x: Vec<u64> = (0..20).map(|_| rng.gen_range(0..2)).collect();
        let y: Vec<u64> = (0..20).map(|_| rng.gen_range(0..2)).collect();
        let xy: Vec<u64> = x.iter().zip(&y).flat_map(|(a, b)| [*a, *b]).collect();
        let want: Vec<u64> = (0..16).map(|n| table_oracle(&entries, default, &xy, n)).collect();
        let f = build_strategy(&StrategySpec::Table(TableSpec { entries, default: Some(default) })).unwrap();
        let g = apply(curry(f), BairePoint::from_prefix(x));
        let got = eval_universal(&g, &BairePoint::from_prefix(y), 16, &mut Fuel::new(10_000_000));
        ensure(got == EvalOutcome::Determined { values: want }, || format!("currying, table {t}: {got:?}"))?;
    }
    Ok("100 extensions at depth 32, 100 curried samples".into())
}

fn classifier() -> Outcome {
    let k = Classifier::default();
    let classify = |s: &str| k.classify(&parse_expr(s).unwrap()).map_err(|e| format!("{s}: {e}"));
    let successors = [
        "2", "3", "4", "5", "6", "7", "8", "9", "10", "13", "17", "w+1", "w+2", "w+3", "w+4", "w+7", "w*2+1", "w*2+2",
        "w*2+3", "w+5", "15",
    ];
    for a in successors {
        let p = o(a).pred().unwrap();
        let c = classify(&format!("(nk {a})"))?;
        ensure(c.eq_bound == Pointclass::Pi1(p.clone()), || format!("(nk {a}): {}", c.eq_bound))?;
        let l = c.lower.ok_or_else(|| format!("(nk {a}): no lower bound"))?;
        ensure(l.not == Pointclass::Sigma1(p.clone()), || format!("(nk {a}): not {}", l.not))?;
        ensure(lower_cite(&l.rule) == Some(l.cite.as_str()), || format!("(nk {a}): cite {:?}", l.cite))?;
        let r = classify(&format!("(rk {a})"))?;
        ensure(r.eq_bound == Pointclass::Pi1(p), || format!("(rk {a}): {}", r.eq_bound))?;
    }
    for l in ["w", "w*2", "w^2"] {
        let c = classify(&format!("(nk {l})"))?;
        ensure(c.eq_bound == Pointclass::SigmaBelowDelta(o(l)), || format!("(nk {l}): {}", c.eq_bound))?;
        let low = c.lower.ok_or_else(|| format!("(nk {l}): no lower bound"))?;
        ensure(low.not == Pointclass::SigmaBelowSigma(o(l)), || format!("(nk {l}): not {}", low.not))?;
        ensure(lower_cite(&low.rule) == Some(low.cite.as_str()), || format!("(nk {l}): cite {:?}", low.cite))?;
    }
    for a in ["0", "1"] {
        let c = classify(&format!("(nk {a})"))?;
        ensure(c.eq_bound == Pointclass::Pi0(1) && c.lower.is_none(), || format!("(nk {a}): {}", c.eq_bound))?;
    }
    Ok(format!("{} successors, 3 limits, 2 atom levels", successors.len()))
}

#[derive(Serialize, Deserialize)]
struct Frozen {
    expr: String,
    eq_bound: Pointclass,
    dom_bound: Pointclass,
    quotient_only: bool,
    lower: Option<LowerBound>,
    trace: TraceNode,
}

fn golden() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden");
    let k = Classifier::default();
    let names = ["nk-2", "nk-omega", "t0-coequalizer", "exp-normalize", "family-nk"];
    for name in names {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        let f: Frozen = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
        replay(&f.trace, &AtomTable::standard()).map_err(|e| format!("{name}: replay: {e}"))?;
        ensure(serde_json::to_string_pretty(&f).unwrap() + "\n" == text, || format!("{name}: reserialized bytes differ"))?;
        let c = k.classify(&parse_expr(&f.expr).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        ensure(serde_json::to_string_pretty(&c).unwrap() + "\n" == text, || format!("{name}: fresh trace differs"))?;
    }
    Ok(format!("{} frozen traces", names.len()))
}

fn homeomorphisms() -> Outcome {
    let mut cases: Vec<(String, Homeo)> = Vec::new();
    for a in ["1", "2"] {
        cases.push((format!("swap {a}"), homeo_swap(&o(a)).map_err(|e| e.to_string())?));
    }
    cases.push(("product 1 2".into(), homeo_product(&o("1"), &o("2")).map_err(|e| e.to_string())?));
    for (a, b) in [("0", "0"), ("0", "1"), ("0", "2"), ("1", "0")] {
        cases.push((format!("exponent {a} {b}"), homeo_exponent(&o(a), &o(b)).map_err(|e| e.to_string())?));
    }
    let mut determined = 0;
    for (label, h) in &cases {
        let r = check_homeo(h, 25, 0, 100_000);
        ensure(r.ok && r.passed == r.determined && r.determined > 0, || format!("{label}: {r:?}"))?;
        determined += r.determined;
    }
    let swap = homeo_swap(&o("1")).unwrap();
    let mut fuel = Fuel::unlimited();
    let img = prefix_of(&(swap.forward)(&pair_points(delta0(2), BairePoint::zeros())), 8, &mut fuel);
    ensure(img == Ok(vec![5; 8]), || format!("phi(2, 0^w) = {img:?}"))?;
    let (n, f) = unpair_points((swap.backward)(&BairePoint::constant(5)));
    let back = (n.at(0, &mut fuel), prefix_of(&f, 8, &mut fuel));
    ensure(back == (Ok(2), Ok(vec![0; 8])), || format!("psi(5^w) = {back:?}"))?;
    Ok(format!("{} cases, {determined} determined samples pass", cases.len()))
}

fn small_ordinal(rng: &mut ChaCha8Rng) -> Ordinal {
    let terms = [(2, rng.gen_range(0..3)), (1, rng.gen_range(0..4)), (0, rng.gen_range(0..4))]
        .into_iter()
        .filter(|t| t.1 > 0)
        .map(|(e, k)| (Ordinal::nat(e), k))
        .collect();
    Ordinal::from_terms(terms).unwrap()
}

fn class(rng: &mut ChaCha8Rng) -> Pointclass {
    use Pointclass as C;
    let a = small_ordinal(rng);
    let limit = |a: Ordinal| if a.is_limit() { a } else { a.split_finite().0.plus_omega() };
    match rng.gen_range(0..9) {
        0 => [C::Sigma0(1), C::Pi0(1), C::Sigma0(2), C::Pi0(2), C::BoolOpen][rng.gen_range(0..5)].clone(),
        1 => C::Delta1(a),
        2 | 3 => C::Sigma1(a),
        4 | 5 => C::Pi1(a),
        6 => C::SigmaBelow(limit(a)),
        7 => C::SigmaBelowSigma(limit(a)),
        _ => C::SigmaBelowDelta(limit(a)),
    }
}

fn lattice() -> Outcome {
    let ops: [(&str, fn(&Pointclass) -> Pointclass); 7] = [
        ("close_sigma", Pointclass::close_sigma),
        ("close_delta", Pointclass::close_delta),
        ("exists", Pointclass::exists),
        ("forall", Pointclass::forall),
        ("complement", Pointclass::complement),
        ("diff", Pointclass::diff),
        ("preimage_pi02", Pointclass::preimage_pi02),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut comparable = 0;
    for _ in 0..10_000 {
        let (x, y, z) = (class(&mut rng), class(&mut rng), class(&mut rng));
        ensure(x.leq(&x), || format!("{x} <= {x}"))?;
        if x.leq(&y) && y.leq(&x) {
            ensure(x.normalize() == y.normalize(), || format!("antisymmetry: {x}, {y}"))?;
        }
        if x.leq(&y) && y.leq(&z) {
            ensure(x.leq(&z), || format!("transitivity: {x} {y} {z}"))?;
        }
        if x.leq(&y) {
            comparable += 1;
            for (name, op) in ops {
                ensure(op(&x).leq(&op(&y)), || format!("{name} not monotone on {x} <= {y}"))?;
            }
        }
        let n = x.normalize();
        ensure(n.normalize() == n && n.leq(&x) && x.leq(&n), || format!("normalize {x} = {n}"))?;
    }
    Ok(format!("10000 pairs, {comparable} comparable"))
}

fn diagonalization() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/diagonalize");
    let mut total = 0;
    for name in ["constant-zero", "head"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        let spec: DiagSpec = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
        let (_, cert) = diagonalize(&spec, 25, 0, 100_000).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.determined > 0 && cert.disagreements == cert.determined, || {
            format!("{name}: {} of {} determined disagree", cert.disagreements, cert.determined)
        })?;
        total += cert.determined;
    }
    Ok(format!("2 examples, {total} determined samples disagree"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hyperrep"))
            .args(["selftest", "--json", "--seed", "0"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.success(), || format!("selftest exited {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "selftest output differs between runs".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("pairing and tupling", pairing, 5),
        ("universal function laws", universal, 30),
        ("classifier table", classifier, 5),
        ("golden traces", golden, 60),
        ("homeomorphism round trips", homeomorphisms, 60),
        ("pointclass lattice", lattice, 10),
        ("diagonalization", diagonalization, 60),
        ("determinism", determinism, 2 * 180),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            ensure(took <= Duration::from_secs(limit), || format!("took {took:.1?}, limit {limit}s")).map(|_| msg)
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name} ({msg}; {took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
