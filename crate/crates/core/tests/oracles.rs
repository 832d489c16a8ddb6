//! Computed values checked against formulas written out independently here.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperrep::baire::{
    build_strategy, delta0, encode_strategy, eval_universal, even_part, odd_part, pair_nat, pair_points, prefix_of,
    project, run_strategy, tuple_points, BairePoint, EvalOutcome, Fuel, StrategySpec, TableSpec,
};
use hyperrep::functionals::{apply_fun, homeo_swap, retract_witness};
use hyperrep::ordinals::Ordinal;
use hyperrep::repcalc::diag::{diagonalize, DiagSpec, SampleResult};
use hyperrep::repcalc::names::{apply, curry};

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn cantor(m: u64, n: u64) -> u64 {
    (0..m + n + 1).sum::<u64>() + m
}

#[test]
fn pairing_matches_the_triangle_count() {
    assert_eq!(pair_nat(2, 0), 5);
    assert_eq!(pair_nat(0, 0), 0);
    for m in 0..60 {
        for n in 0..60 {
            assert_eq!(pair_nat(m, n), cantor(m, n));
        }
    }
}

#[test]
fn tuples_read_components_at_paired_indices() {
    let z = tuple_points(Arc::new(|m| BairePoint::from_fn(move |n| m + n)));
    let mut fuel = Fuel::unlimited();
    assert_eq!(z.at(pair_nat(1, 2), &mut fuel), Ok(3));
    for m in 0..6 {
        assert_eq!(prefix_of(&project(z.clone(), m), 6, &mut fuel).unwrap(), (m..m + 6).collect::<Vec<_>>());
    }
}

#[test]
fn a_constant_code_answers_one_less() {
    // every entry 6 means "answer 5" at every index
    let got = eval_universal(&BairePoint::constant(6), &BairePoint::zeros(), 10, &mut Fuel::new(100_000));
    assert_eq!(got, EvalOutcome::Determined { values: vec![5; 10] });
}

#[test]
fn the_level_one_swap_matches_its_formula() {
    // (n, f) |-> f with f(0) and <n, f(0)> exchanged
    let oracle = |n: u64, f: &[u64]| -> Vec<u64> {
        let b = f[0];
        let a = cantor(n, b);
        f.iter().map(|&v| if v == a { b } else if v == b { a } else { v }).collect()
    };
    let h = homeo_swap(&o("1")).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut fuel = Fuel::unlimited();
    for _ in 0..50 {
        let n = rng.gen_range(0..5);
        let f: Vec<u64> = (0..8).map(|_| rng.gen_range(0..6)).collect();
        let img = (h.forward)(&pair_points(delta0(n), BairePoint::from_prefix(f.clone())));
        assert_eq!(prefix_of(&img, 8, &mut fuel).unwrap(), oracle(n, &f), "n={n} f={f:?}");
    }
    let img = (h.forward)(&pair_points(delta0(2), BairePoint::zeros()));
    assert_eq!(prefix_of(&img, 8, &mut fuel).unwrap(), [5; 8]);
    let back = (h.backward)(&BairePoint::constant(5));
    assert_eq!(even_part(back.clone()).at(0, &mut fuel), Ok(2));
    assert_eq!(prefix_of(&odd_part(back), 8, &mut fuel).unwrap(), [0; 8]);
}

#[test]
fn the_level_one_section_reads_the_head() {
    // s(x)(y) = x(y(0)) embeds N<1> into N<2>
    let r = retract_witness(&o("1"), &o("2")).unwrap();
    let mut fuel = Fuel::unlimited();
    let x: Vec<u64> = vec![4, 1, 3, 0, 2, 2, 7, 5];
    let fx = (r.section)(&BairePoint::from_prefix(x.clone()));
    for k in 0..8 {
        let y = BairePoint::from_prefix(vec![k, 9, 9]);
        assert_eq!(apply_fun(&fx, &y, &mut fuel), Ok(x[k as usize]));
    }
    let back = (r.retraction)(&fx);
    assert_eq!(prefix_of(&back, 8, &mut fuel).unwrap(), x);
}

#[test]
fn curried_tables_agree_with_interleaved_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let entries: Vec<(u64, Vec<u64>, u64)> = (0..6)
            .map(|i| (i, (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..2)).collect(), rng.gen_range(0..9)))
            .collect();
        let default = rng.gen_range(0..9);
        let x: Vec<u64> = (0..12).map(|_| rng.gen_range(0..2)).collect();
        let y: Vec<u64> = (0..12).map(|_| rng.gen_range(0..2)).collect();
        let xy: Vec<u64> = x.iter().zip(&y).flat_map(|(a, b)| [*a, *b]).collect();
        let expect: Vec<u64> = (0..8u64)
            .map(|n| match entries.iter().find(|(i, p, _)| *i == n && xy.starts_with(p)) {
                Some((_, _, v)) => *v,
                None => default,
            })
            .collect();
        let f = build_strategy(&StrategySpec::Table(TableSpec { entries, default: Some(default) })).unwrap();
        for n in 0..8 {
            assert_eq!(run_strategy(f.as_ref(), &xy, n), Some(expect[n as usize]));
        }
        let g = apply(curry(f), BairePoint::from_prefix(x));
        let got = eval_universal(&g, &BairePoint::from_prefix(y), 8, &mut Fuel::new(10_000_000));
        assert_eq!(got, EvalOutcome::Determined { values: expect });
    }
}

#[test]
fn head_successor_adds_one() {
    let spec: StrategySpec = serde_json::from_str(r#"{"delta0":{"offset":{"by":1,"of":"identity"}}}"#).unwrap();
    let p = encode_strategy(build_strategy(&spec).unwrap());
    let x = pair_points(delta0(4), BairePoint::zeros());
    let got = eval_universal(&p, &even_part(x), 1, &mut Fuel::new(100_000));
    assert_eq!(got, EvalOutcome::Determined { values: vec![5] });
}

#[test]
fn bundled_diagonals_disagree_everywhere() {
    for text in [r#"{"space":"omega","h":{"const":0}}"#, r#"{"space":"baire","h":{"delta0":"identity"}}"#] {
        let spec: DiagSpec = serde_json::from_str(text).unwrap();
        let (_, cert) = diagonalize(&spec, 25, 0, 100_000).unwrap();
        assert_eq!(cert.determined, 25, "{text}");
        for line in &cert.samples {
            match &line.result {
                SampleResult::Determined { g, diagonal, disagree } => {
                    assert!(*disagree && g != diagonal, "{text}: {line:?}");
                }
                other => panic!("{text}: undetermined {other:?}"),
            }
        }
    }
}
