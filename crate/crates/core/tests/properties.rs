use proptest::prelude::*;

use hyperrep::baire::{
    build_strategy, encode_strategy, eval_universal, pair_nat, unpair_nat, BairePoint, EvalOutcome, Fuel,
    StrategySpec, TableSpec,
};
use hyperrep::ordinals::{enumerate_below, Ordinal};
use hyperrep::pointclass::Pointclass;
use hyperrep::repcalc::{Classifier, SpaceExpr};

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn exponent() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        (0u64..4).prop_map(Ordinal::nat),
        Just(o("w")),
        Just(o("w+1")),
        Just(o("w*2")),
    ]
}

fn ordinal() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((exponent(), 1u64..5), 0..4).prop_map(|mut terms| {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        terms.dedup_by(|a, b| a.0 == b.0);
        Ordinal::from_terms(terms).unwrap()
    })
}

/// `w^2*a + w*b + c` below `w^2*3`.
fn small_ordinal() -> impl Strategy<Value = Ordinal> {
    (0u64..3, 0u64..4, 0u64..4).prop_map(|(a, b, c)| {
        let terms = [(2, a), (1, b), (0, c)].into_iter().filter(|t| t.1 > 0).map(|(e, k)| (Ordinal::nat(e), k));
        Ordinal::from_terms(terms.collect()).unwrap()
    })
}

fn class() -> impl Strategy<Value = Pointclass> {
    use Pointclass as C;
    (small_ordinal(), 0u8..10, 0usize..5).prop_map(|(a, tag, k)| match tag {
        0 => [C::Sigma0(1), C::Pi0(1), C::Sigma0(2), C::Pi0(2), C::BoolOpen][k].clone(),
        1 => C::Delta1(a),
        2 | 3 => C::sigma1(a),
        4 | 5 => C::pi1(a),
        6 => C::Sigma1(Ordinal::zero()),
        t => {
            let l = if a.is_limit() { a } else { a.split_finite().0.plus_omega() };
            [C::SigmaBelow(l.clone()), C::SigmaBelowSigma(l.clone()), C::SigmaBelowDelta(l)][t as usize - 7].clone()
        }
    })
}

const OPS: [fn(&Pointclass) -> Pointclass; 7] = [
    Pointclass::close_sigma,
    Pointclass::close_delta,
    Pointclass::exists,
    Pointclass::forall,
    Pointclass::complement,
    Pointclass::diff,
    Pointclass::preimage_pi02,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ordinal_notation_round_trips(a in ordinal()) {
        prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a.clone());
        prop_assert!(a < a.succ());
        prop_assert_eq!(a.succ().pred(), Some(a));
    }

    #[test]
    fn ordinal_addition(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.add(&b) >= a);
        prop_assert!(a.add(&b) >= b);
        if !b.is_zero() {
            prop_assert!(a < a.add(&b));
        }
        if a <= b {
            prop_assert!(c.add(&a) <= c.add(&b));
        }
    }

    #[test]
    fn enumerations_are_injective(k in 0u64..5000, l in prop_oneof![Just("w"), Just("w*2"), Just("w^2"), Just("w^w")]) {
        let e = enumerate_below(&o(l)).unwrap();
        let a = e.nth(k);
        prop_assert!(a < o(l));
        prop_assert_eq!(e.index_of(&a), Ok(k));
    }

    #[test]
    fn pairing_is_a_bijection(m in 0u64..1 << 20, n in 0u64..1 << 20) {
        let k = pair_nat(m, n);
        prop_assert_eq!(k, (m + n) * (m + n + 1) / 2 + m);
        prop_assert_eq!(unpair_nat(k), (m, n));
        prop_assert!(pair_nat(m + 1, n) > k && pair_nat(m, n + 1) > k);
    }

    #[test]
    fn unpairing_is_onto(k in 0u64..1 << 40) {
        let (m, n) = unpair_nat(k);
        prop_assert_eq!(pair_nat(m, n), k);
    }

    #[test]
    fn universal_function_extends_tables(
        entries in prop::collection::vec((prop::collection::vec(0u64..3, 0..4), 0u64..10), 1..8),
        default in 0u64..10,
        x in prop::collection::vec(0u64..3, 8),
    ) {
        // one entry per output index, so no two entries conflict
        let entries: Vec<(u64, Vec<u64>, u64)> =
            entries.into_iter().enumerate().map(|(i, (p, v))| (i as u64, p, v)).collect();
        let oracle: Vec<u64> = (0..16u64)
            .map(|n| match entries.iter().find(|(i, p, _)| *i == n && x.starts_with(p)) {
                Some((_, _, v)) => *v,
                None => default,
            })
            .collect();
        let spec = StrategySpec::Table(TableSpec { entries, default: Some(default) });
        let p = encode_strategy(build_strategy(&spec).unwrap());
        let got = eval_universal(&p, &BairePoint::from_prefix(x), 16, &mut Fuel::new(1_000_000));
        prop_assert_eq!(got, EvalOutcome::Determined { values: oracle });
    }

    #[test]
    fn leq_is_a_partial_order(x in class(), y in class(), z in class()) {
        prop_assert!(x.leq(&x));
        if x.leq(&y) && y.leq(&x) {
            prop_assert_eq!(x.normalize(), y.normalize());
        }
        if x.leq(&y) && y.leq(&z) {
            prop_assert!(x.leq(&z));
        }
    }

    #[test]
    fn join_is_least(x in class(), y in class(), z in class()) {
        let j = x.join(&y);
        prop_assert!(x.leq(&j) && y.leq(&j));
        if x.leq(&z) && y.leq(&z) {
            prop_assert!(j.leq(&z));
        }
    }

    #[test]
    fn operations_are_monotone(x in class(), y in class()) {
        if x.leq(&y) {
            for op in OPS {
                prop_assert!(op(&x).leq(&op(&y)), "{} <= {}", x, y);
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(x in class()) {
        let n = x.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.leq(&x) && x.leq(&n));
        prop_assert_eq!(n.to_string().parse::<Pointclass>().unwrap(), n);
    }
}

fn level() -> impl Strategy<Value = Ordinal> {
    prop_oneof![(0u64..7).prop_map(Ordinal::nat), Just(o("w")), Just(o("w+1")), Just(o("w+2")), Just(o("w*2"))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn products_bound_their_factors(a in level(), b in level()) {
        let k = Classifier::default();
        let (x, y) = (SpaceExpr::nk(a), SpaceExpr::nk(b));
        let p = k.classify(&SpaceExpr::prod(x.clone(), y.clone())).unwrap().eq_bound;
        prop_assert!(k.classify(&x).unwrap().eq_bound.leq(&p));
        prop_assert!(k.classify(&y).unwrap().eq_bound.leq(&p));
    }

    #[test]
    fn upper_bounds_avoid_the_excluded_class(a in level()) {
        let c = Classifier::default().classify(&SpaceExpr::nk(a)).unwrap();
        if let Some(l) = c.lower {
            prop_assert!(!c.eq_bound.leq(&l.not), "{} <= {}", c.eq_bound, l.not);
        }
    }

    #[test]
    fn normalization_keeps_the_bound(a in level(), b in level()) {
        let k = Classifier::default();
        let e = SpaceExpr::exp(SpaceExpr::nk(a.clone()), SpaceExpr::nk(b.clone()));
        if hyperrep::functionals::exponent_plan(&a, &b).is_ok() {
            let top = a.max(b.succ());
            let lhs = k.classify(&e).unwrap();
            let rhs = k.classify(&SpaceExpr::nk(top)).unwrap();
            prop_assert_eq!(lhs.eq_bound, rhs.eq_bound);
            prop_assert_eq!(lhs.lower, rhs.lower);
        }
    }

    #[test]
    fn larger_levels_get_larger_bounds(a in level(), b in level()) {
        let k = Classifier::default();
        if a <= b {
            let x = k.classify(&SpaceExpr::nk(a)).unwrap().eq_bound;
            let y = k.classify(&SpaceExpr::nk(b)).unwrap().eq_bound;
            prop_assert!(x.leq(&y), "{} vs {}", x, y);
        }
    }
}
