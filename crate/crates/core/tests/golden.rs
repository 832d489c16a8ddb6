//! Frozen derivation traces. Set `UPDATE_GOLDEN=1` to rewrite the files
//! after an intended change, then review the diff.

use std::path::PathBuf;

use hyperrep::pointclass::Pointclass;
use hyperrep::repcalc::{parse_expr, replay, AtomTable, Classification, Classifier, LowerBound, TraceNode};
use serde::{Deserialize, Serialize};

pub const GOLDEN: &[(&str, &str)] = &[
    ("nk-2", "(nk 2)"),
    ("nk-omega", "(nk w)"),
    ("t0-coequalizer", "(t0 (coequalizer baire baire id const0))"),
    ("exp-normalize", "(exp (nk 3) (nk 2))"),
    ("family-nk", "(prod-omega (family (k) (nk k)))"),
];

/// The file layout, read back with its field order kept.
#[derive(Serialize, Deserialize)]
struct Frozen {
    expr: String,
    eq_bound: Pointclass,
    dom_bound: Pointclass,
    quotient_only: bool,
    lower: Option<LowerBound>,
    trace: TraceNode,
}

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

fn render(c: &Classification) -> String {
    serde_json::to_string_pretty(c).unwrap() + "\n"
}

#[test]
fn traces_match_the_frozen_files() {
    let k = Classifier::default();
    for (name, expr) in GOLDEN {
        let c = k.classify(&parse_expr(expr).unwrap()).unwrap();
        let text = render(&c);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(path(name), &text).unwrap();
            continue;
        }
        let frozen = std::fs::read_to_string(path(name)).unwrap();
        assert_eq!(text, frozen, "{name}");
    }
}

#[test]
fn frozen_traces_replay_and_reserialize_identically() {
    for (name, _) in GOLDEN {
        let frozen = std::fs::read_to_string(path(name)).unwrap();
        let f: Frozen = serde_json::from_str(&frozen).unwrap();
        replay(&f.trace, &AtomTable::standard()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(serde_json::to_string_pretty(&f).unwrap() + "\n", frozen, "{name}");
    }
}

#[test]
fn a_tampered_trace_is_rejected() {
    let frozen = std::fs::read_to_string(path("nk-2")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&frozen).unwrap();
    v["trace"]["output"] = "Sigma1[1]".into();
    let trace: TraceNode = serde_json::from_value(v["trace"].clone()).unwrap();
    assert!(replay(&trace, &AtomTable::standard()).is_err());
}
