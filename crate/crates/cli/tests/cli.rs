use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperrep")).args(args).env_remove("HYPERREP_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "(nk 2)"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Pi1[1]"), "{}", stdout(&o));
    assert!(stdout(&o).contains("not Sigma1[1]"), "{}", stdout(&o));

    let o = run(&["--json", "classify", "(nk 2)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eq_bound"], "Pi1[1]");
    assert_eq!(v["lower"]["not"], "Sigma1[1]");

    let o = run(&["classify", "(prod-omega (family (k) (nk k)))"]);
    assert!(stdout(&o).starts_with("SigmaBelowDelta[w]"), "{}", stdout(&o));
    let o = run(&["classify", "(t0 (coequalizer baire baire id const0))"]);
    assert!(stdout(&o).starts_with("Sigma1[3]"), "{}", stdout(&o));
}

#[test]
fn classify_errors() {
    let o = run(&["classify", "(nk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at 3"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_hyperrep"))
        .args(["classify", "(nk w+1)"])
        .env("HYPERREP_CAP", "w")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "2", "const-7", "arg-4"]);
    assert_eq!(stdout(&o), "7\n");
    let o = run(&["eval", "2", "head-successor", "arg-4"]);
    assert_eq!(stdout(&o), "5\n");
    let o = run(&["--fuel", "0", "eval", "2", "const-7", "arg-4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("exhausted("), "{}", stdout(&o));
    // at level 1 the function is a point of Baire space: 7 0 0 ...
    assert_eq!(stdout(&run(&["eval", "1", "const-7", "arg-4"])), "0\n");
}

#[test]
fn eval_rejects_malformed_files() {
    let bad = scratch("bad.json", "{\"table\": 3}");
    let o = run(&["eval", "2", bad.to_str().unwrap(), "arg-4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "2", "no-such-file.json", "arg-4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_homeo_examples() {
    let o = run(&["check-homeo", "swap", "1", "--samples", "50"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["check-homeo", "product", "1", "2", "--samples", "25"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["check-homeo", "exponent", "w", "0"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("exp-limit"), "{}", stderr(&o));
}

#[test]
fn diagonalize_examples() {
    for name in ["constant-zero", "head"] {
        let o = run(&["diagonalize", name]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
    }
    let o = run(&["--json", "diagonalize", "head"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], true);
    for s in v["samples"].as_array().unwrap() {
        assert_eq!(s["g"].as_u64().unwrap(), s["sample"][0].as_u64().unwrap() + 1);
    }
}

#[test]
fn selftest_passes_and_a_corrupted_table_fails() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));

    let atoms = r#"{
        "baire": {"eq": "Sigma1[1]", "dom": "Pi0[1]"},
        "omega": {"eq": "Pi0[1]", "dom": "Pi0[1]"},
        "sierpinski": {"eq": "BoolOpen", "dom": "Pi0[1]"},
        "reals": {"eq": "Pi0[1]", "dom": "Pi0[1]"}
    }"#;
    let path = scratch("corrupted.json", atoms);
    let o = run(&["--json", "selftest", "--atoms", path.to_str().unwrap()]);
    assert!(!o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let suites = v["suites"].as_array().unwrap();
    let trace = suites.iter().find(|s| s["name"] == "trace-soundness").unwrap();
    assert!(trace["failures"].as_u64().unwrap() > 0);
}
