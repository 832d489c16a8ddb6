use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperrep::baire::{apply_strategy, build_strategy, encode_strategy, BairePoint, Fuel, Name, StrategySpec};
use hyperrep::functionals::{
    check_homeo, eval_functional, homeo_exponent, homeo_product, homeo_swap, FunError, FunOutcome, Provenance,
    RoundTrip,
};
use hyperrep::ordinals::{Cap, Ordinal};
use hyperrep::repcalc::diag::{diagonalize, Certificate, DiagSpec, SampleResult};
use hyperrep::repcalc::{parse_expr, AtomTable, Classification, Classifier, RepError, TraceNode};
use hyperrep::selftest::{self, bundled};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

#[derive(Parser)]
#[command(name = "hyperrep", version, about = "Complexity bounds for represented spaces and executable functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Query budget per evaluation (per sample for sampled commands).
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: u64,
    #[arg(long, global = true, default_value_t = 25)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bound the complexity of a space expression, with a derivation trace.
    Classify {
        expr: String,
        /// Atom table JSON replacing the bundled one.
        #[arg(long)]
        atoms: Option<PathBuf>,
    },
    /// Evaluate a functional of N<level>, level a successor, at an argument.
    Eval {
        level: String,
        /// Strategy file naming the functional (or a bundled name).
        function: String,
        /// Strategy file for the argument (or a bundled name).
        argument: String,
    },
    /// Round-trip check of an executable homeomorphism on seeded samples.
    CheckHomeo {
        kind: HomeoKind,
        a: String,
        b: Option<String>,
    },
    /// Build g(x) = h(x)(x) + 1 and certify it differs from every h(x).
    Diagonalize {
        /// Diagonalization file (or a bundled name).
        file: String,
    },
    /// Run the bundled invariant suites.
    Selftest {
        /// Atom table JSON the classifier suites run against.
        #[arg(long)]
        atoms: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HomeoKind {
    Swap,
    Product,
    Exponent,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn rep_failure(e: RepError) -> Failure {
    let code = match e {
        RepError::CapOverflow { .. } => EXIT_CAP,
        RepError::Unsupported(_) | RepError::QuotientBase(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    };
    fail(code, e.to_string())
}

fn fun_failure(e: FunError) -> Failure {
    match e {
        FunError::Unsupported { missing, what } => {
            fail(EXIT_UNSUPPORTED, format!("unsupported: {what} (missing {missing})"))
        }
        e @ FunError::Order { .. } => fail(EXIT_INPUT, e.to_string()),
    }
}

/// Output of a command: JSON value, text rendering, and success.
struct Output {
    json: String,
    text: String,
    ok: bool,
}

fn output<T: Serialize>(value: &T, text: String, ok: bool) -> Output {
    Output { json: serde_json::to_string_pretty(value).expect("reports serialize"), text, ok }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe is not an error of the command
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json { writeln!(stdout, "{}", out.json) } else { write!(stdout, "{}", out.text) };
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify { expr, atoms } => classify(expr, atoms.as_ref()),
        Command::Eval { level, function, argument } => eval(level, function, argument, cli.fuel),
        Command::CheckHomeo { kind, a, b } => check(*kind, a, b.as_deref(), cli),
        Command::Diagonalize { file } => diag(file, cli),
        Command::Selftest { atoms } => {
            let mut opts = selftest::Options { seed: cli.seed, samples: cli.samples, fuel: cli.fuel, ..Default::default() };
            if let Some(path) = atoms {
                opts.atoms = load_atoms(path)?;
            }
            let report = selftest::run(&opts);
            let mut text = String::new();
            for s in &report.suites {
                let verdict = if s.passed() { "ok" } else { "FAIL" };
                let _ = writeln!(text, "{:<18} {:>7} checks {:>5} failures  {verdict}", s.name, s.checks, s.failures);
                if let Some(f) = &s.first_failure {
                    let _ = writeln!(text, "  first failure: {f}");
                }
            }
            let _ = writeln!(text, "{}", if report.passed { "all suites pass" } else { "selftest failed" });
            Ok(output(&report, text, report.passed))
        }
    }
}

fn cap() -> Result<Cap, Failure> {
    Cap::from_env().map_err(|e| fail(EXIT_INPUT, format!("HYPERREP_CAP: {e}")))
}

fn ordinal(s: &str) -> Result<Ordinal, Failure> {
    let a: Ordinal = s.parse().map_err(|e| fail(EXIT_INPUT, format!("ordinal {s:?}: {e}")))?;
    let cap = cap()?;
    if !cap.admits(&a) {
        return Err(fail(EXIT_CAP, format!("ordinal {a} is not below the cap {cap}")));
    }
    Ok(a)
}

fn load_atoms(path: &PathBuf) -> Result<AtomTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Contents of a data file, falling back to the bundled file of that name.
fn read_data(name: &str) -> Result<String, Failure> {
    match std::fs::read_to_string(name) {
        Ok(s) => Ok(s),
        Err(e) => bundled::strategy(name).map(str::to_string).ok_or_else(|| fail(EXIT_INPUT, format!("{name}: {e}"))),
    }
}

fn render_trace(node: &TraceNode, depth: usize, out: &mut String) {
    let q = if node.quotient_only { "  (quotient only)" } else { "" };
    let _ = writeln!(out, "{:indent$}{}  {}  => {}{q}", "", node.rule, node.expr, node.output, indent = 2 * depth + 2);
    for i in &node.inputs {
        render_trace(i, depth + 1, out);
    }
}

fn classify(text: &str, atoms: Option<&PathBuf>) -> Result<Output, Failure> {
    let e = parse_expr(text).map_err(|e| fail(EXIT_INPUT, format!("parse error at {}: {}", e.pos, e.msg)))?;
    let atoms = match atoms {
        Some(p) => load_atoms(p)?,
        None => AtomTable::standard(),
    };
    let c: Classification = Classifier::new(atoms, cap()?).classify(&e).map_err(rep_failure)?;
    let mut out = String::new();
    let _ = writeln!(out, "{}", c.eq_bound);
    let _ = writeln!(out, "expr:  {}", c.expr);
    let _ = writeln!(out, "dom:   {}", c.dom_bound);
    if c.quotient_only {
        let _ = writeln!(out, "quotient representation only");
    }
    if let Some(l) = &c.lower {
        let _ = writeln!(out, "lower: not {}  [{}: {}]", l.not, l.rule, l.cite);
    }
    let _ = writeln!(out, "trace:");
    render_trace(&c.trace, 0, &mut out);
    Ok(output(&c, out, true))
}

fn strategy(name: &str) -> Result<StrategySpec, Failure> {
    let text = read_data(name)?;
    serde_json::from_str(&text).map_err(|e| fail(EXIT_INPUT, format!("{name}: malformed strategy: {e}")))
}

fn strategy_name(spec: &StrategySpec, what: &str) -> Result<Name, Failure> {
    let s = build_strategy(spec).map_err(|e| fail(EXIT_INPUT, format!("{what}: {e}")))?;
    Ok(encode_strategy(s))
}

#[derive(Serialize)]
struct EvalReport {
    level: String,
    #[serde(flatten)]
    outcome: FunOutcome,
}

fn eval(level: &str, function: &str, argument: &str, fuel: u64) -> Result<Output, Failure> {
    let level = ordinal(level)?;
    let Some(arg_level) = level.pred() else {
        return Err(fail(EXIT_INPUT, "level must be a successor"));
    };
    // Points of omega and Baire space are the strategy's output on 0^w;
    // higher levels are named by the strategy's associate.
    let name = |file: &str, at: &Ordinal| -> Result<_, Failure> {
        let spec = strategy(file)?;
        if *at <= Ordinal::nat(1) {
            let s = build_strategy(&spec).map_err(|e| fail(EXIT_INPUT, format!("{file}: {e}")))?;
            Ok(apply_strategy(s, BairePoint::zeros()))
        } else {
            strategy_name(&spec, file)
        }
    };
    let f = name(function, &level)?;
    let arg = name(argument, &arg_level)?;
    let outcome = eval_functional(&f, &level, &arg, &mut Fuel::new(fuel)).map_err(fun_failure)?;
    let (text, ok) = match &outcome {
        FunOutcome::Value { value } => (format!("{value}\n"), true),
        FunOutcome::Exhausted { spent } => (format!("exhausted({spent})\n"), true),
        FunOutcome::Short => ("short: the argument name ended early\n".to_string(), false),
        FunOutcome::Inconsistent { index, first, second } => {
            (format!("inconsistent: index {index} answered {first} then {second}\n"), false)
        }
        FunOutcome::Malformed { index, value } => {
            (format!("malformed output: entry {index} is {value}, expected 0\n"), false)
        }
    };
    Ok(output(&EvalReport { level: level.to_string(), outcome }, text, ok))
}

fn check(kind: HomeoKind, a: &str, b: Option<&str>, cli: &Cli) -> Result<Output, Failure> {
    let a = ordinal(a)?;
    let need_b = || b.ok_or_else(|| fail(EXIT_INPUT, "this kind takes two ordinals")).and_then(ordinal);
    let h = match kind {
        HomeoKind::Swap => {
            if b.is_some() {
                return Err(fail(EXIT_INPUT, "swap takes one ordinal"));
            }
            homeo_swap(&a)
        }
        HomeoKind::Product => homeo_product(&a, &need_b()?),
        HomeoKind::Exponent => homeo_exponent(&a, &need_b()?),
    }
    .map_err(fun_failure)?;
    let r: RoundTrip = check_homeo(&h, cli.samples, cli.seed, cli.fuel);
    let mut text = String::new();
    let _ = writeln!(text, "{} ~ {}  via {}", r.source, r.target, Provenance(&r.provenance));
    let _ = writeln!(
        text,
        "samples {}  determined {}  passed {}  failed {}  undetermined {}",
        r.samples,
        r.determined,
        r.passed,
        r.determined - r.passed,
        r.undetermined
    );
    if let Some(f) = &r.first_failure {
        let _ = writeln!(text, "first failure: sample {} ({}), prefix {:?}", f.sample, f.direction, f.prefix);
    }
    let _ = writeln!(text, "{}", if r.ok { "all determined samples round-trip" } else { "round trip FAILED" });
    Ok(output(&r, text, r.ok))
}

fn diag(file: &str, cli: &Cli) -> Result<Output, Failure> {
    let text = read_data(file)?;
    let spec: DiagSpec =
        serde_json::from_str(&text).map_err(|e| fail(EXIT_INPUT, format!("{file}: malformed diagonalization file: {e}")))?;
    let (_, c): (_, Certificate) = diagonalize(&spec, cli.samples, cli.seed, cli.fuel).map_err(rep_failure)?;
    let mut out = String::new();
    let _ = writeln!(out, "space {}", c.space);
    for l in &c.samples {
        let line = match &l.result {
            SampleResult::Determined { g, diagonal, disagree } => {
                format!("g = {g}, h(x)(x) = {diagonal}{}", if *disagree { "" } else { "  AGREE" })
            }
            SampleResult::Exhausted => "exhausted".into(),
            SampleResult::Short => "short".into(),
            SampleResult::Inconsistent => "inconsistent".into(),
        };
        let _ = writeln!(out, "x = {:?}  {line}", l.sample);
    }
    let _ = writeln!(
        out,
        "determined {}/{}, disagreements {}: {}",
        c.determined,
        c.samples.len(),
        c.disagreements,
        if c.holds { "g is not in the image" } else { "FAILED" }
    );
    Ok(output(&c, out, c.holds))
}
