//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Each criterion runs the relevant property suite at full size and, where a
//! closed form is known, compares against a value derived independently here.

use std::process::ExitCode;
use std::time::Instant;

use resmex::entangle::{min_partial_transpose_eigenvalue, schmidt_number_ppt, BipartiteCut};
use resmex::property::report::format_value;
use resmex::property::{run_suite, suite_names, PropertyReport, SuiteConfig};
use resmex::qstate::{ComplexMatrix, DensityState, C64};
use serde_json::json;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn config(suite: &str, trials: usize, dims: &[usize], slack: f64) -> SuiteConfig {
    let mut c = SuiteConfig::defaults(suite, 20_240_601).expect("registered suite");
    c.trials = trials;
    c.dims = dims.to_vec();
    c.slack = slack;
    c
}

fn run(c: &SuiteConfig) -> Result<PropertyReport, String> {
    run_suite(c).map_err(|e| format!("{}: {e}", c.suite))
}

fn describe(r: &PropertyReport) -> String {
    format!("{} {} (max violation {})", r.suite, r.summary(), format_value(r.aggregate.max_violation))
}

fn first_failure(r: &PropertyReport) -> String {
    r.records
        .iter()
        .find(|x| !x.pass)
        .map(|x| format!("; first failure trial {} seed {} at {}", x.trial, x.seed, x.worst_check))
        .unwrap_or_default()
}

/// Pass iff every trial passes.
fn suite_outcome(c: &SuiteConfig) -> Outcome {
    match run(c) {
        Ok(r) => outcome(r.all_passed(), describe(&r) + &first_failure(&r)),
        Err(e) => outcome(false, e),
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    outcome(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn sandwich() -> Outcome {
    suite_outcome(&config("sandwich", 3000, &[2, 3, 4], 1e-8))
}

fn data_processing() -> Outcome {
    let cptp_and_tni = config("dpi", 500, &[2, 3, 4], 1e-7);
    let dmin = config("dpi", 500, &[2, 3, 4], 1e-7)
        .with_extra("divergences", json!(["dmin"]))
        .with_extra("tni", json!(false));
    both(suite_outcome(&cptp_and_tni), suite_outcome(&dmin))
}

fn binary_identity() -> Outcome {
    suite_outcome(&config("eq1", 4, &[2], 1e-10).with_extra("epsilons", json!([0.1, 0.25, 0.5, 0.9])))
}

fn pure_kl() -> Outcome {
    match run(&config("pure_kl", 200, &[2, 3, 4], 1e-8)) {
        Ok(r) => {
            let eig = r.max_check("eigenvector").unwrap_or(f64::INFINITY);
            let pass = r.all_passed() && eig <= 1e-10;
            outcome(pass, format!("{}; eigenvector max deviation {eig:.3e}{}", describe(&r), first_failure(&r)))
        }
        Err(e) => outcome(false, e),
    }
}

fn geometric_petz() -> Outcome {
    suite_outcome(&config("geometric_petz", 500, &[2, 3, 4], 1e-9))
}

fn reduction() -> Outcome {
    suite_outcome(&config("reduction", 500, &[2, 3, 4], 1e-9))
}

fn purified_distance() -> Outcome {
    suite_outcome(&config("purified", 50, &[2, 3], 1e-5).with_extra("restarts", json!(10_000)))
}

fn hypothesis_chain() -> Outcome {
    let c = config("hypo_chain", 200, &[2, 3, 4], 1e-7).with_extra("pairs", json!([[0.1, 0.05], [0.3, 0.1]]));
    match run(&c) {
        Ok(r) => {
            let classical = ["classical-ds", "classical-dh"]
                .iter()
                .map(|k| r.max_check(k).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max);
            let pass = r.all_passed() && classical <= 1e-8;
            outcome(
                pass,
                format!("{}; commuting cases vs brute force {classical:.3e}{}", describe(&r), first_failure(&r)),
            )
        }
        Err(e) => outcome(false, e),
    }
}

fn equipartition() -> Outcome {
    let c = config("aep", 8, &[2], 1e-9)
        .with_extra("p", json!([0.9, 0.1]))
        .with_extra("q", json!([0.5, 0.5]))
        .with_extra("epsilon", json!(0.05));
    let expected = 0.9 * 1.8f64.log2() + 0.1 * 0.2f64.log2();
    match run(&c) {
        Ok(r) => {
            let diag = |i: usize, k: &str| r.records[i].diagnostics.get(k).map_or(f64::NAN, |v| v.value());
            let (first, last) = (diag(0, "gap"), diag(7, "gap"));
            let d_ok = (0..8).all(|i| (diag(i, "relative_entropy") - expected).abs() < 1e-12);
            let dmax_ok = (0..8).all(|i| diag(i, "dmax_rate") >= expected);
            let pass = r.all_passed() && last < first && d_ok && dmax_ok;
            outcome(
                pass,
                format!("{}; gap {first:.6} at n=1, {last:.6} at n=8; D = {expected:.6}", describe(&r)),
            )
        }
        Err(e) => outcome(false, e),
    }
}

/// `p |Φ+⟩⟨Φ+| + (1-p) I/4`, written out entry by entry.
fn werner(p: f64) -> DensityState {
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = C64::new((1.0 - p) / 4.0, 0.0);
    }
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] += C64::new(p / 2.0, 0.0);
    }
    DensityState::normalized(m).expect("werner state")
}

fn schmidt() -> Outcome {
    let cut = BipartiteCut::new(2, 2);
    let mut notes = Vec::new();
    let mut pass = true;
    for (p, expected) in [(1.0 / 3.0 - 1e-9, 1), (1.0 / 3.0 + 1e-9, 2)] {
        let rho = werner(p);
        let number = schmidt_number_ppt(&rho, cut).ok();
        let eig = min_partial_transpose_eigenvalue(&rho, cut);
        let eig_ok = (eig - (1.0 - 3.0 * p) / 4.0).abs() < 1e-12;
        pass &= number == Some(expected) && eig_ok;
        notes.push(format!("p=1/3{:+e}: number {number:?}", p - 1.0 / 3.0));
    }
    let suite = suite_outcome(&config("schmidt", 200, &[4], 1e-9));
    outcome(pass && suite.pass, format!("{}; {}", notes.join(", "), suite.detail))
}

fn triangle_and_continuity() -> Outcome {
    both(
        suite_outcome(&config("triangle", 500, &[2, 3, 4], 1e-7)),
        suite_outcome(&config("continuity", 500, &[2, 3, 4], 1e-7)),
    )
}

fn determinism() -> Outcome {
    let mut mismatched = Vec::new();
    for name in suite_names() {
        let mut c = SuiteConfig::defaults(name, 99).expect("registered suite");
        c.trials = c.trials.min(match name {
            "locc" | "purified" => 2,
            _ => 20,
        });
        let c = match name {
            "locc" => c.with_extra("roof_trials", json!(500)),
            "purified" => c.with_extra("restarts", json!(200)),
            _ => c,
        };
        let same = match (run(&c), run(&c)) {
            (Ok(a), Ok(b)) => a.to_json().ok() == b.to_json().ok() && a.to_json().is_ok(),
            _ => false,
        };
        if !same {
            mismatched.push(name);
        }
    }
    let n = suite_names().len();
    if mismatched.is_empty() {
        outcome(true, format!("{n} suites rerun bit-identically"))
    } else {
        outcome(false, format!("reports differ for {mismatched:?}"))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("sandwich bounds D_min <= D <= D_max", sandwich),
        ("data processing (CPTP and trace non-increasing)", data_processing),
        ("binary pair identity -log2(1-e)", binary_identity),
        ("pure-state maximal KL extension", pure_kl),
        ("geometric = Petz at order 2", geometric_petz),
        ("reduction of every extension", reduction),
        ("purified distance vs Uhlmann search", purified_distance),
        ("hypothesis-testing chain", hypothesis_chain),
        ("finite-n equipartition", equipartition),
        ("Schmidt number and Werner threshold", schmidt),
        ("triangle inequality and continuity", triangle_and_continuity),
        ("report determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {status}: {name} [{:.1}s] {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
