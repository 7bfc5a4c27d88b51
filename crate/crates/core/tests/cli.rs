//! End-to-end runs of the `resmex` binary: output records and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_resmex"));
    c.env_remove("RESMEX_SEED");
    c
}

fn resmex(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

/// State file with the given real matrix.
fn write_state(dir: &Path, name: &str, rows: &[&[f64]]) -> PathBuf {
    let matrix: Vec<Vec<[f64; 2]>> = rows.iter().map(|r| r.iter().map(|&x| [x, 0.0]).collect()).collect();
    let body = serde_json::json!({"dim": rows.len(), "trace_class": "normalized", "matrix": matrix});
    let path = dir.join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let p = dir.path();
        write_state(p, "zero.json", &[&[1.0, 0.0], &[0.0, 0.0]]);
        write_state(p, "one.json", &[&[0.0, 0.0], &[0.0, 1.0]]);
        write_state(p, "mixed.json", &[&[0.5, 0.0], &[0.0, 0.5]]);
        write_state(p, "sigma.json", &[&[0.7, 0.1], &[0.1, 0.3]]);
        let h = 0.5;
        write_state(p, "phi.json", &[&[h, 0.0, 0.0, h], &[0.0; 4], &[0.0; 4], &[h, 0.0, 0.0, h]]);
        write_state(p, "product.json", &[&[1.0, 0.0, 0.0, 0.0], &[0.0; 4], &[0.0; 4], &[0.0; 4]]);
        // p |Φ+⟩⟨Φ+| + (1-p) I/4 at p = 1/2.
        let (d, o) = (0.25 * 0.5 + 0.5 * 0.5, 0.5 * 0.5);
        let w = 0.25 * 0.5;
        write_state(
            p,
            "werner.json",
            &[&[d, 0.0, 0.0, o], &[0.0, w, 0.0, 0.0], &[0.0, 0.0, w, 0.0], &[o, 0.0, 0.0, d]],
        );
        std::fs::write(p.join("broken.json"), "{\"dim\": 2,\n \"matrix\": [").unwrap();
        Self { dir }
    }

    fn run(&self, args: &[&str]) -> Output {
        resmex(args, self.dir.path())
    }
}

#[test]
fn compute_umegaki_against_maximally_mixed() {
    let f = Fixture::new();
    let o = f.run(&["compute", "--divergence", "umegaki", "--rho", "zero.json", "--sigma", "mixed.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["value"], serde_json::json!(1.0));
    assert_eq!(v["divergence"], "umegaki");
    assert!(v["alpha"].is_null());
}

#[test]
fn support_violation_is_infinite_not_an_error() {
    let f = Fixture::new();
    let o = f.run(&["compute", "--divergence", "dmax", "--rho", "zero.json", "--sigma", "one.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["value"], "inf");
}

#[test]
fn one_shot_quantities_need_epsilon() {
    let f = Fixture::new();
    let o = f.run(&["compute", "--divergence", "dh", "--rho", "mixed.json", "--sigma", "zero.json"]);
    assert_eq!(o.status.code(), Some(2));
    // Best test against σ = |0⟩⟨0| keeping 1 - ε of ρ = I/2 accepts |1⟩ fully
    // and |0⟩ with weight 0.8, so D_h = -log2 0.8.
    let o = f.run(&[
        "compute", "--divergence", "dh", "--epsilon", "0.1", "--rho", "mixed.json", "--sigma", "zero.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o)["value"].as_f64().unwrap();
    assert!((v + 0.8f64.log2()).abs() < 1e-11);
}

#[test]
fn malformed_and_missing_files_exit_two() {
    let f = Fixture::new();
    let o = f.run(&["compute", "--divergence", "umegaki", "--rho", "broken.json", "--sigma", "mixed.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--rho") && err.contains("line 2"), "{err}");
    let o = f.run(&["compute", "--divergence", "umegaki", "--rho", "absent.json", "--sigma", "mixed.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run(&["compute", "--divergence", "nonsense", "--rho", "zero.json", "--sigma", "mixed.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_three() {
    let f = Fixture::new();
    // The measured lower bound needs supp ρ ⊆ supp σ.
    let o = f.run(&[
        "compute", "--divergence", "dmin-epsilon", "--epsilon", "0.1", "--rho", "mixed.json", "--sigma", "zero.json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    // An infinite rate cannot be traced.
    let o = f.run(&["aep", "--rho", "zero.json", "--sigma", "one.json", "--quantity", "dmax", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dimension_cap_is_a_validation_error() {
    let f = Fixture::new();
    let o = f.run(&["aep", "--rho", "phi.json", "--sigma", "werner.json", "--quantity", "dmax", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subnormalized_fidelity_reduces_to_fidelity() {
    let f = Fixture::new();
    let ext = f.run(&[
        "extend", "--kind", "subnorm", "--divergence", "generalized-fidelity", "--rho", "sigma.json", "--sigma",
        "mixed.json",
    ]);
    let plain = f.run(&["compute", "--divergence", "fidelity", "--rho", "sigma.json", "--sigma", "mixed.json"]);
    let (ext, plain) = (json_out(&ext), json_out(&plain));
    assert_eq!(ext["direction"], "exact");
    assert!((ext["value"].as_f64().unwrap() - plain["value"].as_f64().unwrap()).abs() < 1e-11);
}

#[test]
fn maximal_classical_on_pure_state() {
    let f = Fixture::new();
    // σ = [[.7,.1],[.1,.3]], σ⁻¹ = [[.3,-.1],[-.1,.7]]/0.2, so ⟨0|σ⁻¹|0⟩ = 1.5.
    let expected = 1.5f64.log2();
    for strategy in ["ansatz", "pure"] {
        let o = f.run(&[
            "extend", "--kind", "maximal-classical", "--divergence", "kl", "--strategy", strategy, "--rho",
            "zero.json", "--sigma", "sigma.json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let v = json_out(&o);
        assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-11, "{strategy}");
        assert_eq!(v["direction"], "exact");
    }
}

#[test]
fn minimal_classical_reports_lower_direction() {
    let f = Fixture::new();
    let o = f.run(&[
        "extend", "--kind", "minimal-classical", "--divergence", "kl", "--rho", "sigma.json", "--sigma", "mixed.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["direction"], "lower");
    let o = f.run(&[
        "extend", "--kind", "minimal-classical", "--divergence", "kl", "--strategy", "search", "--rho", "sigma.json",
        "--sigma", "mixed.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn schmidt_records() {
    let f = Fixture::new();
    let number = |file: &str| {
        let o = f.run(&["schmidt", "--state", file, "--cut", "2x2"]);
        assert_eq!(o.status.code(), Some(0));
        json_out(&o)["schmidt_number"].as_u64().unwrap()
    };
    assert_eq!(number("product.json"), 1);
    assert_eq!(number("phi.json"), 2);
    assert_eq!(number("werner.json"), 2);
    let o = f.run(&["schmidt", "--state", "phi.json", "--cut", "2x3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_summary_and_report_files() {
    let f = Fixture::new();
    let o = f.run(&["suite", "--name", "sandwich", "--trials", "40", "--out", "report.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("sandwich: 40/40 pass"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(f.dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["records"].as_array().unwrap().len(), 40);

    let o = f.run(&["suite", "--name", "aep", "--out", "trace.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(f.dir.path().join("trace.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.contains(",n,") && header.contains(",rate"));
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn unknown_suite_lists_registry() {
    let f = Fixture::new();
    let o = f.run(&["suite", "--name", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("sandwich") && err.contains("dpi"), "{err}");
}

#[test]
fn failing_suite_exits_one() {
    let f = Fixture::new();
    let o = f.run(&["suite", "--name", "geometric_petz", "--trials", "4", "--slack", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_config_exits_two() {
    let f = Fixture::new();
    assert_eq!(f.run(&["suite", "--name", "sandwich", "--dims", "1,2"]).status.code(), Some(2));
    assert_eq!(f.run(&["suite", "--name", "sandwich", "--trials", "0"]).status.code(), Some(2));
    let o = f.run(&["suite", "--name", "dpi", "--trials", "2", "--extra", "divergences=[\"dmin\"]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}

#[test]
fn seed_comes_from_the_environment() {
    let f = Fixture::new();
    let run = |seed: Option<&str>, out: &str| {
        let mut c = bin();
        c.current_dir(f.dir.path()).args(["suite", "--name", "dpi", "--trials", "3", "--out", out]);
        if let Some(s) = seed {
            c.env("RESMEX_SEED", s);
        }
        assert!(c.output().unwrap().status.success());
        let v: Value = serde_json::from_str(&std::fs::read_to_string(f.dir.path().join(out)).unwrap()).unwrap();
        v["config"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(Some("17"), "a.json"), 17);
    assert_eq!(run(None, "b.json"), 0);
}

#[test]
fn aep_trace_csv() {
    let f = Fixture::new();
    let o = f.run(&["aep", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,rate,gap");
    assert_eq!(rows.len(), 9);
    let gap = |row: &str| row.split(',').nth(2).unwrap().parse::<f64>().unwrap();
    assert!(gap(rows[8]) < gap(rows[1]));
}

#[test]
fn numbers_are_printed_with_twelve_digits() {
    let f = Fixture::new();
    let o = f.run(&["compute", "--divergence", "umegaki", "--rho", "sigma.json", "--sigma", "mixed.json"]);
    let text = String::from_utf8_lossy(&o.stdout);
    let value = text.lines().find(|l| l.contains("\"value\"")).unwrap();
    let digits: String = value.split(':').nth(1).unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
    assert!(digits.trim_start_matches('0').len() <= 12, "{value}");
}
