use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fspec"))
        .args(args)
        .output()
        .expect("spawn fspec")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn first_line(o: &Output) -> Value {
    serde_json::from_str(stdout(o).lines().next().expect("a result line")).unwrap()
}

/// Row-major `[re, im]` pairs of the `value` matrix.
fn value_data(v: &Value) -> Vec<(f64, f64)> {
    v["value"]["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect()
}

fn assert_close(got: &[(f64, f64)], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for ((re, im), w) in got.iter().zip(want) {
        assert!((re - w).abs() <= tol && im.abs() <= tol, "{got:?} vs {want:?}");
    }
}

const UPPER: &str = r#"{"kind":"rational_matrix","n":2,"data":[[3,1],[1,1],[0,1],[-2,1]]}"#;

#[test]
fn sgn_of_upper_triangular_fixture() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--nodes", "64"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = first_line(&o);
    assert_close(&value_data(&v), &[1.0, 0.4, 0.0, -1.0], 1e-8);
    assert_eq!(v["backend"], "quadrature");
    assert_eq!(v["nodes"], 64);
    assert!(v["residuals"]["involution"].as_f64().unwrap() < 1e-12);
}

#[test]
fn spectrum_on_the_imaginary_axis_is_refuted() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "rot.json", r#"{"kind":"rational_matrix","n":2,"data":[[0,1],[1,1],[-1,1],[0,1]]}"#);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a)]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stderr(&o).contains("spectral class"));
}

#[test]
fn geometric_mean_of_four_and_nine() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"rational_matrix","n":1,"data":[[4,1]]}"#);
    let b = write(&dir, "b.json", r#"{"kind":"complex_matrix","n":1,"data":[[9.0,0.0]]}"#);
    let o = fspec(&["compute", "--fn", "geomean", "--input", s(&a), "--input", s(&b), "--nodes", "128"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_close(&value_data(&first_line(&o)), &[6.0], 1e-8);
}

#[test]
fn geometric_mean_needs_two_inputs() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"rational_matrix","n":1,"data":[[4,1]]}"#);
    let o = fspec(&["compute", "--fn", "geomean", "--input", s(&a)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn parse_and_io_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"kind\":\"complex_matrix\",\"n\":2,\"data\":[[1,0]]}");
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&bad)]);
    assert_eq!(code(&o), 1);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&fspec(&["compute", "--fn", "sgn", "--input", s(&missing)])), 1);
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--nodes", "48"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("power of two"));
    assert_eq!(code(&fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--tol", "0"])), 1);
    assert_eq!(code(&fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--backend", "oracle"])), 1);
}

#[test]
fn coarse_rule_exceeds_the_budget() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--nodes", "4"]);
    assert_eq!(code(&o), 3);
    // the result is still reported
    assert!(first_line(&o)["error_budget"].as_f64().unwrap() > 1e-8);
}

#[test]
fn one_sided_series_on_a_two_sided_spectrum_does_not_converge() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--backend", "series"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn exact_series_backend() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"rational_matrix","n":1,"data":[[3,1]]}"#);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--backend", "series", "--order", "16"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = first_line(&o);
    assert_eq!(v["value"]["kind"], "rational_matrix");
    assert_eq!(v["value"]["data"][0], serde_json::json!([1, 1]));
    assert_eq!(v["order"], 16);
}

#[test]
fn verify_adds_a_convergence_table() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&["compute", "--fn", "sgn", "--input", s(&a), "--nodes", "64", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let table: Value = serde_json::from_str(lines[1]).unwrap();
    let nodes: Vec<u64> = table["convergence"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["nodes"].as_u64().unwrap())
        .collect();
    assert_eq!(nodes, vec![32, 64, 128]);
}

#[test]
fn verify_flags_a_broken_law() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let o = fspec(&[
        "compute", "--fn", "sgn", "--input", s(&a), "--nodes", "64", "--verify", "--tol", "1e-300",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn reports_are_deterministic_and_match_stdout() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", UPPER);
    let report = dir.path().join("report.jsonl");
    let args = ["compute", "--fn", "split", "--input", s(&a), "--verify", "--report", s(&report)];
    let first = fspec(&args);
    let text = fs::read_to_string(&report).unwrap();
    let second = fspec(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first), text);
    assert_eq!(text, fs::read_to_string(&report).unwrap());
}

#[test]
fn identity_suite_passes() {
    let o = fspec(&["verify", "--suite", "identities"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = fspec(&["verify-identities", "--set", "sqrt"]);
    assert_eq!(code(&o), 0);
    let last: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["failed"], 0);
    assert_eq!(code(&fspec(&["verify-identities", "--set", "nonsense"])), 1);
    assert_eq!(code(&fspec(&["--bogus"])), 1);
    assert_eq!(code(&fspec(&["--help"])), 0);
}

#[test]
fn halffree_suite_passes() {
    let o = fspec(&["verify", "--suite", "halffree"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let tables = stdout(&o).lines().filter(|l| l.contains("\"table_c")).count();
    assert_eq!(tables, 12);
}

#[test]
fn kernel_suite_passes() {
    let o = fspec(&["verify", "--suite", "kernels"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn spectral_suite_with_impossible_tolerance_fails() {
    let o = fspec(&["verify", "--suite", "spectral", "--tol", "1e-30"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("spectral/sgn_involution"), "{}", stderr(&o));
    let o = fspec(&["verify", "--suite", "spectral"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn generated_fixture_feeds_the_oracle() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let side = dir.path().join("m.side.json");
    let gen = |out: &Path, sc: &Path| {
        fspec(&[
            "generate", "--n", "2", "--eigenvalues", "3,-2", "--seed", "7", "--out", s(out), "--sidecar-out", s(sc),
        ])
    };
    assert_eq!(code(&gen(&m, &side)), 0);
    let first = fs::read(&m).unwrap();
    assert_eq!(code(&gen(&m, &side)), 0);
    assert_eq!(first, fs::read(&m).unwrap());

    let oracle = fspec(&["compute", "--fn", "sgn", "--input", s(&m), "--sidecar", s(&side), "--backend", "oracle"]);
    assert_eq!(code(&oracle), 0, "{}", stderr(&oracle));
    let quad = fspec(&["compute", "--fn", "sgn", "--input", s(&m), "--sidecar", s(&side), "--nodes", "128"]);
    assert_eq!(code(&quad), 0);
    let (o, q) = (value_data(&first_line(&oracle)), value_data(&first_line(&quad)));
    for (a, b) in o.iter().zip(&q) {
        assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8);
    }
    assert!(first_line(&quad)["oracle_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn scalar_fixture_for_the_root() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let side = dir.path().join("s.json");
    let o = fspec(&["generate", "--n", "1", "--eigenvalues", "9", "--out", s(&m), "--sidecar-out", s(&side)]);
    assert_eq!(code(&o), 0);
    let o = fspec(&["compute", "--fn", "sqrt", "--input", s(&m), "--sidecar", s(&side), "--backend", "oracle"]);
    assert_close(&value_data(&first_line(&o)), &[3.0], 0.0);
}

#[test]
fn idem_fixture_close_to_the_split_line() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let side = dir.path().join("s.json");
    let o = fspec(&[
        "generate",
        "--n",
        "4",
        "--eigenvalues",
        "0.4+0.2i,0.4-0.2i,0.6+0.2i,0.6-0.2i",
        "--fn",
        "idem",
        "--margin",
        "0.05",
        "--seed",
        "3",
        "--out",
        s(&m),
        "--sidecar-out",
        s(&side),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = fspec(&["compute", "--fn", "idem", "--input", s(&m), "--sidecar", s(&side), "--nodes", "256", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(first_line(&o)["oracle_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn margin_violations_are_refused() {
    let o = fspec(&["generate", "--n", "1", "--eigenvalues", "0.52", "--fn", "idem", "--margin", "0.05"]);
    assert_eq!(code(&o), 2);
    let o = fspec(&["generate", "--n", "2", "--eigenvalues", "1,2,3"]);
    assert_eq!(code(&o), 1);
    let o = fspec(&["generate", "--n", "2", "--eigenvalues", "x"]);
    assert_eq!(code(&o), 1);
}
