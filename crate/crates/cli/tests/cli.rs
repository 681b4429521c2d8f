use std::process::{Command, Output};

use serde_json::Value;

fn wbrauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbrauer")).args(args).env_remove("WBRAUER_CACHE_DIR").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn relations(v: &Value) -> Vec<String> {
    v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap().iter().map(|c| c["relation"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn presentation_exits_zero() {
    let out = wbrauer(&["verify-presentation", "--r", "2", "--t", "1"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "verify-presentation");
    assert_eq!(v["passed"], true);
}

#[test]
fn isomorphism_reports_tau_residual() {
    let out = wbrauer(&["verify-isomorphism", "--r", "1", "--t", "1", "--m", "6", "--n", "6", "--delta", "2"]);
    assert!(out.status.success());
    let v = report(&out);
    let tau = v["reports"][0]["checks"].as_array().unwrap().iter().find(|c| c["relation"] == "τ_k² = −δ τ_k").expect("τ check");
    assert!(tau["residual"].as_f64().unwrap() < 1e-20);
}

#[test]
fn counterexample_lists_terms() {
    let out = wbrauer(&["counterexample"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x₂x₃e₂ = −e₂ − δ s₁e₂"));
    assert!(text.contains("e₂x₂x₃ = −δ e₂s₁ − e₂"));
}

#[test]
fn center_writes_csv() {
    let path = std::env::temp_dir().join(format!("wbrauer-center-{}.csv", std::process::id()));
    let out = wbrauer(&["center", "--r", "2", "--t", "1", "--delta", "3", "--max-rank", "2", "--csv", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,t,delta,full_dim,constructed_dim,degree_bound"));
    assert!(lines.any(|l| l == "1,1,3,2,2,4"));
    assert!(relations(&report(&out)).iter().any(|r| r == "p1*p3 is central"));
}

#[test]
fn inadmissible_polynomial_is_an_error() {
    let out = wbrauer(&["center", "--r", "2", "--t", "1", "--poly", "p2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q-cancel"));
}

#[test]
fn assumption_is_validated() {
    let out = wbrauer(&["build-cyclotomic", "--r", "3", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size assumption"));
    let out = wbrauer(&["build-cyclotomic", "--delta", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("wbrauer-det-{}", std::process::id()));
    let run = |cache: bool| {
        let mut args = vec!["eigen-crosscheck", "--r", "1", "--t", "1"];
        let d = dir.to_str().unwrap();
        if cache {
            args.extend(["--cache-dir", d]);
        }
        let mut v = report(&wbrauer(&args));
        v["elapsed_ms"] = Value::Null;
        v
    };
    let first = run(false);
    assert_eq!(first, run(false));
    assert_eq!(first, run(true));
    assert_eq!(first, run(true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn young4_tables_and_out_file() {
    let csv = std::env::temp_dir().join(format!("wbrauer-paths-{}.csv", std::process::id()));
    let json = std::env::temp_dir().join(format!("wbrauer-paths-{}.json", std::process::id()));
    let out = wbrauer(&["young4-tables", "--r", "1", "--t", "1", "--csv", csv.to_str().unwrap(), "--out", json.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count();
    assert_eq!(rows, 1 + 6 + 6);
    std::fs::remove_file(csv).unwrap();
    std::fs::remove_file(json).unwrap();
}

#[test]
fn schur_weyl_defaults_to_m_three() {
    let out = wbrauer(&["schur-weyl", "--r", "1", "--t", "1"]);
    assert!(out.status.success());
    assert!(relations(&report(&out)).iter().any(|r| r == "commutant dimension = (r+t)!"));
}
