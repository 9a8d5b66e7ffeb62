use std::process::{Command, Output};

use serde_json::Value;

fn zomega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zomega"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn zeta_two_prints_pi_squared_over_six() {
    let v = json(&zomega(&["zeta", "--s", "2", "--n", "0"]));
    let re = v["result"]["value"][0].as_f64().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(zomega(&["zeta", "--s", "1"]).status.code(), Some(2));
    assert_eq!(zomega(&["perron-check", "--x", "1"]).status.code(), Some(2));
    assert_eq!(zomega(&["zeta", "--s", "0.5+1e4i", "--target-error", "1e-18"]).status.code(), Some(1));
    assert_eq!(zomega(&["conjugate", "--family", "nope", "--y", "1"]).status.code(), Some(2));
}

#[test]
fn config_hash_survives_round_trip() {
    let v = json(&zomega(&["conjugate", "--family", "case2_g", "--y", "40"]));
    let config = &v["config"];
    let text = serde_json::to_string(config).unwrap();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(zomega::canonical_hash(&back), v["config_hash"].as_str().unwrap());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    std::fs::write(&path, serde_json::to_string(&config["params"]).unwrap()).unwrap();
    let again = json(&zomega(&["conjugate", "--y", "1", "--config", path.to_str().unwrap()]));
    assert_eq!(again, v);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["scan", "--preset", "case3", "--T", "1e4", "--t-points", "5", "--sigma-points", "3"];
    let a = zomega(&args);
    let b = zomega(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn perron_check_ones() {
    let v = json(&zomega(&["perron-check", "--series", "ones", "--x", "50.5", "--b", "2", "--T", "1e4"]));
    assert_eq!(v["result"]["lhs"].as_f64().unwrap(), 1250.0);
    assert!(v["result"]["ratio"].as_f64().unwrap() <= 10.0);
}

#[test]
fn lower_bound_case3_holds() {
    let v = json(&zomega(&["lower-bound", "--x", "1e4", "--case", "3", "--A", "2"]));
    let r = &v["result"];
    assert!(r["bound"].as_f64().unwrap() <= r["log_sup"].as_f64().unwrap());
    assert_eq!(r["holds"], Value::Bool(true));
}

#[test]
fn csv_output() {
    let out = zomega(&["coeffs", "--case", "1", "--X", "50", "--format", "csv", "--digits", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,coefficient"));
    assert_eq!(lines.count(), 50);
}
