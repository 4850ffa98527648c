use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isorec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_slice(&run(&all).stdout).expect("valid json")
}

#[test]
fn poly_prints_fibonacci_polynomial() {
    assert_eq!(stdout(&["poly", "gfp", "-k", "3", "-n", "3"]).trim(), "t1^3 + 2*t1*t2 + t3");
    assert_eq!(stdout(&["poly", "glp", "-k", "2", "-n", "2"]).trim(), "t1^2 + 2*t2");
}

#[test]
fn seq_with_negative_core_entries() {
    // f_n = -f_{n-2}
    assert_eq!(stdout(&["seq", "[0,-1]", "--to", "5"]).trim(), "1, 0, -1, 0, 1, 0");
}

#[test]
fn seq_mod_p() {
    assert_eq!(stdout(&["seq", "[1,1]", "-p", "2", "--to", "5"]).trim(), "1, 1, 0, 1, 1, 0");
}

#[test]
fn period_text_and_integers() {
    assert_eq!(stdout(&["period", "[1,1]", "-p", "11"]).trim(), "c_11 = 10 (pure)");
    assert!(stdout(&["period", "[0,0,0,-1]", "--integers"]).starts_with("periodic over Z, period 8"));
}

#[test]
fn factor_and_disc() {
    assert_eq!(
        stdout(&["factor", "[0,2,1]", "-p", "3"]).trim(),
        "X^3 + X + 2 = (X + 1)(X^2 + 2*X + 2) mod 3"
    );
    let disc = stdout(&["disc", "[1,1]"]);
    assert!(disc.contains("disc = 5"));
    assert!(disc.contains("ramified primes: 5"));
}

#[test]
fn composite_modulus_is_rejected() {
    let out = run(&["period", "[1,1]", "-p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn malformed_core_is_a_usage_error() {
    assert_eq!(run(&["seq", "[1,x]"]).status.code(), Some(2));
}

#[test]
fn ring_json_has_report_keys() {
    let v = json(&["ring", "[0,2,1]", "-p", "3"]);
    assert_eq!(v["command"], "ring");
    assert_eq!(v["ok"], true);
    let s = &v["payload"];
    assert_eq!(s["c_p"], 8);
    assert_eq!(s["|J|"], "1");
    assert_eq!(s["thm_6_7_consistent"], true);
}

#[test]
fn ring_orbits_over_budget_still_succeeds() {
    let out = run(&["--budget", "10", "ring", "[0,2,1]", "-p", "3", "--orbits"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("orbits omitted"));
}

#[test]
fn json_payload_is_deterministic() {
    let a = json(&["--seed", "3", "verify", "schur", "--samples", "20"]);
    let b = json(&["--seed", "3", "verify", "schur", "--samples", "20"]);
    assert_eq!(a["payload"], b["payload"]);
}

#[test]
fn scan_reports_each_prime() {
    let v = json(&["scan", "[1,1]", "--primes", "2..11"]);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let five = rows.iter().find(|r| r["p"] == 5).unwrap();
    assert_eq!(five["c_p"], 20);
    assert_eq!(five["ramified"], true);
}

#[test]
fn verify_thm67_passes() {
    let text = stdout(&["verify", "thm67", "--k-max", "2"]);
    assert!(text.starts_with("thm67: PASS"), "{text}");
}
