use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bracket_of_a_loop_is_minus_zeta_squared_terms() {
    let out = run(&["bracket", &data("loop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let coeff = &r["result"]["bracket"][0]["coeff"];
    assert_eq!(coeff, &serde_json::json!([[-2, -1, 1, 0, 1], [2, -1, 1, 0, 1]]));
    assert_eq!(r["config"]["subcommand"], "bracket");
}

#[test]
fn evaluated_bracket() {
    let out = run(&["bracket", &data("loop.json"), "--zeta", "-i"]);
    let r = report(&out);
    // −(−i)² − (−i)⁻² = 2
    assert_eq!(r["result"]["bracket"][0]["coeff"], serde_json::json!([[0, 2, 1, 0, 1]]));
}

#[test]
fn verify_comm_suite_passes() {
    let out = run(&["verify-comm", "--trials", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(report(&out)["result"]["failed"], 0);
}

#[test]
fn verify_comm_on_a_file() {
    let out = run(&["verify-comm", &data("loop.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["holds"], true);
}

#[test]
fn rp3_audit_reports_a_witness_and_succeeds() {
    let out = run(&["heegaard-audit", &data("l21.json"), "--winding", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["two_torsion"], true);
    assert_eq!(r["result"]["witnesses"][0]["writhe_mod4"], 2);
    assert_eq!(r["config"]["slide_bounds"]["winding_range"], 0);
}

#[test]
fn l31_audit_is_clean() {
    let out = run(&["heegaard-audit", &data("l31.json"), "--winding", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["witness_count"], 0);
    assert_eq!(r["result"]["psi"]["all_pass"], true);
}

#[test]
fn quotient_dimensions() {
    let args = ["--max-multiplicity", "4", "--winding", "0", "--max-crossings", "14"];
    let out = run(&[&["quotient-dim", &data("s3.json")][..], &args].concat());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["quotients"]["-i"]["dimension"], 1);
    assert_eq!(r["result"]["quotients"]["-1"]["dimension"], 1);
    let out = run(&[&["quotient-dim", &data("l31.json"), "--zeta", "-1"][..], &args].concat());
    assert_eq!(report(&out)["result"]["quotients"]["-1"]["presentation"], "truncated");
}

#[test]
fn signed_product_and_algebra() {
    let out = run(&["product", &data("horizontal.json"), &data("vertical.json"), "--heegaard", &data("l31.json"), "--zeta", "-i"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["lk2"], 0);
    let out = run(&["a-algebra", "--trials", "200", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify-marche", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let broken = run(&["bracket", &data("broken.json")]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&broken.stderr).contains("line 2"));
    assert_eq!(run(&["bracket", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["bracket", &data("loop.json"), "--zeta", "2"]).status.code(), Some(2));
    let unsigned = run(&["product", &data("horizontal.json"), &data("vertical.json"), "--heegaard", &data("l31.json")]);
    assert_eq!(unsigned.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let dir = std::env::temp_dir().join(format!("skein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json").display().to_string();
    let mut runs = Vec::new();
    for _ in 0..2 {
        let out = run(&["verify-comm", "--trials", "20", "--seed", "11", "--out", &path]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        runs.push(std::fs::read(&path).unwrap());
    }
    let (a, b) = (&runs[0], &runs[1]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(a).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    std::fs::remove_dir_all(&dir).unwrap();
}
