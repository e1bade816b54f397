use coxcoh_cli::{run, Report};
use std::process::Command;

fn coxcoh(args: &[&str]) -> coxcoh_cli::Outcome {
    run(std::iter::once("coxcoh").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Report {
    let mut argv = args.to_vec();
    argv.extend(["--format", "json"]);
    let out = coxcoh(&argv);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn reflection_cohomology_of_a3() {
    let out = coxcoh(&["cohomology", "A3", "--rep", "reflection", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: Report = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r.h_dims, [0, 2, 0]);
    assert_eq!(r.space_dims, [3, 6, 1]);
    assert_eq!(r.euler, Some(-2));
    assert_eq!(r.field.as_ref().map(|f| f.m), Some(1));
    assert_eq!(r.verdict, "pass");

    let text = coxcoh(&["cohomology", "H3"]).stdout;
    assert!(text.contains("Q(2cos(pi/5))"), "{text}");
}

#[test]
fn trivial_suite() {
    let r = json(&["verify", "trivial"]);
    assert_eq!(r.checks.len(), 9);
    assert!(r.checks.iter().all(|c| c.detail["comparison"]["verdict"] == "exact-match"));
    assert!(r.passed());
}

#[test]
fn tor_for_one_variable() {
    let r = json(&["tor", "--m", "1", "--i-max", "5"]);
    assert_eq!(r.h_dims, [1, 1, 1, 1, 1]);
    assert!(r.passed());
}

#[test]
fn representation_specs() {
    assert_eq!(json(&["cohomology", "A2", "--rep", "reflection+trivial"]).h_dims, [0, 1]);
    assert_eq!(json(&["cohomology", "A3", "--rep", "trivial:2"]).space_dims, [2, 6, 2]);
    assert!(json(&["cohomology", "B3", "--rep", "zero"]).h_dims.iter().all(|&d| d == 0));
    assert_eq!(json(&["cohomology", "A3", "--rep", "specht:2,1,1"]).space_dims[0], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(coxcoh(&["cohomology", "Q7"]).code, 2);
    assert_eq!(coxcoh(&["cohomology", "A3", "--rep", "bogus"]).code, 2);
    assert_eq!(coxcoh(&["frobnicate"]).code, 2);
    assert_eq!(coxcoh(&["configspace", "--n", "9"]).code, 2);
    let over = coxcoh(&["tor", "--m", "3", "--i-max", "4"]);
    assert_eq!(over.code, 3, "{}", over.stderr);
    assert!(over.stderr.contains("MiB") || over.stderr.contains("budget"), "{}", over.stderr);
    assert_eq!(coxcoh(&["--help"]).code, 0);
}

#[test]
fn budget_from_environment() {
    let bin = env!("CARGO_BIN_EXE_coxcoh");
    let over = Command::new(bin).args(["tor", "--m", "2", "--i-max", "3"]).env("COXCOH_BUDGET_MB", "0").output().unwrap();
    assert_eq!(over.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&over.stderr).contains("budget"));
    let ok = Command::new(bin).args(["tor", "--m", "2", "--i-max", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn json_round_trip_and_out_file() {
    let r = json(&["verify", "reflection", "--groups", "A2,D4"]);
    let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
    let shifted = r.checks.iter().find(|c| c.name == "D4").unwrap();
    assert_eq!(shifted.detail["comparison"]["verdict"], "match-with-degree-shift");

    let dir = std::env::temp_dir().join(format!("coxcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    let out = coxcoh(&["cohomology", "A2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json(&["cohomology", "A2"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_without_checks_pass() {
    let r = json(&["cohomology", "A1", "--rep", "zero"]);
    assert!(r.checks.is_empty() || r.checks.iter().all(|c| c.passed()));
    assert_eq!(r.verdict, "pass");
}
