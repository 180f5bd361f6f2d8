use std::process::Command;

use freudenthal::report::{CheckRecord, CheckReport, Evidence, Report};
use freudenthal::sampling::Budget;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_freudenthal")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn real_table_command() {
    let (code, json) = run(&["real-table"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "pass");
    let witt: Vec<u64> = json["data"]["rows"].as_array().unwrap().iter().map(|r| r["witt_index"].as_u64().unwrap()).collect();
    assert_eq!(witt, vec![28, 28, 24, 0]);
}

#[test]
fn classify_ms_reports_degenerate_with_exit_zero() {
    let (code, json) = run(&["fts", "classify", "--kind", "ms", "--w-dim", "26"]);
    assert_eq!(code, 0);
    assert_eq!(json["command"], "fts classify --kind ms --w-dim 26");
    assert_eq!(json["data"]["classification"]["verdict"], "degenerate");
    assert_eq!(json["data"]["classification"]["witness"]["residual"], "152/1");
    assert_eq!(json["data"]["diagnostics"]["remainder"], "19/1");
    let (_, formal) = run(&["fts", "classify", "--kind", "ms", "--w-dim", "27"]);
    assert_eq!(formal["data"]["classification"]["witness"]["residual"], "160/1");
}

#[test]
fn gift_check_albert_split() {
    let (code, json) = run(&["gift", "check", "--kind", "albert-split", "--samples", "50"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = json["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["G1", "G2", "G3", "G4", "G5"]);
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(json["budget"]["samples"], 50);
}

#[test]
fn failing_checks_exit_one_with_witness() {
    let (code, json) = run(&["gift", "check", "--kind", "ms", "--w-dim", "4", "--samples", "5"]);
    assert_eq!(code, 1);
    let g5 = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "G5").unwrap();
    assert_eq!(g5["status"], "fail");
    assert!(g5["witness"].is_object());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fts", "bogus"][..],
        &["real-table", "--samples", "0"],
        &["fts", "build", "--kind", "ms", "--w-dim", "25"],
        &["fts", "check", "--kind", "octonion"],
        &["descent", "build", "--a", "4"],
        &["symplem", "verify", "--n", "4"],
    ] {
        let (code, _) = run(args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn identical_seeds_give_identical_reports() {
    let args = ["symplem", "verify", "--a", "2", "--b", "3", "--n", "2", "--seed", "17"];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(strip_timing(a.clone()), strip_timing(b));
    let (_, c) = run(&["symplem", "verify", "--a", "2", "--b", "3", "--n", "2", "--seed", "18"]);
    assert_ne!(a["data"]["params"], c["data"]["params"]);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("freudenthal-report-{}.json", std::process::id()));
    let (code, stdout) = run(&["real-table", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, Value::Null);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], "real-table");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn inconclusive_maps_to_exit_zero() {
    let mut checks = CheckReport::default();
    checks.push(CheckRecord::pass("a", Evidence::samples(1)));
    checks.push(CheckRecord::inconclusive("b", Evidence::samples(3), "no witness"));
    let report = Report::new("test", Budget::default(), checks, Value::Null, 0);
    assert_eq!(report.exit_code(), 0);
    let mut failing = CheckReport::default();
    failing.push(CheckRecord::fail("c", Value::Null, Evidence::samples(1)));
    assert_eq!(Report::new("test", Budget::default(), failing, Value::Null, 0).exit_code(), 1);
}

#[test]
fn fts_build_and_check_commands() {
    let (code, json) = run(&["fts", "build", "--kind", "ms", "--w-dim", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dim"], 10);
    // the trace-square identity needs dim W = 27, so the check fails for W = 4
    let (code, json) = run(&["fts", "check", "--kind", "ms", "--w-dim", "4", "--samples", "5"]);
    assert_eq!(code, 1);
    let failing: Vec<&str> = json["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["trace_square"]);
}
