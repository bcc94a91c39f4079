use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmint")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn dmatrix_csv_matches_golden() {
    let o = run(&["dmatrix", "--max-m", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/dmatrix10.csv"));
}

#[test]
fn dmatrix_single_entry_and_bad_bound() {
    let o = run(&["dmatrix", "--max-m", "0", "--format", "csv"]);
    assert_eq!(stdout(&o), "3/2\n");
    assert_eq!(code(&["dmatrix", "--max-m", "-1"]), 2);
    assert_eq!(code(&["dmatrix", "--max-m", "x"]), 2);
    assert_eq!(code(&["dmatrix", "--max-m", "3", "--format", "xml"]), 2);
}

#[test]
fn dmatrix_json_round_trips() {
    let o = run(&["dmatrix", "--max-m", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_m"], 3);
    assert_eq!(v["rows"][0][0], "3/2");
    assert_eq!(v["rows"][3][3], "24");
    let table = stdout(&run(&["dmatrix", "--max-m", "3"]));
    assert!(table.contains("3/2") && table.lines().count() == 5);
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&run(&["eval", "2", "2"])), "6\n");
    assert_eq!(stdout(&run(&["eval", "5", "2"])), "0\n");
    assert_eq!(stdout(&run(&["eval", "1", "2"])), "-6\n");
    assert_eq!(stdout(&run(&["eval", "1", "-2"])), "-6\n");
    assert_eq!(code(&["eval", "-1", "2"]), 2);
}

#[test]
fn check_suites() {
    assert_eq!(code(&["check", "basis", "--max-m", "10"]), 0);
    assert_eq!(code(&["check", "integrality", "--max-m", "12"]), 0);
    assert_eq!(code(&["check", "relations", "--max-m", "8", "--jobs", "2"]), 0);
    assert_eq!(code(&["check", "everything"]), 2);
    let o = run(&["check", "basis", "--max-m", "6", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["failures"].as_array().unwrap().is_empty()));
}

#[test]
fn check_output_is_deterministic() {
    let a = stdout(&run(&["check", "relations", "--max-m", "6", "--format", "csv"]));
    let b = stdout(&run(&["check", "relations", "--max-m", "6", "--format", "csv", "--jobs", "1"]));
    assert_eq!(a, b);
}

#[test]
fn certify_builtins() {
    let o = run(&["certify", "frac1-diag"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bound      5"), "{text}");
    assert!(text.contains("verdict    PASS"));
    let o = run(&["certify", "frac2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_bound"], 6);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(code(&["certify", "frac9"]), 2);
    assert_eq!(code(&["certify"]), 2);
}

#[test]
fn certify_emits_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diag.cert");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["certify", "frac1-diag", "--emit-certificate", p]), 0);
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(first.contains("VERDICT PASS"));
    assert_eq!(code(&["certify", "frac1-diag", "--emit-certificate", p, "--jobs", "1"]), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn certify_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.frs");
    std::fs::write(&bad, "vars m\nnum 2m +\n").unwrap();
    let o = run(&["certify", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let central = dir.path().join("central.frs");
    std::fs::write(&central, "# central binomial\nvars m\nnum 2m\nden m\nden m\n").unwrap();
    assert_eq!(code(&["certify", "--spec", central.to_str().unwrap()]), 0);

    let inverse = dir.path().join("inverse.frs");
    std::fs::write(&inverse, "vars m\nnum m\nnum m\nden 2m\n").unwrap();
    let o = run(&["certify", "--spec", inverse.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL at q="));

    let binomial = dir.path().join("binomial.frs");
    std::fs::write(&binomial, "vars k m i\nassume m >= i\nnum m\nden i\nden m - i\n").unwrap();
    let spec = binomial.to_str().unwrap();
    assert_eq!(code(&["certify", "--spec", spec, "--order", "i,k,m"]), 0);
    assert_eq!(code(&["certify", "--spec", spec, "--order", "i,k"]), 2);
    assert_eq!(code(&["certify", "--spec", dir.path().join("missing").to_str().unwrap()]), 2);

    let drifting = dir.path().join("drift.frs");
    std::fs::write(&drifting, "vars k\nnum 2k - 2\n").unwrap();
    assert_eq!(code(&["certify", "--spec", drifting.to_str().unwrap()]), 2);
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(code(&["oracle", "frac1-diag", "--max-m", "30"]), 0);
    let dir = tempfile::tempdir().unwrap();
    let control = dir.path().join("control.frs");
    std::fs::write(&control, "vars m\nassume m >= 0\nnum 2m\nnum m + 1\nden m\nden m\nden m + 2\n").unwrap();
    let o = run(&["oracle", "--spec", control.to_str().unwrap(), "--max-m", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("m=1 = 2/3"));

    let loose = dir.path().join("loose.frs");
    std::fs::write(&loose, "vars m\nassume m >= 0\nnum m - 3\n").unwrap();
    let o = run(&["oracle", "--spec", loose.to_str().unwrap(), "--max-m", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("m=0") || stdout(&o).contains("m = 0"), "{}", stdout(&o));
    assert_eq!(code(&["oracle", "frac2", "--max-m", "-3"]), 2);
}
