use std::process::Command;

use serde_json::Value;

fn wchar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wchar")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = wchar(args);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn grading_two_two() {
    let v = json(&["grading", "--partition", "2,2"]);
    assert_eq!(v["d_chi"], 4);
    assert_eq!(v["audit"]["surjective"], true);
    assert_eq!(v["fsupport"], serde_json::json!([[1, 3], [2, 4]]));
}

#[test]
fn exceptional_rule() {
    let v = json(&["exceptional", "--n", "4", "--p", "5", "--q", "2"]);
    assert_eq!(v["partition"], "2,2");
    let v = json(&["exceptional", "--n", "5", "--p", "7", "--q", "3", "--scan"]);
    assert_eq!(v["partition"], "2,3");
    let exceptional: Vec<&str> = v["scan"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["mtilde"].as_u64().unwrap() > 0 && s["divergent"].is_null() && s["almost_convergent"].as_u64().unwrap() > 0)
        .map(|s| s["partition"].as_str().unwrap())
        .collect();
    assert_eq!(exceptional, vec!["2,3"]);
}

#[test]
fn ising_character_series() {
    let v = json(&["character", "--n", "2", "--partition", "2", "--p", "4", "--q", "3", "--weight", "1", "--order", "8"]);
    let series: Vec<i64> = v["q_series"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(series, vec![1, 0, 1, 1, 2, 2, 3, 3, 5]);
    assert_eq!(v["certificate"]["passed"], true);
}

#[test]
fn output_formats() {
    let (code, table, _) = wchar(&["character", "--n", "2", "--partition", "2", "--p", "4", "--q", "3", "--weight", "2", "--order", "3", "--table"]);
    assert_eq!(code, 0);
    assert!(table.starts_with("d  xi  coefficient\n"));
    let (_, csv, _) = wchar(&["character", "--n", "2", "--partition", "2", "--p", "4", "--q", "3", "--weight", "2", "--order", "3", "--csv"]);
    assert_eq!(csv, "d,xi,coefficient\n0,0,1\n1,0,1\n2,0,1\n3,0,2\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["admissible", "--n", "4", "--partition", "2,2", "--p", "5", "--q", "2"];
    let a = wchar(&args);
    let b = wchar(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["counts"]["mtilde"], 8);
    assert_eq!(v["counts"]["classes"], 2);
    assert_eq!(v["bijection"]["count_identity"], true);
}

#[test]
fn oracle_modules() {
    let v = json(&["oracle", "--n", "3", "--partition", "3", "--module", "adjoint"]);
    assert_eq!(v["chain_dims"], serde_json::json!([8, 24, 24, 8]));
    assert_eq!(v["dims"], serde_json::json!([0, 0, 0, 0]));
    let v = json(&["oracle", "--partition", "1,1", "--module", "hw", "3"]);
    assert_eq!(v["dims"], serde_json::json!([4]));
    let v = json(&["oracle", "--partition", "2", "--module", "verma", "--verma-x", "-3", "--verma-depth", "6"]);
    assert_eq!(v["dims"], serde_json::json!([1, 0]));
    assert_eq!(v["truncation"]["stabilized"], true);
}

#[test]
fn classify_and_phi0() {
    let v = json(&["classify", "--partition", "2", "--lambda-bar", "-1/2,0"]);
    assert_eq!(v["nonvanishing"], true);
    let v = json(&["classify", "--partition", "2", "--lambda-bar", "0,0"]);
    assert_eq!(v["nonvanishing"], false);
    let v = json(&["phi0", "--partition", "2", "--p", "3", "--q", "2", "--weight", "1"]);
    assert_eq!(v["dimlimit"], "1");
}

#[test]
fn exit_codes() {
    // not an admissible number
    let (code, _, err) = wchar(&["admissible", "--partition", "2", "--p", "4", "--q", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("admissible number"));
    // floating point input is rejected
    let (code, _, _) = wchar(&["phi0", "--partition", "2", "--p", "3", "--q", "2", "--weight", "0.5"]);
    assert_eq!(code, 1);
    // partition of the wrong size
    let (code, _, _) = wchar(&["grading", "--n", "5", "--partition", "2,2"]);
    assert_eq!(code, 1);
    let (code, _, _) = wchar(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_single_criterion() {
    let v = json(&["verify", "--criterion", "1"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 1);
}
