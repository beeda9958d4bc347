use std::process::{Command, Output};

use serde_json::{json, Value};

use nwlab_core::json::{state_from_json, state_to_json};
use nwlab_core::modules::VermaModule;
use nwlab_core::rational::rat;

fn nwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nwlab")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn bracket_example() {
    let v = json_of(&nwlab(&["bracket", "--x", "a:2", "--y", "b:-2"]));
    assert_eq!(v, json!({"result": {"terms": [{"gen": "c", "mode": 0, "coeff": "1/1"}], "k": "2/1"}}));
}

#[test]
fn dims_of_vacuum_module() {
    let v = json_of(&nwlab(&["dims", "--level", "1", "--base", "trivial", "--d", "0", "--max", "3"]));
    assert_eq!(v, json!({"dims": [1, 4, 14, 40]}));
}

#[test]
fn singular_report_has_one_dimensional_kernel() {
    let args = ["singular", "--level", "1", "--c", "-1", "--d", "0", "--base", "verma", "--grading", "new", "--height", "1", "--dweight", "-1"];
    let v = json_of(&nwlab(&args));
    assert_eq!(v["component"], json!({"height": 1, "dweight": "-1/1"}));
    assert_eq!(v["matched"], json!(["PlusM:m=1,k=1"]));
    let kernel = v["kernel"].as_array().unwrap();
    assert_eq!(kernel.len(), 1);

    let base = VermaModule { c: rat(-1), d: rat(0), b_cap: 24 };
    let state = state_from_json(&kernel[0], &base).unwrap();
    assert_eq!(state_to_json(&state, &base), kernel[0]);
}

#[test]
fn virasoro_reports_central_charge() {
    let v = json_of(&nwlab(&["virasoro", "--level", "1", "--m", "2", "--n", "-2", "--max", "2"]));
    assert_eq!(v, json!({"m": 2, "n": -2, "verified": true, "central_coeff": "2/1", "central_charge": "4/1"}));
}

#[test]
fn wakimoto_lists_every_relation() {
    let v = json_of(&nwlab(&["wakimoto", "--level", "3", "--alpha-p", "1", "--max-mode", "1", "--max-depth", "2"]));
    assert_eq!(v["passed"], json!(true));
    let relations = v["relations"].as_array().unwrap();
    assert_eq!(relations.len(), 10 * 9);
    assert!(relations.iter().all(|r| r["passed"] == json!(true)));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["nf", "--word", "b:2,a:-1,d:1,c:-3", "--level", "5/3"];
    let first = nwlab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, nwlab(&args).stdout);
}

#[test]
fn probe_finds_plus_series_vector() {
    let v = json_of(&nwlab(&["probe", "--level", "1", "--c", "-1", "--base", "verma", "--grading", "new", "--max", "1"]));
    let found = v["found"].as_array().unwrap();
    assert!(found.iter().any(|r| r["matched"] == json!(["PlusM:m=1,k=1"])));
    assert_eq!(v["irreducible_up_to"], Value::Null);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["bracket", "--x", "q:1", "--y", "a:0"],
        vec!["dims", "--level", "1/0", "--max", "2"],
        vec!["dims", "--base", "nonesuch", "--max", "2"],
        vec!["singular", "--grading", "sideways", "--height", "1"],
        vec!["singular", "--grading", "new", "--height", "1"],
        vec!["casimir", "--level", "0", "--modified"],
    ] {
        let out = nwlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn depth_limit_comes_from_environment() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_nwlab"))
            .args(["dims", "--max", "3"])
            .env("NWLAB_DEPTH_LIMIT", limit)
            .output()
            .unwrap()
    };
    let refused = run("2");
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("NWLAB_DEPTH_LIMIT"));
    assert_eq!(run("3").status.code(), Some(0));
}

#[test]
fn pretty_renders_tables() {
    let out = nwlab(&["casimir", "--level", "1", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("coeff"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
