use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxwitness")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn shapes_b2_lists_four() {
    let v = json(&["shapes", "B2", "--json"]);
    assert_eq!(v["schema"], 1);
    let shapes = v["result"]["shapes"].as_array().unwrap();
    assert_eq!(shapes.len(), 4);
    for key in ["id", "codim", "S_lambda", "orbit_size", "class_reps"] {
        assert!(shapes[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn conjecture_a2_verified() {
    let out = run(&["verify", "conjecture", "A2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "verified");
    assert_eq!(v["result"]["shapes"].as_array().unwrap().len(), 3);
}

#[test]
fn rel_b3_parabolic() {
    let out = run(&["verify", "rel", "B3", "--parabolic", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: verified"));
}

#[test]
fn a1_idempotent_coefficients() {
    let out = run(&["idempotents", "A1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("e_0b1 = {x_0b0: -1/2, x_0b1: 1}"), "{text}");
    let v = json(&["idempotents", "A1", "--json"]);
    assert_eq!(v["result"]["shapes"][1]["e"]["0b1"]["0b0"], "-1/2");
}

#[test]
fn a2_orlik_solomon_dims() {
    let v = json(&["os", "A2", "--json"]);
    assert_eq!(v["result"]["graded_dims"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["result"]["dim"], 6);
}

#[test]
fn sigma_file_is_used() {
    let dir = std::env::temp_dir().join(format!("coxwitness-sigma-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sigma.json");
    std::fs::write(&path, r#"{"default": "1", "overrides": {"0b0": "2"}}"#).unwrap();
    let v = json(&["idempotents", "A1", "--sigma", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["result"]["shapes"][0]["sigma_lambda"], "2");
    assert_eq!(v["result"]["shapes"][0]["e"]["0b0"]["0b0"], "1/4");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "conjecture", "B2"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["shapes", "E8"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "rel", "B3", "--parabolic", "0,1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "rel", "B3", "--parabolic", "7"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "section5", "9"]).status.code(), Some(2));
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("coxwitness-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    let out = run(&["verify", "lemmas", "B2", "--seed", "4", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    let again = run(&["verify", "lemmas", "B2", "--seed", "4", "--json"]);
    assert_eq!(first, again.stdout);
}

#[test]
fn section_verbs() {
    let v = json(&["verify", "section6", "4", "--json"]);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["result"]["verifications"].as_array().unwrap().len(), 5);
    let v = json(&["verify", "section5", "3", "--json"]);
    assert_eq!(v["result"]["verifications"][0]["data"]["char_E"], serde_json::json!(["2", "0", "-1"]));
}
