use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_padic-dyn"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn squaring_on_z2_matches_golden_file() {
    let (code, json, _) = run(&["decompose", "--p", "2", "--m", "2", "--max-level", "8"]);
    assert_eq!(code, 0);
    let golden = include_str!("golden/decompose_p2_m2_n8.json");
    assert_eq!(json, golden);
    let v: Value = serde_json::from_str(&json).unwrap();
    padic_dynamics::json::validate(&v).unwrap();
    assert_eq!(v["periodic_orbits"].as_array().unwrap().len(), 2);
    assert_eq!(v["components"].as_array().unwrap().len(), 0);
    assert_eq!(v["basins"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["decompose", "--p", "3", "--m", "7", "--max-level", "6"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn period_two_orbit_at_plus_minus_i() {
    let (code, json, _) = run(&["decompose", "--p", "5", "--m", "15", "--max-level", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    let orbits = v["periodic_orbits"].as_array().unwrap();
    let two: Vec<&Value> = orbits.iter().filter(|o| o["period"] == 2).collect();
    assert_eq!(two.len(), 1);
    let pts: Vec<u64> = two[0]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["center"].as_str().unwrap().parse().unwrap())
        .collect();
    for x in &pts {
        assert_eq!((x * x + 1) % 3125, 0);
    }
    let idx = orbits.iter().position(|o| o["period"] == 2).unwrap();
    let basin = v["basins"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["attractor_index"] == idx)
        .unwrap();
    let covered: u64 = basin["region"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| 5u64.pow(5 - b["level"].as_u64().unwrap() as u32))
        .sum();
    assert_eq!(covered + 2, 2 * 625);
}

#[test]
fn generic_prime_uses_empirical_certificates() {
    let (code, json, _) = run(&["decompose", "--p", "7", "--m", "3", "--max-level", "4"]);
    assert!(code == 0 || code == 2);
    let v: Value = serde_json::from_str(&json).unwrap();
    for c in v["components"].as_array().unwrap() {
        assert_eq!(c["certificate"]["kind"], "Empirical");
        assert_eq!(c["verified_level"], 4);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decompose", "--p", "2", "--m", "5", "--max-level", "6"]).0, 2);
    assert_eq!(run(&["decompose", "--p", "2", "--m", "5", "--max-level", "6", "--strict"]).0, 3);
    assert_eq!(run(&["decompose", "--p", "6", "--m", "5", "--max-level", "6"]).0, 1);
    assert_eq!(run(&["decompose", "--p", "2", "--m", "1", "--max-level", "6"]).0, 1);
    assert_eq!(run(&["decompose", "--p", "2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_passes_on_theorem_cases() {
    let (code, json, _) = run(&["verify", "--p", "3", "--m", "7", "--max-level", "5"]);
    assert_eq!(code, 0, "{json}");
    let (code, json, _) = run(&["verify", "--p", "2", "--m", "3", "--max-level", "8"]);
    assert_eq!(code, 0, "{json}");
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["oracle_level"], 8);
}

#[test]
fn verify_routes_conjectural_cases() {
    let (code, text, _) = run(&["verify", "--p", "5", "--m", "7", "--max-level", "4", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("conjectural-pass"));
}

#[test]
fn lift_tree_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.dot");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["lift-tree", "--p", "3", "--m", "5", "--max-level", "5", "--dot", p]).0, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("PartiallySplits"));
    let bad = dir.path().join("missing").join("out.dot");
    assert_eq!(run(&["lift-tree", "--p", "3", "--m", "5", "--max-level", "3", "--dot", bad.to_str().unwrap()]).0, 1);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let (code, stdout, _) =
        run(&["decompose", "--p", "3", "--m", "2", "--max-level", "4", "--output", path.to_str().unwrap()]);
    assert!(code == 0 || code == 2);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    padic_dynamics::json::validate(&v).unwrap();
}

#[test]
fn node_cap_env_var_limits_the_oracle() {
    let args = ["census", "--p", "3", "--m", "7", "--max-level", "4"];
    let ok = bin().args(args).env("PADIC_NODE_CAP", "80").output().unwrap();
    assert_eq!(ok.status.code(), Some(1));
    let ok = bin().args(args).env("PADIC_NODE_CAP", "81").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["levels"][1]["growing"]["1"], 4);
}
