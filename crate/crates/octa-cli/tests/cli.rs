//! End-to-end tests of the `octa` binary: every subcommand driven through its
//! documented flags, with outputs parsed back from JSON.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn octa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn octa_json(args: &[&str]) -> Value {
    let out = octa(args);
    assert!(
        out.status.success(),
        "octa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("octa-cli-test-{name}-{}", std::process::id()));
    std::fs::write(&path, content).expect("temp file");
    path
}

#[test]
fn rank_reports_the_rank_defect_of_the_top_incidence() {
    let v = octa_json(&["rank", "--n", "3", "--t", "2", "--k", "3"]);
    assert_eq!(v["formula"], 7);
    assert_eq!(v["computed"], 7);
    assert_eq!(v["match"], true);
}

#[test]
fn rank_over_a_prime_field() {
    let v = octa_json(&["rank", "--n", "3", "--t", "1", "--k", "2", "--field", "fp:7"]);
    assert_eq!(v["computed"], 6);
    assert_eq!(v["match"], true);
    // Modulus at most n is rejected.
    let out = octa(&["rank", "--n", "3", "--t", "1", "--k", "2", "--field", "fp:3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_lists_the_twelve_edges() {
    let out = octa(&["enumerate", "--n", "3", "--k", "2"]);
    assert!(out.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "1,2");

    let v = octa_json(&["enumerate", "--n", "3", "--k", "2", "--json"]);
    assert_eq!(v["count"], 12);
    assert_eq!(v["faces"].as_array().unwrap().len(), 12);
}

#[test]
fn op_emits_exact_matrix_rows() {
    let v = octa_json(&["op", "--n", "2", "--k", "1", "--kind", "sigma", "--matrix"]);
    assert_eq!(v["rows"]["size"], 4);
    assert_eq!(v["matrix"][0][1], "1");
    assert_eq!(v["matrix"][0][0], "0");
    // Parametrized kinds parse too.
    let v = octa_json(&["op", "--n", "3", "--k", "2", "--kind", "rho:1"]);
    assert_eq!(v["rows"]["size"], 12);
    let out = octa(&["op", "--n", "3", "--k", "2", "--kind", "spin"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_reconstructs_and_reports_exact_norms() {
    let file = write_temp("faces", "1,-2\n");
    let v = octa_json(&["decompose", "--n", "3", "--k", "2", "--faces", file.to_str().unwrap()]);
    assert_eq!(v["reconstruction_ok"], true);
    assert_eq!(v["components"]["0,0"]["norm2"], "1/12");
    assert_eq!(v["components"]["0,0"]["dim"], 1);
    std::fs::remove_file(file).ok();
}

#[test]
fn design_recognizes_the_disjoint_edge_matching() {
    let file = write_temp("blocks", "1,2\n-1,3\n-2,-3\n");
    let v = octa_json(&[
        "design", "--n", "3", "--k", "2", "--t", "1", "--blocks",
        file.to_str().unwrap(),
    ]);
    assert_eq!(v["is_design"], true);
    assert_eq!(v["ell"], 1);
    assert_eq!(v["violating_components"].as_array().unwrap().len(), 0);
    std::fs::remove_file(file).ok();
}

#[test]
fn design_rejects_a_non_design_with_named_components() {
    let file = write_temp("oneblock", "1,2\n");
    let v = octa_json(&[
        "design", "--n", "3", "--k", "2", "--t", "1", "--blocks",
        file.to_str().unwrap(),
    ]);
    assert_eq!(v["is_design"], false);
    assert_eq!(v["ell"], Value::Null);
    assert!(!v["violating_components"].as_array().unwrap().is_empty());
    std::fs::remove_file(file).ok();
}

#[test]
fn orbits_of_the_coordinate_cycle() {
    let file = write_temp("gens", "2,3,1\n");
    let v = octa_json(&["orbits", "--n", "3", "--k", "1", "--gens", file.to_str().unwrap()]);
    assert_eq!(v["num_orbits"], 2);
    assert_eq!(v["orbit_sizes"], serde_json::json!([3, 3]));
    assert_eq!(v["fixed_space_dims"]["0,0"], 1);
    std::fs::remove_file(file).ok();
}

#[test]
fn monotone_reports_both_sides() {
    let file = write_temp("gens-mono", "2,3,1\n");
    let v = octa_json(&["monotone", "--n", "3", "--k", "2", "--gens", file.to_str().unwrap()]);
    assert_eq!(v["d_k_minus_1"], 2);
    assert_eq!(v["d_k"], 4);
    assert_eq!(v["inequality_holds"], true);
    assert_eq!(v["criterion_matches"], true);
    // Outside the theorem range the command errors.
    let out = octa(&["monotone", "--n", "3", "--k", "3", "--gens", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(file).ok();
}

#[test]
fn verify_passes_and_is_seed_stable() {
    let out = octa(&["verify", "--n", "2", "--seed", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS rank-formula")));
    assert!(!text.contains("FAIL"));

    let v = octa_json(&["verify", "--n", "2", "--seed", "9", "--json"]);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["failed"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_at_the_default_bound_exits_zero() {
    let v = octa_json(&["verify", "--n", "4", "--json"]);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["max_n"], 4);
}

#[test]
fn decompose_component_filters() {
    let file = write_temp("faces-filter", "1,-2\n");
    let v = octa_json(&[
        "decompose", "--n", "3", "--k", "2", "--faces", file.to_str().unwrap(),
        "--j", "1", "--i", "0",
    ]);
    let comps = v["components"].as_object().unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps.contains_key("1,0"));
    assert_eq!(v["reconstruction_ok"], true);
    let out = octa(&[
        "decompose", "--n", "3", "--k", "2", "--faces", file.to_str().unwrap(),
        "--i", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(file).ok();
}

#[test]
fn usage_errors_exit_with_code_two() {
    let out = octa(&["rank", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = octa(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_inputs_exit_with_code_one() {
    let file = write_temp("badface", "1,1\n");
    let out = octa(&["decompose", "--n", "3", "--k", "2", "--faces", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    std::fs::remove_file(file).ok();
}
