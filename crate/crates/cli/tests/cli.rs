use std::path::PathBuf;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Report {
    command: String,
    seed: u64,
    ok: bool,
    data: Value,
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).env_remove("HECKE_MOMENT_CACHE").output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    // every report re-serializes to the same document
    assert_eq!(serde_json::to_value(&report).unwrap(), serde_json::from_str::<Value>(&text).unwrap());
    (out.status.code().unwrap(), report)
}

#[test]
fn genfun_r1_entries() {
    let (code, r) = json(&["genfun", "--family", "gl", "--n", "2", "--order", "2"]);
    assert_eq!(code, 0);
    let coeffs = r.data["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    // r_1(e_i^*, e_j) = E_ji + δ_ij Id in coordinates a_kl
    assert_eq!(coeffs[1]["table"][0][0], "2*a11 + a22");
    assert_eq!(coeffs[1]["table"][0][1], "a12");
    assert_eq!(coeffs[0]["table"][1][1], "1");
}

#[test]
fn genfun_assembles_kappa() {
    let (code, r) = json(&["genfun", "--family", "gl", "--n", "2", "--order", "0", "--beta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["kappa"].as_array().unwrap().len(), 2);
    let out = run(&["genfun", "--family", "sp", "--n", "1", "--beta", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weyl_algebra_is_flat() {
    let (code, r) = json(&["flatness", "--spec", &data("weyl_gl2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.data["flat"], true);
    assert_eq!(r.command, "flatness");
}

#[test]
fn census_and_normal_form() {
    let (code, r) = json(&["census", "--spec", &data("z2_cherednik.json"), "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["census"], r.data["undeformed"]);
    let (_, r) = json(&["nf", "--spec", &data("z2_cherednik.json"), "y1 x1"]);
    // y x = x y + 2c s + t with c = -1/4
    assert_eq!(r.data["normal_form"], "x1*y1 - 1/2*g1 + 1");
}

#[test]
fn dropped_trace_fails_closure() {
    let (code, r) = json(&["lie-closure", "--n", "2", "--drop-trace"]);
    assert_eq!(code, 3);
    assert!(!r.ok);
    assert!(r.data["witness"].is_array());
    let (code, r) = json(&["lie-closure", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["dim"], 15);
    assert_eq!(r.data["phi_isomorphism"], true);
}

#[test]
fn bad_diagram_is_check_failure() {
    let (code, r) = json(&["wreath", "check", "--spec", &data("bad_diagram.json")]);
    assert_eq!(code, 3);
    assert_eq!(r.data["failures"][0]["condition"], 1);
    let (code, r) = json(&["wreath", "check", "--spec", &data("z2_accept.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.data["admissible"], true);
}

#[test]
fn schema_errors_exit_2() {
    let out = run(&["--format", "json", "flatness", "--spec", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "schema");
    let out = run(&["dunkl", "commute", "--dunkl", &data("weyl_gl2.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn sampled_commutator_is_deterministic() {
    let args = ["--format", "json", "--seed", "17", "dunkl", "commute", "--dunkl", &data("o2.json"), "--degree", "3", "--sample", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r.seed, 17);
    assert_eq!(r.data["zero"], true);
}

#[test]
fn dihedral_dunkl_commute() {
    let (code, r) = json(&["dunkl", "commute", "--dunkl", &data("dihedral.json"), "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["zero"], true);
}

#[test]
fn dunkl_apply_on_linear() {
    // D_i u_j = (t + 2k/d) δ_ij for the orthogonal variant
    let (_, r) = json(&["dunkl", "apply", "--dunkl", &data("o2.json"), "--poly", "u1"]);
    assert_eq!(r.data["output"], "4/3");
    let (_, r) = json(&["dunkl", "matrices", "--dunkl", &data("o2.json"), "--degree", "1"]);
    assert_eq!(r.data["d"][0][0], serde_json::json!(["4/3", "0"]));
}

#[test]
fn module_reports() {
    let (code, r) = json(&["verma", "--spec", &data("weyl_gl2.json"), "--top", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["dims"], serde_json::json!([1, 2, 3, 4]));
    let (_, r) = json(&["singular", "--spec", &data("tau_gl2.json"), "--degree", "1"]);
    assert_eq!(r.data["vectors"].as_array().unwrap().len(), 2);
    let (_, r) = json(&["shapovalov", "--dunkl", &data("o2.json"), "--top", "3"]);
    for row in r.data.as_array().unwrap() {
        assert_eq!(row["kernel"], 0);
    }
}

#[test]
fn lc_and_character() {
    let (code, r) = json(&["lc", "--d", "2", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["dimension"], 9);
    assert_eq!(r.data["sl2_triple"]["holds"], true);
    let (_, r) = json(&["character", "--d", "3", "--order", "4"]);
    assert_eq!(r.data["coeffs"], serde_json::json!(["1", "3", "6", "10", "15"]));
    assert_eq!(r.data["offset"], "3/2");
}

#[test]
fn criterion_instances() {
    let (code, r) = json(&["criterion", "--n", "2", "--N", "1", "--beta", "0,5/2"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["lhs"], "1");
    let (code, r) = json(&["criterion", "--n", "2", "--N", "1", "--beta=-1,1"]);
    assert_eq!(code, 3);
    assert_eq!(r.data["holds"], false);
}

#[test]
fn mckay_graphs() {
    let (_, r) = json(&["wreath", "graph", "--gamma", r#"{"binary_dihedral": 8}"#]);
    assert_eq!(r.data["edges"].as_array().unwrap().len(), 4);
    let out = run(&["wreath", "graph", "--gamma", r#""torus""#, "--window", "-1..1", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("vm1 -- v0") && text.contains("v0 -- v1"));
}
