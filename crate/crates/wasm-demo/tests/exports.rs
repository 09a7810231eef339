use hecke_wasm::{deformation_coefficients, shapovalov_ranks, wreath_check};
use serde_json::Value;

fn parse(doc: String) -> Value {
    serde_json::from_str(&doc).unwrap()
}

#[test]
fn coefficients_for_gl2() {
    let v = parse(deformation_coefficients("gl", 2, 1));
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"][1]["table"][0][1], "a12");
    let bad = parse(deformation_coefficients("so", 2, 1));
    assert_eq!(bad["ok"], false);
    assert!(bad["error"].as_str().unwrap().contains("family"));
}

#[test]
fn ranks_sum_to_lc_dimension() {
    // k = -2 in d = 2 gives a four-dimensional quotient
    let v = parse(shapovalov_ranks(2, "-2", 6));
    let total: u64 = v["result"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);
    assert_eq!(parse(shapovalov_ranks(2, "one", 3))["ok"], false);
    assert_eq!(parse(shapovalov_ranks(9, "1", 3))["ok"], false);
}

#[test]
fn wreath_report_and_graph() {
    let ok = r#"{"gamma":{"cyclic":2},"n":1,"blocks":[{"vertex":0,"diagram":[1]}],"k":"1","c":{"classes":{"1":"-1/4"}}}"#;
    let v = parse(wreath_check(ok));
    assert_eq!(v["result"]["report"]["admissible"], true);
    assert!(v["result"]["mckay_dot"].as_str().unwrap().contains("v0 -- v1"));
    assert_eq!(parse(wreath_check("{"))["ok"], false);
}
