//! Browser bindings for three operations of the `hecke` engine.
//!
//! Every export takes plain strings and returns a JSON document
//! `{"ok": true, "result": ...}` or `{"ok": false, "error": "..."}`, so the
//! same functions run natively in tests and in the page under `www/`.

use hecke::category_o::dunkl_module;
use hecke::dunkl::DunklParams;
use hecke::exact::parse_scalar;
use hecke::genfun::{ell_coefficients, r_coefficients};
use hecke::wreath::{mckay_graph, montarani_check, WreathSpec};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn envelope(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": true, "result": v }),
        Err(e) => json!({ "ok": false, "error": e }),
    }
    .to_string()
}

/// Keeps a browser tab responsive.
const MAX_N: usize = 4;
const MAX_ORDER: usize = 6;
const MAX_TOP: usize = 8;

fn coefficients(family: &str, n: usize, order: usize) -> Result<Value, String> {
    if n == 0 || n > MAX_N || order > MAX_ORDER {
        return Err(format!("need 1 ≤ n ≤ {MAX_N} and order ≤ {MAX_ORDER}"));
    }
    let coeffs = match family {
        "gl" => r_coefficients(n, order),
        "sp" => ell_coefficients(n, order),
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok(coeffs
        .iter()
        .map(|c| json!({ "m": c.m, "table": c.table.iter().map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>() }))
        .collect())
}

/// Coefficients `r_m` (`family = "gl"`) or `ℓ_m` (`"sp"`) for `m ≤ order`.
#[wasm_bindgen]
pub fn deformation_coefficients(family: &str, n: usize, order: usize) -> String {
    envelope(coefficients(family, n, order))
}

fn ranks(d: usize, k: &str, top: usize) -> Result<Value, String> {
    if d == 0 || d > 3 || top > MAX_TOP {
        return Err(format!("need 1 ≤ d ≤ 3 and top ≤ {MAX_TOP}"));
    }
    let k = parse_scalar(k).map_err(|e| e.to_string())?;
    let params = DunklParams::orthogonal(parse_scalar("1").expect("literal"), d, k);
    let m = dunkl_module(&params, top).map_err(|e| e.to_string())?;
    Ok(m.shapovalov_all()
        .into_iter()
        .map(|r| json!({ "degree": r.degree, "dim": r.dim, "rank": r.rank, "kernel": r.kernel }))
        .collect())
}

/// Shapovalov ranks of the polynomial module for `O(d)` at coupling `k`.
#[wasm_bindgen]
pub fn shapovalov_ranks(d: usize, k: &str, top: usize) -> String {
    envelope(ranks(d, k, top))
}

fn wreath(spec: &str) -> Result<Value, String> {
    let s = WreathSpec::from_json(spec).map_err(|e| e.to_string())?;
    let report = montarani_check(&s).map_err(|e| e.to_string())?;
    let graph = if s.gamma.is_finite() { Some(mckay_graph(&s.gamma, 0..=0).map_err(|e| e.to_string())?.to_dot()) } else { None };
    Ok(json!({ "report": report, "mckay_dot": graph }))
}

/// Finite-dimensionality check for a wreath-product spec, with the McKay graph of a finite `Γ`.
#[wasm_bindgen]
pub fn wreath_check(spec: &str) -> String {
    envelope(wreath(spec))
}
