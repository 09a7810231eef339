use std::fmt::Write as _;
use std::sync::Arc;

use hecke::category_o::*;
use hecke::dunkl::{self as dk, commutator_test, degree_basis, dunkl_rep_matrices, DunklKind, DunklParams, MOMENT_CACHE_ENV};
use hecke::exact::{fmt_scalar, parse_scalar, Matrix, Monomial, Scalar, SparsePoly};
use hecke::genfun::{assemble_kappa, ell_coefficients, r_coefficients, tau_closure_input, BetaParameter};
use hecke::hecke::spec::parse_matrix;
use hecke::hecke::{flatness_check, pbw_dimension_census, FlatnessOptions, HeckeAlgebra, HeckeElement};
use hecke::lie::closure::{lie_closure_check, phi_iso_check};
use hecke::lie::LieAlgebra;
use hecke::wreath::{mckay_graph, montarani_check, GammaJson, WreathSpec};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{CliError, ModuleArgs, Outcome};

type Res = Result<Outcome, CliError>;

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Schema(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{path}: {e}")))
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn read_inline_or_file(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('"') {
        Ok(arg.to_string())
    } else {
        read_input(arg)
    }
}

fn scalar(s: &str) -> Result<Scalar, CliError> {
    parse_scalar(s.trim()).map_err(CliError::from)
}

fn scalars(items: &[String]) -> Result<Vec<Scalar>, CliError> {
    items.iter().map(|s| scalar(s)).collect()
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn mat_json(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_scalar).collect()).collect()
}

fn mono_label(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("u{}", i + 1) } else { format!("u{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn combination(labels: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
        .map(|(c, l)| format!("({}) {l}", fmt_scalar(c)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn algebra(path: &str) -> Result<Arc<HeckeAlgebra>, CliError> {
    Ok(HeckeAlgebra::from_json(&read_input(path)?)?)
}

fn dunkl_params(path: &str) -> Result<DunklParams, CliError> {
    Ok(DunklParams::from_json(&read_input(path)?)?)
}

/// Writes the sphere moments computed so far back to the cache directory, if one is configured.
fn persist_moments(p: &DunklParams) -> Result<(), CliError> {
    if let (Some(dir), DunklKind::Orthogonal { moments, .. }) = (std::env::var_os(MOMENT_CACHE_ENV), p.kind()) {
        moments.save(std::path::Path::new(&dir))?;
    }
    Ok(())
}

fn v_labels_for(family: &str, n: usize) -> Vec<String> {
    match family {
        "gl" => (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect(),
        _ => (1..=n).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect(),
    }
}

pub fn genfun(family: &str, n: usize, order: usize, beta: Option<&[String]>) -> Res {
    if n == 0 {
        return Err(CliError::Schema("n must be at least 1".into()));
    }
    let (coeffs, g, name) = match family {
        "gl" => (r_coefficients(n, order), LieAlgebra::gl(n), "r"),
        _ => (ell_coefficients(n, order), LieAlgebra::sp(n), "ℓ"),
    };
    let mut text = String::new();
    let mut tables = Vec::new();
    for c in &coeffs {
        let _ = writeln!(text, "{name}_{}:", c.m);
        let rows: Vec<Vec<String>> = c.table.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        for (i, row) in rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let _ = writeln!(text, "  ({}, {}) = {p}", i + 1, j + 1);
            }
        }
        tables.push(json!({ "m": c.m, "table": rows }));
    }
    let mut data = json!({ "family": family, "n": n, "order": order, "coefficients": tables });
    if let Some(b) = beta {
        let beta = BetaParameter(scalars(b)?);
        let k = assemble_kappa(&g, &beta)?;
        let labels = v_labels_for(family, n);
        let _ = writeln!(text, "kappa:");
        let entries: Vec<Value> = k
            .entries
            .iter()
            .map(|(a, b, v)| {
                let _ = writeln!(text, "  [{}, {}] = {v}", labels[*a], labels[*b]);
                json!({ "a": labels[*a], "b": labels[*b], "value": v.to_string() })
            })
            .collect();
        data["beta"] = json!(b);
        data["kappa"] = json!(entries);
    }
    Ok(Outcome { data, text, ok: true })
}

pub fn build(spec: &str) -> Res {
    let h = algebra(spec)?;
    let mut text = format!("base: {}\nV: {}\n", h.base_name(), h.v_labels().join(", "));
    let entries: Vec<Value> = h
        .form()
        .entries()
        .map(|((a, b), v)| {
            let (la, lb, val) = (&h.v_labels()[*a], &h.v_labels()[*b], h.base_elem_label(v));
            let _ = writeln!(text, "[{la}, {lb}] = {val}");
            json!({ "a": la, "b": lb, "value": val })
        })
        .collect();
    let data = json!({
        "base": h.base_name(),
        "v_labels": h.v_labels(),
        "cherednik_type": h.is_cherednik_type(),
        "relations": entries,
    });
    Ok(Outcome { data, text, ok: true })
}

pub fn nf(spec: &str, word: &str) -> Res {
    let h = algebra(spec)?;
    let w = h.parse_word(word)?;
    let e = HeckeElement::from_word(&h, &w);
    let terms: Vec<Value> = e.terms().map(|(m, c)| json!({ "monomial": h.mono_label(m), "coeff": fmt_scalar(c) })).collect();
    Ok(Outcome { data: json!({ "word": word, "normal_form": e.to_string(), "terms": terms }), text: format!("{e}\n"), ok: true })
}

pub fn flatness(spec: &str) -> Res {
    let h = algebra(spec)?;
    let r = flatness_check(&h, FlatnessOptions::default());
    let mut text = format!(
        "flat: {}\nJacobi triples checked: {}\ncritical pairs checked: {}\n",
        r.flat, r.triples_checked, r.critical_pairs_checked
    );
    for w in &r.witnesses {
        let _ = writeln!(text, "witness ({}): {}", w.triple.join(", "), w.value);
    }
    for o in &r.unresolved_overlaps {
        let _ = writeln!(text, "unresolved overlap: {o}");
    }
    Ok(Outcome { data: to_value(&r), text, ok: r.flat })
}

pub fn census(spec: &str, degree: usize) -> Res {
    let h = algebra(spec)?;
    let h0 = HeckeAlgebra::undeformed(h.base().clone(), h.v_labels().to_vec(), h.form().roles().to_vec())?;
    let a = pbw_dimension_census(&h, degree)?;
    let b = pbw_dimension_census(&h0, degree)?;
    let ok = a == b;
    let text = format!("census:     {a:?}\nundeformed: {b:?}\nmatches: {ok}\n");
    Ok(Outcome { data: json!({ "degree": degree, "census": a, "undeformed": b, "matches": ok }), text, ok })
}

pub fn lie_closure(n: usize, drop_trace: bool) -> Res {
    if n == 0 {
        return Err(CliError::Schema("n must be at least 1".into()));
    }
    let (g, rep, kappa) = tau_closure_input(n, drop_trace);
    let r = lie_closure_check(&g, &rep, &kappa)?;
    let phi = (!drop_trace).then(|| phi_iso_check(n));
    let mut text = format!("Lie algebra: {}\ndimension: {}\n", r.is_lie_algebra, r.dim);
    if let Some(k) = r.killing_rank {
        let _ = writeln!(text, "Killing rank: {k}\nsemisimple: {}", r.semisimple);
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "Jacobi fails on ({})", w.join(", "));
    }
    if let Some(p) = phi {
        let _ = writeln!(text, "isomorphic to sl_{} via block map: {p}", n + 1);
    }
    let mut data = to_value(&r);
    data["phi_isomorphism"] = json!(phi);
    Ok(Outcome { data, text, ok: r.is_lie_algebra && phi != Some(false) })
}

pub fn dunkl_apply(path: &str, poly: &str, y: Option<&[String]>) -> Res {
    let p = dunkl_params(path)?;
    let f = SparsePoly::parse(p.vars(), poly)?;
    let y = match y {
        Some(v) => scalars(v)?,
        None => (0..p.dim()).map(|i| Scalar::from_integer(i64::from(i == 0).into())).collect(),
    };
    if y.len() != p.dim() {
        return Err(CliError::Schema(format!("y needs {} coordinates", p.dim())));
    }
    let out = dk::dunkl_apply(&p, &y, &f)?;
    persist_moments(&p)?;
    let y_str: Vec<String> = y.iter().map(fmt_scalar).collect();
    Ok(Outcome { data: json!({ "y": y_str, "input": f.to_string(), "output": out.to_string() }), text: format!("{out}\n"), ok: true })
}

fn random_poly(p: &DunklParams, degree: u32, rng: &mut StdRng) -> SparsePoly {
    let mut f = SparsePoly::zero(p.vars());
    for n in 0..=degree {
        for m in degree_basis(p.dim(), n) {
            if rng.random_bool(0.5) {
                f.add_term(m, Scalar::from_integer(rng.random_range(-5i64..=5).into()));
            }
        }
    }
    f
}

pub fn dunkl_commute(path: &str, degree: u32, sample: Option<usize>, seed: u64) -> Res {
    let p = dunkl_params(path)?;
    let Some(count) = sample else {
        let r = commutator_test(&p, degree)?;
        persist_moments(&p)?;
        let mut text = format!("commute: {}\nchecked: {}\n", r.zero, r.checked);
        if let Some((i, j, m, v)) = &r.witness {
            let _ = writeln!(text, "[D{}, D{}]({m}) = {v}", i + 1, j + 1);
        }
        return Ok(Outcome { data: to_value(&r), text, ok: r.zero });
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut witness = None;
    let mut checked = 0;
    'outer: for _ in 0..count {
        let f = random_poly(&p, degree, &mut rng);
        for i in 0..p.dim() {
            for j in i + 1..p.dim() {
                let a = p.apply_basis(i, &p.apply_basis(j, &f)?)?;
                let b = p.apply_basis(j, &p.apply_basis(i, &f)?)?;
                checked += 1;
                let diff = &a - &b;
                if !diff.is_zero() {
                    witness = Some((i, j, f.to_string(), diff.to_string()));
                    break 'outer;
                }
            }
        }
    }
    persist_moments(&p)?;
    let zero = witness.is_none();
    let mut text = format!("commute: {zero}\nsampled polynomials: {count}\npairs checked: {checked}\n");
    if let Some((i, j, f, v)) = &witness {
        let _ = writeln!(text, "[D{}, D{}]({f}) = {v}", i + 1, j + 1);
    }
    Ok(Outcome { data: json!({ "zero": zero, "checked": checked, "samples": count, "witness": witness }), text, ok: zero })
}

pub fn dunkl_matrices(path: &str, degree: u32) -> Res {
    let p = dunkl_params(path)?;
    let m = dunkl_rep_matrices(&p, degree)?;
    persist_moments(&p)?;
    let source: Vec<String> = m.source.iter().map(mono_label).collect();
    let mut text = format!("degree {degree} basis: {}\n", source.join(", "));
    for (i, d) in m.d.iter().enumerate() {
        let _ = writeln!(text, "D{}:\n{d}", i + 1);
    }
    for (i, x) in m.x.iter().enumerate() {
        let _ = writeln!(text, "x{}:\n{x}", i + 1);
    }
    let data = json!({
        "degree": degree,
        "source": source,
        "d": m.d.iter().map(mat_json).collect::<Vec<_>>(),
        "x": m.x.iter().map(mat_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { data, text, ok: true })
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum YModJson {
    Group(Vec<Vec<Vec<String>>>),
    Lie(Vec<Vec<Vec<String>>>),
}

fn build_module(args: &ModuleArgs, top: usize) -> Result<GradedModule, CliError> {
    if let Some(d) = &args.dunkl {
        let p = dunkl_params(d)?;
        let m = dunkl_module(&p, top)?;
        persist_moments(&p)?;
        return Ok(m);
    }
    let h = algebra(args.spec.as_deref().expect("clap enforces spec or dunkl"))?;
    let ymod = match &args.ymod {
        None => BaseModule::trivial(&h),
        Some(path) => {
            let j: YModJson = serde_json::from_str(&read_input(path)?).map_err(|e| CliError::Schema(e.to_string()))?;
            let parse = |ms: &[Vec<Vec<String>>]| ms.iter().map(parse_matrix).collect::<hecke::Result<Vec<_>>>();
            match j {
                YModJson::Group(ms) => BaseModule::Group(parse(&ms)?),
                YModJson::Lie(ms) => BaseModule::Lie(parse(&ms)?),
            }
        }
    };
    Ok(verma_build(&h, &ymod, top)?)
}

pub fn verma(args: &ModuleArgs, top: usize) -> Res {
    if top == 0 {
        return Err(CliError::Schema("top must be at least 1".into()));
    }
    let m = build_module(args, top)?;
    let r = euler_check(&m, top - 1)?;
    let mut text = format!("t = {}\n", fmt_scalar(&m.t));
    for (n, dim) in m.dims.iter().enumerate().take(top) {
        let ev = r.eigenvalues.get(n).cloned().flatten().unwrap_or_else(|| "not scalar".into());
        let _ = writeln!(text, "degree {n}: dim {dim}, Euler eigenvalue {ev}");
    }
    let _ = writeln!(text, "Euler identities: {}", r.holds);
    let data = json!({ "t": fmt_scalar(&m.t), "dims": m.dims, "euler": r });
    Ok(Outcome { data, text, ok: r.holds })
}

pub fn singular(args: &ModuleArgs, degree: usize) -> Res {
    if degree == 0 {
        return Err(CliError::Schema("degree must be at least 1".into()));
    }
    let m = build_module(args, degree)?;
    let vs = m.singular_vectors(degree);
    let rendered: Vec<String> = vs.iter().map(|v| combination(&m.basis[degree], v)).collect();
    let mut text = format!("degree {degree}: {} singular vector(s) in dimension {}\n", vs.len(), m.dims[degree]);
    for r in &rendered {
        let _ = writeln!(text, "  {r}");
    }
    let data = json!({ "degree": degree, "dim": m.dims[degree], "basis": m.basis[degree], "vectors": rendered });
    Ok(Outcome { data, text, ok: true })
}

pub fn shapovalov(args: &ModuleArgs, top: usize, gram: bool) -> Res {
    let m = build_module(args, top)?;
    let mut rows = m.shapovalov_all();
    let mut text = String::from("degree  dim  rank  kernel\n");
    for r in &mut rows {
        let _ = writeln!(text, "{:>6} {:>4} {:>5} {:>7}", r.degree, r.dim, r.rank, r.kernel);
        if !gram {
            r.gram.clear();
        }
    }
    let symmetric = rows.iter().all(|r| r.symmetric);
    if !symmetric {
        let _ = writeln!(text, "warning: Gram matrices are not symmetric in this basis");
    }
    Ok(Outcome { data: to_value(&rows), text, ok: true })
}

pub fn lc(d: usize, m: usize) -> Res {
    if d == 0 {
        return Err(CliError::Schema("d must be at least 1".into()));
    }
    let r = lc_structure(d, m)?;
    let k = scalar(&r.k)?;
    let sl2 = sl2_triple_check(d, &k, 4)?;
    let mut text = format!("k = {}\nranks: {:?}\ndimension: {}\n", r.k, r.ranks, r.dimension);
    for (label, n, h) in &r.decomposition {
        let _ = writeln!(text, "  V_{label} ⊗ Harm({n}) (dim {h})");
    }
    let _ = writeln!(text, "matches harmonic decomposition: {}\nsl2 triple through degree 4: {}", r.matches, sl2.holds);
    let ok = r.matches && sl2.holds;
    let mut data = to_value(&r);
    data["sl2_triple"] = to_value(&sl2);
    Ok(Outcome { data, text, ok })
}

pub fn character(eigenvalues: Option<&[String]>, d: Option<usize>, chi: &str, c: &str, order: usize) -> Res {
    let lam = match (eigenvalues, d) {
        (Some(e), _) => scalars(e)?,
        (None, Some(d)) => vec![Scalar::from_integer(1.into()); d],
        (None, None) => return Err(CliError::Schema("give --eigenvalues or --d".into())),
    };
    let s = character_series(&lam, &scalar(chi)?, &scalar(c)?, order);
    let j = s.to_json();
    let terms: Vec<String> = j.coeffs.iter().enumerate().map(|(n, a)| format!("({a}) t^{n}")).collect();
    let text = format!("t^({}) * [{} + …]\n", j.offset, terms.join(" + "));
    Ok(Outcome { data: to_value(&j), text, ok: true })
}

pub fn criterion(n: usize, big_n: usize, beta: Option<&[String]>, distribution: Option<&str>) -> Res {
    let c = match (beta, distribution) {
        (Some(b), _) => beta_to_distribution(&scalars(b)?, n),
        (None, Some(path)) => serde_json::from_str(&read_input(path)?).map_err(|e| CliError::Schema(e.to_string()))?,
        (None, None) => return Err(CliError::Schema("give --beta or --distribution".into())),
    };
    let r = gl_criterion_report(&c, n, big_n)?;
    let text = format!("c_(S^{big_n} h*) - c_C = {}\nsingular vectors in degree {big_n}: {}\n", r.lhs, r.holds);
    let mut data = to_value(&r);
    data["distribution"] = to_value(&c);
    Ok(Outcome { data, text, ok: r.holds })
}

fn parse_window(w: &str) -> Result<std::ops::RangeInclusive<i64>, CliError> {
    let (a, b) = w.split_once("..").ok_or_else(|| CliError::Schema(format!("window {w:?} is not a..b")))?;
    let p = |s: &str| s.trim().parse::<i64>().map_err(|_| CliError::Schema(format!("bad window bound {s:?}")));
    let (a, b) = (p(a)?, p(b.trim_start_matches('='))?);
    if a > b {
        return Err(CliError::Schema("empty window".into()));
    }
    Ok(a..=b)
}

pub fn wreath_graph(gamma: &str, window: &str, dot: bool) -> Res {
    let gj: GammaJson = serde_json::from_str(&read_inline_or_file(gamma)?).map_err(|e| CliError::Schema(e.to_string()))?;
    let g = gj.build()?;
    let graph = mckay_graph(&g, parse_window(window)?)?;
    let dot_text = graph.to_dot();
    let text = if dot {
        dot_text.clone()
    } else {
        let mut t = format!("{}{}\n", graph.name, if graph.finite { "" } else { " (window)" });
        for v in &graph.vertices {
            let nbrs: Vec<String> = graph
                .edges
                .iter()
                .filter_map(|e| {
                    let other = if e.from == v.id { Some(e.to) } else if e.to == v.id { Some(e.from) } else { None };
                    other.map(|o| if e.mult == 1 { o.to_string() } else { format!("{o}×{}", e.mult) })
                })
                .collect();
            let _ = writeln!(t, "  {} [{}]: {}", v.id, v.label, nbrs.join(", "));
        }
        t
    };
    let mut data = to_value(&graph);
    if dot {
        data["dot"] = json!(dot_text);
    }
    Ok(Outcome { data, text, ok: true })
}

pub fn wreath_check(spec: &str) -> Res {
    let s = WreathSpec::from_json(&read_input(spec)?)?;
    let r = montarani_check(&s)?;
    let mut text = format!("admissible: {}\n", r.admissible);
    if !r.k_assumption {
        let _ = writeln!(text, "note: the criterion assumes k ≠ 0");
    }
    for (v, val) in &r.condition3 {
        let _ = writeln!(text, "condition (3) at vertex {v}: {val}");
    }
    for f in &r.failures {
        let _ = writeln!(text, "condition ({}) fails at {:?}: {}", f.condition, f.vertices, f.detail);
    }
    Ok(Outcome { data: to_value(&r), text, ok: r.admissible })
}
