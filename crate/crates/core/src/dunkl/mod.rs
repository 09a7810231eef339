//! Dunkl operators `D_y = t ∂_y + (reflection term)` on `ℂ[h]`, for explicit
//! finite reflection data and for the whole reflection class of `O(d)`.

pub mod moments;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Matrix, Monomial, Scalar, SparsePoly, VarTable};
use crate::hecke::FiniteGroup;

pub use moments::{sphere_moment, MomentTable, MOMENT_CACHE_ENV};

/// A reflection `s` on `h` with a covector `β` cutting out its fixed
/// hyperplane, and its coefficient `c_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionDatum {
    s: Matrix,
    beta: Vec<Scalar>,
    c: Scalar,
}

impl ReflectionDatum {
    /// Requires `rank(1 - s) = 1` and `β` proportional to the rows of `1 - s`,
    /// so that `β(u)` divides `f(u) - f(su)`.
    pub fn new(s: Matrix, beta: Vec<Scalar>, c: Scalar) -> Result<Self> {
        let d = s.rows();
        if !s.is_square() || beta.len() != d || s.determinant().is_zero() {
            return Err(Error::Invalid("reflection needs an invertible d × d matrix and a length-d covector".into()));
        }
        let one_minus = &Matrix::identity(d) - &s;
        if one_minus.rank() != 1 {
            return Err(Error::Invalid("rank(1 - s) must be 1".into()));
        }
        if beta.iter().all(Zero::is_zero) || Matrix::vstack(&[&one_minus, &Matrix::from_rows(vec![beta.clone()])]).rank() != 1 {
            return Err(Error::Invalid("β must span the image of 1 - s on covectors".into()));
        }
        Ok(ReflectionDatum { s, beta, c })
    }

    /// One datum per reflection of a group acting on `h`, with `c` indexed by element.
    pub fn from_group(group: &FiniteGroup, c: &[Scalar]) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for g in group.reflections() {
            let s = group.mat_h(g).ok_or_else(|| Error::Invalid("group must act on h".into()))?.clone();
            let one_minus = &Matrix::identity(s.rows()) - &s;
            let beta = (0..s.rows()).map(|r| one_minus.row(r).to_vec()).find(|r| r.iter().any(|x| !x.is_zero())).expect("rank 1");
            out.push(Self::new(s, beta, c[g].clone())?);
        }
        Ok(out)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.s
    }

    pub fn beta(&self) -> &[Scalar] {
        &self.beta
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }
}

#[derive(Debug, Clone)]
pub enum DunklKind {
    Finite(Vec<ReflectionDatum>),
    /// All orthogonal reflections of `ℝ^d`, averaged against the probability
    /// measure on the sphere, with coefficient `k`.
    Orthogonal { k: Scalar, moments: Arc<MomentTable> },
}

type TermCache = Arc<Mutex<HashMap<(Monomial, usize), SparsePoly>>>;

#[derive(Debug, Clone)]
pub struct DunklParams {
    t: Scalar,
    dim: usize,
    kind: DunklKind,
    vars: Arc<VarTable>,
    cache: TermCache,
}

impl DunklParams {
    pub fn finite(t: Scalar, data: Vec<ReflectionDatum>) -> Result<Self> {
        let dim = data.first().map(|r| r.s.rows()).ok_or_else(|| Error::Invalid("need at least one reflection".into()))?;
        if data.iter().any(|r| r.s.rows() != dim) {
            return Err(Error::Invalid("reflections act on different dimensions".into()));
        }
        Ok(Self::make(t, dim, DunklKind::Finite(data)))
    }

    pub fn orthogonal(t: Scalar, d: usize, k: Scalar) -> Self {
        Self::orthogonal_with(t, k, Arc::new(MomentTable::new(d)))
    }

    pub fn orthogonal_with(t: Scalar, k: Scalar, moments: Arc<MomentTable>) -> Self {
        let d = moments.dim();
        Self::make(t, d, DunklKind::Orthogonal { k, moments })
    }

    fn make(t: Scalar, dim: usize, kind: DunklKind) -> Self {
        DunklParams { t, dim, kind, vars: VarTable::coordinates("u", dim), cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &DunklKind {
        &self.kind
    }

    /// The ring `ℂ[h] = ℂ[u_1, …, u_d]`.
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// Reflection part of `D_{e_i}` applied to a monomial.
    fn reflection_term(&self, m: &Monomial, i: usize) -> Result<SparsePoly> {
        let key = (m.clone(), i);
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let f = SparsePoly::monomial(&self.vars, m.clone(), Scalar::one());
        let out = match &self.kind {
            DunklKind::Finite(data) => {
                let mut acc = SparsePoly::zero(&self.vars);
                for r in data {
                    if r.c.is_zero() || r.beta[i].is_zero() {
                        continue;
                    }
                    let images: Vec<SparsePoly> = (0..self.dim).map(|j| SparsePoly::linear(&self.vars, r.s.row(j))).collect();
                    let diff = &f - &f.substitute(&images);
                    let q = diff.divide_exact(&SparsePoly::linear(&self.vars, &r.beta))?;
                    acc.add_assign_scaled(&q, &(&r.c * &r.beta[i]));
                }
                acc
            }
            DunklKind::Orthogonal { k, moments } => {
                if k.is_zero() {
                    SparsePoly::zero(&self.vars)
                } else {
                    orthogonal_average(&self.vars, m, i, moments)?.scale(k)
                }
            }
        };
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `D_{e_i} f`.
    pub fn apply_basis(&self, i: usize, f: &SparsePoly) -> Result<SparsePoly> {
        let f = self.in_ring(f)?;
        let mut out = f.partial(i).scale(&self.t);
        for (m, c) in f.terms() {
            out.add_assign_scaled(&self.reflection_term(m, i)?, c);
        }
        Ok(out)
    }

    fn in_ring(&self, f: &SparsePoly) -> Result<SparsePoly> {
        if f.nvars() != self.dim {
            return Err(Error::Invalid(format!("polynomial has {} variables, h has dimension {}", f.nvars(), self.dim)));
        }
        Ok(SparsePoly::from_terms_in(&self.vars, f.terms()))
    }
}

/// `(v, e_i) (u^α - (s_v u)^α) / (v, u)` with `s_v u = u - 2 (v, u) v`, as a
/// polynomial in `u_1..u_d, v_1..v_d`.
pub fn orthogonal_integrand(d: usize, m: &Monomial, i: usize) -> Result<SparsePoly> {
    let mut names: Vec<String> = (0..d).map(|j| format!("u{}", j + 1)).collect();
    names.extend((0..d).map(|j| format!("v{}", j + 1)));
    let w = VarTable::from_names(&names);
    let u = |j: usize| SparsePoly::var(&w, j);
    let v = |j: usize| SparsePoly::var(&w, d + j);
    let mut vu = SparsePoly::zero(&w);
    for j in 0..d {
        vu = &vu + &(&v(j) * &u(j));
    }
    let two_vu = vu.scale(&Scalar::from_integer(2.into()));
    let mut images: Vec<SparsePoly> = (0..d).map(|j| &u(j) - &(&two_vu * &v(j))).collect();
    images.extend((0..d).map(v));
    let f = SparsePoly::monomial(&w, Monomial(m.0.iter().copied().chain(std::iter::repeat_n(0, d)).collect()), Scalar::one());
    let diff = &f - &f.substitute(&images);
    Ok(&diff.divide_exact(&vu)? * &v(i))
}

/// Sphere average of `orthogonal_integrand` over `v`.
fn orthogonal_average(vars: &Arc<VarTable>, m: &Monomial, i: usize, moments: &MomentTable) -> Result<SparsePoly> {
    let d = vars.len();
    let q = orthogonal_integrand(d, m, i)?;
    let mut out = SparsePoly::zero(vars);
    for (mono, c) in q.terms() {
        let mu = moments.get(&mono.0[d..]);
        if !mu.is_zero() {
            out.add_term(Monomial(mono.0[..d].to_vec()), c * &mu);
        }
    }
    Ok(out)
}

/// `C f = sum_s c_s (f ∘ s)` (finite data) or `k · Avg_v f ∘ s_v` (orthogonal):
/// the reflection part of the Euler element acting on `ℂ[h]`.
pub fn reflection_operator(params: &DunklParams, f: &SparsePoly) -> Result<SparsePoly> {
    let f = params.in_ring(f)?;
    let vars = params.vars();
    match params.kind() {
        DunklKind::Finite(data) => {
            let mut acc = SparsePoly::zero(vars);
            for r in data {
                let images: Vec<SparsePoly> = (0..params.dim).map(|j| SparsePoly::linear(vars, r.s.row(j))).collect();
                acc.add_assign_scaled(&f.substitute(&images), &r.c);
            }
            Ok(acc)
        }
        DunklKind::Orthogonal { k, moments } => {
            let d = params.dim;
            let mut names: Vec<String> = (0..d).map(|j| format!("u{}", j + 1)).collect();
            names.extend((0..d).map(|j| format!("v{}", j + 1)));
            let w = VarTable::from_names(&names);
            let u = |j: usize| SparsePoly::var(&w, j);
            let v = |j: usize| SparsePoly::var(&w, d + j);
            let mut vu = SparsePoly::zero(&w);
            for j in 0..d {
                vu = &vu + &(&v(j) * &u(j));
            }
            let two_vu = vu.scale(&Scalar::from_integer(2.into()));
            let images: Vec<SparsePoly> = (0..d).map(|j| &u(j) - &(&two_vu * &v(j))).collect();
            let g = f.substitute(&images);
            let mut out = SparsePoly::zero(vars);
            for (mono, c) in g.terms() {
                let mu = moments.get(&mono.0[d..]);
                if !mu.is_zero() {
                    out.add_term(Monomial(mono.0[..d].to_vec()), c * &mu * k);
                }
            }
            Ok(out)
        }
    }
}

/// `D_y f` for `y = sum_i y_i e_i`.
pub fn dunkl_apply(params: &DunklParams, y: &[Scalar], f: &SparsePoly) -> Result<SparsePoly> {
    if y.len() != params.dim {
        return Err(Error::Invalid("direction has the wrong dimension".into()));
    }
    let mut out = SparsePoly::zero(params.vars());
    for (i, yi) in y.iter().enumerate() {
        if !yi.is_zero() {
            out.add_assign_scaled(&params.apply_basis(i, f)?, yi);
        }
    }
    Ok(out)
}

/// Monomials of total degree `n` in `d` variables, descending.
pub fn degree_basis(d: usize, n: u32) -> Vec<Monomial> {
    fn rec(d: usize, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == d {
            cur.push(n);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=n).rev() {
            cur.push(e);
            rec(d, n - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(d, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub zero: bool,
    pub checked: usize,
    /// `(i, j, monomial, value)` of the first nonvanishing case.
    pub witness: Option<(usize, usize, String, String)>,
}

/// `[D_{e_i}, D_{e_j}]` on every monomial of degree `≤ max_degree`, all `i < j`.
pub fn commutator_test(params: &DunklParams, max_degree: u32) -> Result<CommutatorReport> {
    let d = params.dim;
    let mut jobs = Vec::new();
    for n in 0..=max_degree {
        for m in degree_basis(d, n) {
            for i in 0..d {
                for j in i + 1..d {
                    jobs.push((i, j, m.clone()));
                }
            }
        }
    }
    let results: Vec<Option<(usize, usize, String, String)>> = jobs
        .par_iter()
        .map(|(i, j, m)| {
            let f = SparsePoly::monomial(params.vars(), m.clone(), Scalar::one());
            let a = params.apply_basis(*i, &params.apply_basis(*j, &f)?)?;
            let b = params.apply_basis(*j, &params.apply_basis(*i, &f)?)?;
            let c = &a - &b;
            Ok((!c.is_zero()).then(|| (*i, *j, f.to_string(), c.to_string())))
        })
        .collect::<Result<_>>()?;
    let witness = results.into_iter().flatten().next();
    Ok(CommutatorReport { zero: witness.is_none(), checked: jobs.len(), witness })
}

/// Operator matrices on `ℂ[h]_n` in the `degree_basis` order.
#[derive(Debug, Clone, PartialEq)]
pub struct DunklMatrices {
    pub degree: u32,
    pub source: Vec<Monomial>,
    /// `D_{e_i}: ℂ[h]_n → ℂ[h]_{n-1}` (zero columns when `n = 0`).
    pub d: Vec<Matrix>,
    /// Multiplication by `u_i: ℂ[h]_n → ℂ[h]_{n+1}`.
    pub x: Vec<Matrix>,
}

pub fn coordinates_in(basis: &[Monomial], p: &SparsePoly) -> Result<Vec<Scalar>> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = vec![Scalar::zero(); basis.len()];
    for (m, c) in p.terms() {
        let k = index.get(m).ok_or_else(|| Error::Invalid("polynomial leaves the expected homogeneous component".into()))?;
        out[*k] = c.clone();
    }
    Ok(out)
}

fn columns_to_matrix(rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

pub fn dunkl_rep_matrices(params: &DunklParams, n: u32) -> Result<DunklMatrices> {
    let d = params.dim;
    let source = degree_basis(d, n);
    let below = if n == 0 { Vec::new() } else { degree_basis(d, n - 1) };
    let above = degree_basis(d, n + 1);
    let mut dm = Vec::new();
    let mut xm = Vec::new();
    for i in 0..d {
        let mut dcols = Vec::new();
        let mut xcols = Vec::new();
        for m in &source {
            let f = SparsePoly::monomial(params.vars(), m.clone(), Scalar::one());
            dcols.push(coordinates_in(&below, &params.apply_basis(i, &f)?)?);
            let mut up = m.clone();
            up.0[i] += 1;
            xcols.push(coordinates_in(&above, &SparsePoly::monomial(params.vars(), up, Scalar::one()))?);
        }
        dm.push(columns_to_matrix(below.len(), dcols));
        xm.push(columns_to_matrix(above.len(), xcols));
    }
    Ok(DunklMatrices { degree: n, source, d: dm, x: xm })
}

/// `{s: [[..]], beta: [..], c: "p/q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReflectionJson {
    pub s: Vec<Vec<String>>,
    pub beta: Vec<String>,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrthogonalJson {
    pub d: usize,
    pub k: String,
}

/// `{t, finite: [...]}` or `{t, orthogonal: {d, k}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DunklJson {
    #[serde(default = "one_str")]
    pub t: String,
    #[serde(default)]
    pub finite: Option<Vec<ReflectionJson>>,
    #[serde(default)]
    pub orthogonal: Option<OrthogonalJson>,
}

fn one_str() -> String {
    "1".into()
}

impl DunklParams {
    pub fn from_json(text: &str) -> Result<Self> {
        let j: DunklJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let t = parse_scalar(&j.t)?;
        match (j.finite, j.orthogonal) {
            (Some(refl), None) => {
                let data = refl
                    .iter()
                    .map(|r| {
                        let s = crate::hecke::spec::parse_matrix(&r.s)?;
                        let beta = r.beta.iter().map(|x| parse_scalar(x)).collect::<Result<_>>()?;
                        ReflectionDatum::new(s, beta, parse_scalar(&r.c)?)
                    })
                    .collect::<Result<_>>()?;
                Self::finite(t, data)
            }
            (None, Some(o)) => {
                if o.d == 0 {
                    return Err(Error::Invalid("orthogonal variant needs d >= 1".into()));
                }
                Ok(Self::orthogonal_with(t, parse_scalar(&o.k)?, Arc::new(MomentTable::from_env(o.d)?)))
            }
            _ => Err(Error::Invalid("give exactly one of finite or orthogonal".into())),
        }
    }
}
