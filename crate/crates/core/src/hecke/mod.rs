//! Hecke algebras `H_κ = TV ⋊ B / ([x,y] = κ(x,y))` over a base `B` that is
//! either `U(g)` or a finite group algebra, with PBW normal forms.

pub mod bridge;
pub mod flatness;
pub mod group;
pub mod rewrite;
pub mod spec;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::fmt_terms;
use crate::exact::{Matrix, Monomial, Scalar};
use crate::genfun::{assemble_kappa, v_representation, BetaParameter};
use crate::lie::env::{left_mul as env_left_mul, word_of, EnvElement};
use crate::lie::{Family, LieAlgebra};

pub use bridge::sra_cherednik_bridge;
pub use flatness::{flatness_check, pbw_dimension_census, FlatnessOptions, FlatnessReport};
pub use group::FiniteGroup;
pub use rewrite::Strategy;

/// Generator of the free algebra: a `V` basis vector, a Lie basis element,
/// or a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    V(usize),
    B(usize),
    G(usize),
}

/// The degree-zero part of the algebra.
#[derive(Debug, Clone)]
pub enum Base {
    /// `U(g)` acting on `V` through `rep`.
    Enveloping { lie: Arc<LieAlgebra>, rep: Vec<Matrix> },
    Group(Arc<FiniteGroup>),
}

/// Element of the base: PBW exponents (enveloping) or `[g]` (group) to coefficient.
pub type BaseElem = BTreeMap<Vec<u32>, Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VRole {
    /// Coordinate on `h`, i.e. a vector of `h*`.
    HStar,
    /// Vector of `h`.
    H,
    Plain,
}

/// Skew pairing `V × V → B`, stored on pairs `a < b` only.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaForm {
    labels: Vec<String>,
    roles: Vec<VRole>,
    entries: BTreeMap<(usize, usize), BaseElem>,
}

impl KappaForm {
    pub fn zero(labels: Vec<String>, roles: Vec<VRole>) -> Self {
        assert_eq!(labels.len(), roles.len());
        KappaForm { labels, roles, entries: BTreeMap::new() }
    }

    /// Accepts entries for any ordered pairs; `(b, a)` is read as `-κ(a, b)`.
    /// Conflicting or diagonal entries are rejected with `NotSkew`.
    pub fn from_entries(labels: Vec<String>, roles: Vec<VRole>, entries: Vec<(usize, usize, BaseElem)>) -> Result<Self> {
        let mut k = Self::zero(labels, roles);
        let mut seen: HashMap<(usize, usize), BaseElem> = HashMap::new();
        for (a, b, v) in entries {
            let v = clean(v);
            if a >= k.dim() || b >= k.dim() {
                return Err(Error::Invalid(format!("kappa index ({a}, {b}) out of range")));
            }
            if a == b {
                if !v.is_empty() {
                    return Err(Error::NotSkew(format!("κ({0}, {0}) must vanish", k.labels[a])));
                }
                continue;
            }
            let (key, val) = if a < b { ((a, b), v) } else { ((b, a), neg(&v)) };
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(Error::NotSkew(format!("κ({}, {}) given inconsistently", k.labels[key.0], k.labels[key.1])));
                }
            }
            seen.insert(key, val.clone());
            if !val.is_empty() {
                k.entries.insert(key, val);
            }
        }
        Ok(k)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn roles(&self) -> &[VRole] {
        &self.roles
    }

    pub fn get(&self, a: usize, b: usize) -> BaseElem {
        if a < b {
            self.entries.get(&(a, b)).cloned().unwrap_or_default()
        } else if a > b {
            self.entries.get(&(b, a)).map(neg).unwrap_or_default()
        } else {
            BaseElem::new()
        }
    }

    pub fn set(&mut self, a: usize, b: usize, v: BaseElem) {
        let v = clean(v);
        let (key, val) = if a < b { ((a, b), v) } else { ((b, a), neg(&v)) };
        if val.is_empty() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BaseElem)> {
        self.entries.iter()
    }
}

fn clean(v: BaseElem) -> BaseElem {
    v.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn neg(v: &BaseElem) -> BaseElem {
    v.iter().map(|(k, c)| (k.clone(), -c)).collect()
}

pub fn base_add(acc: &mut BaseElem, k: Vec<u32>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// Normal-form monomial: ordered `V` exponents, then a base monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NMono {
    pub v: Vec<u32>,
    pub b: Vec<u32>,
}

impl NMono {
    pub fn v_degree(&self) -> u32 {
        self.v.iter().sum()
    }
}

/// Parameters of an algebra built from `(t, c)` data on a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionData {
    pub t: Scalar,
    /// `c_g` for every group element (zero off the support).
    pub c: Vec<Scalar>,
}

type LeftCache = Mutex<HashMap<(Letter, NMono), Vec<(NMono, Scalar)>>>;

pub struct HeckeAlgebra {
    base: Base,
    form: KappaForm,
    kappa: Vec<Vec<BaseElem>>,
    reflection_data: Option<ReflectionData>,
    cache: LeftCache,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeAlgebra(V={:?}, base={})", self.form.labels, self.base_name())
    }
}

impl PartialEq for HeckeAlgebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}

impl HeckeAlgebra {
    /// Validates the data and builds the presentation.
    ///
    /// Checks that the base acts on `V` by a representation and that `κ` is
    /// equivariant.
    pub fn build(base: Base, form: KappaForm) -> Result<Arc<Self>> {
        Self::build_with(base, form, None)
    }

    fn build_with(base: Base, form: KappaForm, reflection_data: Option<ReflectionData>) -> Result<Arc<Self>> {
        let n = form.dim();
        match &base {
            Base::Enveloping { lie, rep } => {
                if rep.len() != lie.dim() || rep.iter().any(|m| m.rows() != n || m.cols() != n) {
                    return Err(Error::Invalid("need one dim V × dim V matrix per Lie basis element".into()));
                }
                for a in 0..lie.dim() {
                    for b in 0..lie.dim() {
                        let mut rhs = Matrix::zeros(n, n);
                        for (k, c) in lie.bracket_basis(a, b) {
                            rhs = &rhs + &rep[*k].scale(c);
                        }
                        if rep[a].commutator(&rep[b]) != rhs {
                            return Err(Error::Invalid("V is not a representation of g".into()));
                        }
                    }
                }
                for (_, v) in form.entries() {
                    if v.keys().any(|k| k.len() != lie.dim()) {
                        return Err(Error::Invalid("kappa values must be PBW monomials of g".into()));
                    }
                }
            }
            Base::Group(g) => {
                if g.dim_v() != n {
                    return Err(Error::Invalid("group acts on a space of the wrong dimension".into()));
                }
                for (_, v) in form.entries() {
                    if v.keys().any(|k| k.len() != 1 || k[0] as usize >= g.order()) {
                        return Err(Error::Invalid("kappa values must be group elements".into()));
                    }
                }
            }
        }
        let kappa = (0..n).map(|a| (0..n).map(|b| form.get(a, b)).collect()).collect();
        let alg = HeckeAlgebra { base, form, kappa, reflection_data, cache: Mutex::new(HashMap::new()) };
        alg.check_equivariance()?;
        Ok(Arc::new(alg))
    }

    fn check_equivariance(&self) -> Result<()> {
        let n = self.dim_v();
        match &self.base {
            Base::Enveloping { lie, rep } => {
                for a in 0..lie.dim() {
                    let x = EnvElement::generator(lie, a);
                    for i in 0..n {
                        for j in i + 1..n {
                            let lhs = x.commutator(&self.env_of(&self.kappa[i][j])).expect("same algebra");
                            let mut rhs = BaseElem::new();
                            for l in 0..n {
                                for (src, c) in [(&self.kappa[l][j], &rep[a][(l, i)]), (&self.kappa[i][l], &rep[a][(l, j)])] {
                                    if !c.is_zero() {
                                        for (k, v) in src {
                                            base_add(&mut rhs, k.clone(), v * c);
                                        }
                                    }
                                }
                            }
                            if base_of_env(&lhs) != rhs {
                                return Err(Error::NotEquivariant(format!(
                                    "{} on κ({}, {})",
                                    lie.label(a),
                                    self.form.labels[i],
                                    self.form.labels[j]
                                )));
                            }
                        }
                    }
                }
            }
            Base::Group(g) => {
                for h in 1..g.order() {
                    let m = g.mat_v(h);
                    let hinv = g.inv(h);
                    for i in 0..n {
                        for j in i + 1..n {
                            let lhs: BaseElem = self.kappa[i][j]
                                .iter()
                                .map(|(k, c)| (vec![g.mul(g.mul(h, k[0] as usize), hinv) as u32], c.clone()))
                                .collect();
                            let mut rhs = BaseElem::new();
                            for l in 0..n {
                                if m[(l, i)].is_zero() {
                                    continue;
                                }
                                for p in 0..n {
                                    if m[(p, j)].is_zero() {
                                        continue;
                                    }
                                    let w = &m[(l, i)] * &m[(p, j)];
                                    for (k, c) in &self.kappa[l][p] {
                                        base_add(&mut rhs, k.clone(), c * &w);
                                    }
                                }
                            }
                            if clean(lhs) != rhs {
                                return Err(Error::NotEquivariant(format!(
                                    "group element g{h} on κ({}, {})",
                                    self.form.labels[i], self.form.labels[j]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `H_β(gl_n)` or `H_β(sp_2n)`.
    pub fn infinitesimal(g: &Arc<LieAlgebra>, beta: &BetaParameter) -> Result<Arc<Self>> {
        let k = assemble_kappa(g, beta)?;
        let rep = v_representation(g)?;
        let (labels, roles) = infinitesimal_v_labels(g)?;
        let entries = k.entries.iter().map(|(a, b, v)| (*a, *b, base_of_env(v))).collect();
        let form = KappaForm::from_entries(labels, roles, entries)?;
        Self::build(Base::Enveloping { lie: g.clone(), rep }, form)
    }

    /// Algebra with zero deformation: `SV ⋊ B`.
    pub fn undeformed(base: Base, labels: Vec<String>, roles: Vec<VRole>) -> Result<Arc<Self>> {
        Self::build(base, KappaForm::zero(labels, roles))
    }

    /// Cherednik-type algebra of a finite group acting on `h`:
    /// `[y, x] = t (y, x) + sum_g c_g (y, (1-g)x) g` for `x ∈ h*`, `y ∈ h`,
    /// and `[x, x'] = [y, y'] = 0`.
    pub fn cherednik(group: Arc<FiniteGroup>, t: Scalar, c: Vec<Scalar>) -> Result<Arc<Self>> {
        if !group.has_h() {
            return Err(Error::Invalid("Cherednik constructor needs a group acting on h".into()));
        }
        if c.len() != group.order() {
            return Err(Error::Invalid("need one c value per group element".into()));
        }
        let d = group.dim_v() / 2;
        let (labels, roles) = cherednik_labels(d);
        let mut form = KappaForm::zero(labels, roles);
        for i in 0..d {
            for j in 0..d {
                // κ(x_i, y_j) = -[y_j, x_i]
                let mut v = BaseElem::new();
                if i == j {
                    base_add(&mut v, vec![0], -t.clone());
                }
                for (gi, cg) in c.iter().enumerate() {
                    if cg.is_zero() {
                        continue;
                    }
                    let ginv = group.mat_h(group.inv(gi)).expect("on h");
                    let delta = if i == j { Scalar::one() } else { Scalar::zero() };
                    // (y_j, (1-g) x_i) = δ_ij - ρ(g^{-1})_ij
                    let pairing = delta - &ginv[(i, j)];
                    base_add(&mut v, vec![gi as u32], -(cg * pairing));
                }
                form.set(i, d + j, v);
            }
        }
        Self::build_with(Base::Group(group), form, Some(ReflectionData { t, c }))
    }

    /// Symplectic reflection type: `κ(x, y) = ω(x, y) t + sum_g c_g ω((1-g)x, (1-g)y) g`.
    pub fn symplectic_reflection(group: Arc<FiniteGroup>, omega: &Matrix, t: Scalar, c: Vec<Scalar>) -> Result<Arc<Self>> {
        let n = group.dim_v();
        let theta: Vec<(usize, Matrix)> =
            c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(g, v)| (g, omega.scale(v))).collect();
        let form = theta_form(&group, &omega.scale(&t), &theta)?;
        let _ = n;
        Self::build_with(Base::Group(group), form, Some(ReflectionData { t, c }))
    }

    /// `κ(x, y) = τ(x, y) + sum_g θ_g((1-g)x, (1-g)y) g` with skew forms `τ`, `θ_g`.
    pub fn from_theta(group: Arc<FiniteGroup>, tau: &Matrix, theta: &[(usize, Matrix)]) -> Result<Arc<Self>> {
        let form = theta_form(&group, tau, theta)?;
        Self::build(Base::Group(group), form)
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn form(&self) -> &KappaForm {
        &self.form
    }

    pub fn dim_v(&self) -> usize {
        self.form.dim()
    }

    pub fn v_labels(&self) -> &[String] {
        &self.form.labels
    }

    pub fn kappa(&self, a: usize, b: usize) -> &BaseElem {
        &self.kappa[a][b]
    }

    pub fn reflection_data(&self) -> Option<&ReflectionData> {
        self.reflection_data.as_ref()
    }

    pub fn x_indices(&self) -> Vec<usize> {
        (0..self.dim_v()).filter(|&i| self.form.roles[i] == VRole::HStar).collect()
    }

    pub fn y_indices(&self) -> Vec<usize> {
        (0..self.dim_v()).filter(|&i| self.form.roles[i] == VRole::H).collect()
    }

    /// True when `V = h* ⊕ h` with `κ` vanishing on `h* × h*` and `h × h`.
    pub fn is_cherednik_type(&self) -> bool {
        let xs = self.x_indices();
        let ys = self.y_indices();
        if xs.is_empty() || xs.len() != ys.len() || xs.len() + ys.len() != self.dim_v() {
            return false;
        }
        let vanish = |set: &[usize]| set.iter().all(|&a| set.iter().all(|&b| self.kappa[a][b].is_empty()));
        vanish(&xs) && vanish(&ys)
    }

    pub fn base_name(&self) -> String {
        match &self.base {
            Base::Enveloping { lie, .. } => format!("U({:?}, n={})", lie.family(), lie.rank_parameter()),
            Base::Group(g) => format!("finite group of order {}", g.order()),
        }
    }

    pub fn base_one(&self) -> Vec<u32> {
        match &self.base {
            Base::Enveloping { lie, .. } => vec![0; lie.dim()],
            Base::Group(_) => vec![0],
        }
    }

    pub fn one_mono(&self) -> NMono {
        NMono { v: vec![0; self.dim_v()], b: self.base_one() }
    }

    /// Letters spelling a base monomial.
    pub fn base_word(&self, key: &[u32]) -> Vec<Letter> {
        match &self.base {
            Base::Enveloping { .. } => word_of(&Monomial(key.to_vec())).into_iter().map(Letter::B).collect(),
            Base::Group(_) => {
                if key[0] == 0 {
                    Vec::new()
                } else {
                    vec![Letter::G(key[0] as usize)]
                }
            }
        }
    }

    pub fn mono_word(&self, m: &NMono) -> Vec<Letter> {
        let mut w: Vec<Letter> = word_of(&Monomial(m.v.clone())).into_iter().map(Letter::V).collect();
        w.extend(self.base_word(&m.b));
        w
    }

    /// Matrix of a base letter acting on `V`.
    pub fn letter_matrix(&self, l: Letter) -> Option<&Matrix> {
        match (l, &self.base) {
            (Letter::B(a), Base::Enveloping { rep, .. }) => rep.get(a),
            (Letter::G(g), Base::Group(grp)) => Some(grp.mat_v(g)),
            _ => None,
        }
    }

    pub(crate) fn env_of(&self, b: &BaseElem) -> EnvElement {
        match &self.base {
            Base::Enveloping { lie, .. } => {
                let mut e = EnvElement::zero(lie);
                for (k, c) in b {
                    e.add_term(Monomial(k.clone()), c.clone());
                }
                e
            }
            Base::Group(_) => panic!("group base has no enveloping algebra"),
        }
    }

    /// Left multiplication of a normal-form monomial by one letter.
    pub fn left_mul(&self, l: Letter, m: &NMono) -> Vec<(NMono, Scalar)> {
        match l {
            Letter::V(i) => {
                let first = m.v.iter().position(|&e| e > 0);
                if first.is_none_or(|j| i <= j) {
                    let mut r = m.clone();
                    r.v[i] += 1;
                    return vec![(r, Scalar::one())];
                }
            }
            Letter::B(_) if m.v_degree() == 0 => {
                let Letter::B(a) = l else { unreachable!() };
                let Base::Enveloping { lie, .. } = &self.base else { panic!("B letter on group base") };
                return env_left_mul(lie, a, &m.b)
                    .into_iter()
                    .map(|(b, c)| (NMono { v: m.v.clone(), b }, c))
                    .collect();
            }
            Letter::G(g) => {
                let Base::Group(grp) = &self.base else { panic!("G letter on enveloping base") };
                if g == 0 {
                    return vec![(m.clone(), Scalar::one())];
                }
                if m.v_degree() == 0 {
                    return vec![(NMono { v: m.v.clone(), b: vec![grp.mul(g, m.b[0] as usize) as u32] }, Scalar::one())];
                }
            }
            _ => {}
        }
        let key = (l, m.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let j = m.v.iter().position(|&e| e > 0).expect("nonempty V part");
        let mut rest = m.clone();
        rest.v[j] -= 1;
        let mut acc: BTreeMap<NMono, Scalar> = BTreeMap::new();
        match l {
            Letter::V(i) => {
                // v_i v_j M' = v_j (v_i M') + κ(v_i, v_j) M'
                let inner = self.left_mul(Letter::V(i), &rest);
                accumulate(&mut acc, self.left_mul_terms(Letter::V(j), inner));
                accumulate(&mut acc, self.left_mul_base(&self.kappa[i][j], vec![(rest, Scalar::one())]));
            }
            Letter::B(a) => {
                // X_a v_j M' = v_j (X_a M') + sum_i ρ(X_a)_ij v_i M'
                let inner = self.left_mul(Letter::B(a), &rest);
                accumulate(&mut acc, self.left_mul_terms(Letter::V(j), inner));
                let rho = self.letter_matrix(l).expect("B letter");
                for i in 0..self.dim_v() {
                    if !rho[(i, j)].is_zero() {
                        let t = self.left_mul(Letter::V(i), &rest);
                        accumulate(&mut acc, t.into_iter().map(|(mm, c)| (mm, c * &rho[(i, j)])).collect());
                    }
                }
            }
            Letter::G(g) => {
                // g v_j M' = sum_i ρ(g)_ij v_i (g M')
                let inner = self.left_mul(Letter::G(g), &rest);
                let rho = self.letter_matrix(l).expect("G letter");
                for i in 0..self.dim_v() {
                    if !rho[(i, j)].is_zero() {
                        let t = self.left_mul_terms(Letter::V(i), inner.clone());
                        accumulate(&mut acc, t.into_iter().map(|(mm, c)| (mm, c * &rho[(i, j)])).collect());
                    }
                }
            }
        }
        let out: Vec<(NMono, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        out
    }

    fn left_mul_terms(&self, l: Letter, terms: Vec<(NMono, Scalar)>) -> Vec<(NMono, Scalar)> {
        let mut acc: BTreeMap<NMono, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            for (r, rc) in self.left_mul(l, &m) {
                *acc.entry(r).or_insert_with(Scalar::zero) += rc * &c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn left_mul_base(&self, b: &BaseElem, terms: Vec<(NMono, Scalar)>) -> Vec<(NMono, Scalar)> {
        let mut acc: BTreeMap<NMono, Scalar> = BTreeMap::new();
        for (key, c) in b {
            let mut cur: Vec<(NMono, Scalar)> = terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
            for &l in self.base_word(key).iter().rev() {
                cur = self.left_mul_terms(l, cur);
            }
            accumulate(&mut acc, cur);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Parses a word such as `y1 x1^2 E12 g3`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()) {
            let (name, pow) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<usize>().map_err(|_| Error::Parse(format!("bad power in {tok:?}")))?),
                None => (tok, 1),
            };
            let letter = if let Some(i) = self.v_labels().iter().position(|l| l == name) {
                Letter::V(i)
            } else {
                match &self.base {
                    Base::Enveloping { lie, .. } => {
                        Letter::B(lie.index_of(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?)
                    }
                    Base::Group(g) => {
                        let idx = name
                            .strip_prefix('g')
                            .and_then(|s| s.parse::<usize>().ok())
                            .filter(|&i| i < g.order())
                            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                        Letter::G(idx)
                    }
                }
            };
            out.extend(std::iter::repeat_n(letter, pow));
        }
        Ok(out)
    }

    pub fn letter_label(&self, l: Letter) -> String {
        match (l, &self.base) {
            (Letter::V(i), _) => self.form.labels[i].clone(),
            (Letter::B(a), Base::Enveloping { lie, .. }) => lie.label(a).to_string(),
            (Letter::G(g), _) => format!("g{g}"),
            (Letter::B(a), _) => format!("B{a}"),
        }
    }

    pub fn mono_label(&self, m: &NMono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.v.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.form.labels[i].clone()),
                _ => parts.push(format!("{}^{}", self.form.labels[i], e)),
            }
        }
        match &self.base {
            Base::Enveloping { lie, .. } => {
                for (i, &e) in m.b.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => parts.push(lie.label(i).to_string()),
                        _ => parts.push(format!("{}^{}", lie.label(i), e)),
                    }
                }
            }
            Base::Group(_) => {
                if m.b[0] != 0 {
                    parts.push(format!("g{}", m.b[0]));
                }
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn base_elem_label(&self, b: &BaseElem) -> String {
        let zero_v = vec![0; self.dim_v()];
        let parts: Vec<(String, Scalar)> =
            b.iter().rev().map(|(k, c)| (self.mono_label(&NMono { v: zero_v.clone(), b: k.clone() }), c.clone())).collect();
        BaseDisplay(parts).to_string()
    }
}

fn accumulate(acc: &mut BTreeMap<NMono, Scalar>, terms: Vec<(NMono, Scalar)>) {
    for (m, c) in terms {
        *acc.entry(m).or_insert_with(Scalar::zero) += c;
    }
}

pub(crate) fn base_of_env(e: &EnvElement) -> BaseElem {
    e.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect()
}

fn theta_form(group: &FiniteGroup, tau: &Matrix, theta: &[(usize, Matrix)]) -> Result<KappaForm> {
    let n = group.dim_v();
    let skew = |m: &Matrix| m.rows() == n && m.cols() == n && m.transpose() == -m;
    if !skew(tau) || theta.iter().any(|(_, m)| !skew(m)) {
        return Err(Error::NotSkew("forms must be skew-symmetric matrices on V".into()));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("v{}", i + 1)).collect();
    let mut form = KappaForm::zero(labels, vec![VRole::Plain; n]);
    for a in 0..n {
        for b in a + 1..n {
            let mut v = BaseElem::new();
            base_add(&mut v, vec![0], tau[(a, b)].clone());
            for (g, th) in theta {
                let one_minus = &Matrix::identity(n) - group.mat_v(*g);
                let ua = one_minus.col(a);
                let ub = one_minus.col(b);
                let val: Scalar = (0..n)
                    .flat_map(|p| (0..n).map(move |q| (p, q)))
                    .map(|(p, q)| &ua[p] * &th[(p, q)] * &ub[q])
                    .sum();
                base_add(&mut v, vec![*g as u32], val);
            }
            form.set(a, b, v);
        }
    }
    Ok(form)
}

pub fn cherednik_labels(d: usize) -> (Vec<String>, Vec<VRole>) {
    let mut labels: Vec<String> = (0..d).map(|i| format!("x{}", i + 1)).collect();
    labels.extend((0..d).map(|i| format!("y{}", i + 1)));
    let mut roles = vec![VRole::HStar; d];
    roles.extend(vec![VRole::H; d]);
    (labels, roles)
}

fn infinitesimal_v_labels(g: &LieAlgebra) -> Result<(Vec<String>, Vec<VRole>)> {
    match g.family() {
        Family::Gl => Ok(cherednik_labels(g.rank_parameter())),
        Family::Sp => {
            let n = g.rank_parameter();
            let labels = (0..n).flat_map(|i| [format!("x{}", i + 1), format!("y{}", i + 1)]).collect();
            Ok((labels, vec![VRole::Plain; 2 * n]))
        }
        f => Err(Error::UnsupportedFamily(format!("{f:?}"))),
    }
}

/// Element of `H_κ` in PBW normal form.
#[derive(Clone)]
pub struct HeckeElement {
    alg: Arc<HeckeAlgebra>,
    terms: BTreeMap<NMono, Scalar>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl HeckeElement {
    pub fn zero(alg: &Arc<HeckeAlgebra>) -> Self {
        HeckeElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<HeckeAlgebra>) -> Self {
        Self::from_terms(alg, vec![(alg.one_mono(), Scalar::one())])
    }

    pub fn from_terms(alg: &Arc<HeckeAlgebra>, terms: Vec<(NMono, Scalar)>) -> Self {
        let mut acc = BTreeMap::new();
        accumulate(&mut acc, terms);
        HeckeElement { alg: alg.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn v(alg: &Arc<HeckeAlgebra>, i: usize) -> Self {
        let mut m = alg.one_mono();
        m.v[i] = 1;
        Self::from_terms(alg, vec![(m, Scalar::one())])
    }

    pub fn base(alg: &Arc<HeckeAlgebra>, b: &BaseElem) -> Self {
        let zero_v = vec![0; alg.dim_v()];
        Self::from_terms(alg, b.iter().map(|(k, c)| (NMono { v: zero_v.clone(), b: k.clone() }, c.clone())).collect())
    }

    /// Normal form of a word in the generators.
    pub fn from_word(alg: &Arc<HeckeAlgebra>, word: &[Letter]) -> Self {
        let mut cur = vec![(alg.one_mono(), Scalar::one())];
        for &l in word.iter().rev() {
            cur = alg.left_mul_terms(l, cur);
        }
        Self::from_terms(alg, cur)
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &NMono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn v_degree(&self) -> Option<u32> {
        self.terms.keys().map(NMono::v_degree).max()
    }

    fn same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut acc = self.terms.clone();
        accumulate(&mut acc, other.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect());
        Ok(HeckeElement { alg: self.alg.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        HeckeElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut acc: BTreeMap<NMono, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut cur: Vec<(NMono, Scalar)> = other.terms.iter().map(|(mm, cc)| (mm.clone(), cc * c)).collect();
            for &l in self.alg.mono_word(m).iter().rev() {
                cur = self.alg.left_mul_terms(l, cur);
            }
            accumulate(&mut acc, cur);
        }
        Ok(HeckeElement { alg: self.alg.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Terms of top `V`-degree.
    pub fn symbol(&self) -> Self {
        let Some(d) = self.v_degree() else { return self.clone() };
        HeckeElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.v_degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

/// Printable base element.
pub struct BaseDisplay(Vec<(String, Scalar)>);

impl fmt::Display for BaseDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.iter().map(|(s, c)| (s.clone(), c)))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().rev().map(|(m, c)| (self.alg.mono_label(m), c)))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement({self})")
    }
}
