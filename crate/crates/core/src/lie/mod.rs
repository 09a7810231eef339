//! Finite-dimensional Lie algebras given by structure constants, their
//! universal enveloping algebras, and the Lie-closure check.

pub mod closure;
pub mod env;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Matrix, Scalar, SparsePoly, VarRole, VarTable, Variable};

pub use closure::{killing_form, lie_closure_check, phi_iso_check, ClosureReport};
pub use env::EnvElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    Sp,
    So,
    Custom,
}

/// Sparse bracket table: `[X_i, X_j] = sum_k c_ij^k X_k`.
type Brackets = Vec<Vec<Vec<(usize, Scalar)>>>;

/// A Lie algebra with a fixed ordered basis.
///
/// Matrix families carry their defining representation and a coordinate
/// chart: coordinate function `α_k` on `g` is identified with the element
/// `sum_l chart[k][l] X_l` through the trace form.
pub struct LieAlgebra {
    family: Family,
    n: usize,
    labels: Vec<String>,
    brackets: Brackets,
    rep: Option<Vec<Matrix>>,
    coord_vars: Arc<VarTable>,
    chart: Matrix,
    basis_vars: Arc<VarTable>,
    pub(crate) straighten_cache: Mutex<HashMap<(usize, Vec<u32>), Vec<(Vec<u32>, Scalar)>>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.n == other.n && self.labels == other.labels && self.brackets == other.brackets
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, n={}, basis={:?})", self.family, self.n, self.labels)
    }
}

impl LieAlgebra {
    /// Builds an algebra from linearly independent matrices closed under commutators.
    pub fn from_matrices(
        family: Family,
        n: usize,
        labels: Vec<String>,
        mats: Vec<Matrix>,
        coord_names: Vec<Variable>,
    ) -> Result<Arc<Self>> {
        let dim = mats.len();
        let size = mats.first().map_or(0, Matrix::rows);
        let flat = |m: &Matrix| -> Vec<Scalar> { (0..size).flat_map(|i| m.row(i).to_vec()).collect() };
        let basis = Matrix::from_rows(mats.iter().map(flat).collect()).transpose();
        if basis.rank() != dim {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        let mut brackets: Brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = mats[i].commutator(&mats[j]);
                let coeffs = basis
                    .solve(&flat(&c))
                    .ok_or_else(|| Error::Invalid(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
                brackets[i][j] = sparse(&coeffs);
            }
        }
        let gram = Matrix::from_rows(
            (0..dim).map(|k| (0..dim).map(|l| (&mats[k] * &mats[l]).trace()).collect()).collect(),
        );
        let chart = gram
            .inverse()
            .ok_or_else(|| Error::Invalid("trace form is degenerate on this basis".into()))?;
        Self::assemble(family, n, labels, brackets, Some(mats), VarTable::new(coord_names), chart)
    }

    /// Builds an abstract algebra from structure constants (no defining representation).
    /// Coordinates are the dual basis.
    pub fn from_structure_constants(labels: Vec<String>, brackets: Vec<Vec<Vec<(usize, Scalar)>>>) -> Result<Arc<Self>> {
        let dim = labels.len();
        let coord = VarTable::new(
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| Variable { name: format!("a_{l}"), role: VarRole::Coordinate(i) })
                .collect(),
        );
        Self::assemble(Family::Custom, dim, labels, brackets, None, coord, Matrix::identity(dim))
    }

    fn assemble(
        family: Family,
        n: usize,
        labels: Vec<String>,
        brackets: Brackets,
        rep: Option<Vec<Matrix>>,
        coord_vars: Arc<VarTable>,
        chart: Matrix,
    ) -> Result<Arc<Self>> {
        let basis_vars = VarTable::new(
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| Variable { name: l.clone(), role: VarRole::Coordinate(i) })
                .collect(),
        );
        let alg = LieAlgebra {
            family,
            n,
            labels,
            brackets,
            rep,
            coord_vars,
            chart,
            basis_vars,
            straighten_cache: Mutex::new(HashMap::new()),
        };
        alg.check_axioms()?;
        Ok(Arc::new(alg))
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                if a != &negate(b) {
                    return Err(Error::Invalid(format!("bracket not antisymmetric at ({}, {})", self.labels[i], self.labels[j])));
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let e = |n: usize| unit(d, n);
                    let s1 = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let s2 = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let s3 = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if !add3(&s1, &s2, &s3).iter().all(Zero::is_zero) {
                        return Err(Error::Invalid(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `gl_n` with basis `E_ij` in lexicographic order of `(i, j)`.
    pub fn gl(n: usize) -> Arc<Self> {
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut coords = Vec::new();
        for i in 0..n {
            for j in 0..n {
                labels.push(format!("E{}", pair_name(i, j, n)));
                mats.push(Matrix::unit(n, i, j));
                coords.push(Variable { name: format!("a{}", pair_name(i, j, n)), role: VarRole::MatrixEntry { i, j } });
            }
        }
        Self::from_matrices(Family::Gl, n, labels, mats, coords).expect("gl_n is a Lie algebra")
    }

    /// `sl_m` (matrix size `m`) with basis: lower `E_ij`, then `H_i = E_ii - E_{i+1,i+1}`,
    /// then upper `E_ij`. For `m = 2` this is `f < h < e`.
    pub fn sl(m: usize) -> Arc<Self> {
        assert!(m >= 2, "sl_m needs m >= 2");
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut coords = Vec::new();
        let sl2 = m == 2;
        for i in 0..m {
            for j in 0..i {
                labels.push(if sl2 { "f".into() } else { format!("E{}", pair_name(i, j, m)) });
                mats.push(Matrix::unit(m, i, j));
            }
        }
        for i in 0..m - 1 {
            labels.push(if sl2 { "h".into() } else { format!("H{}", i + 1) });
            mats.push(&Matrix::unit(m, i, i) - &Matrix::unit(m, i + 1, i + 1));
        }
        for i in 0..m {
            for j in i + 1..m {
                labels.push(if sl2 { "e".into() } else { format!("E{}", pair_name(i, j, m)) });
                mats.push(Matrix::unit(m, i, j));
            }
        }
        for (k, l) in labels.iter().enumerate() {
            coords.push(Variable { name: format!("a_{l}"), role: VarRole::Coordinate(k) });
        }
        Self::from_matrices(Family::Sl, m, labels, mats, coords).expect("sl_m is a Lie algebra")
    }

    /// `sp_2n` preserving `ω` with matrix `J = diag([[0,1],[-1,0]], …)` in the
    /// Darboux order `x_1, y_1, x_2, y_2, …`.
    ///
    /// Basis `J S` with `S` running over symmetric units in lexicographic order,
    /// each scaled to have positive leading entry. For `n = 1` this is `f < h < e`.
    pub fn sp(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let d = 2 * n;
        let j = symplectic_j(n);
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for a in 0..d {
            for b in a..d {
                let mut s = Matrix::unit(d, a, b);
                if a != b {
                    s = &s + &Matrix::unit(d, b, a);
                }
                let mut x = &j * &s;
                let lead = (0..d * d).map(|k| x[(k / d, k % d)].clone()).find(|v| !v.is_zero()).unwrap();
                if lead < Scalar::zero() {
                    x = -&x;
                }
                mats.push(x);
                labels.push(format!("S{}", pair_name(a, b, d)));
            }
        }
        if n == 1 {
            labels = vec!["f".into(), "h".into(), "e".into()];
        }
        let coords = labels
            .iter()
            .enumerate()
            .map(|(k, l)| Variable { name: format!("a_{l}"), role: VarRole::Coordinate(k) })
            .collect();
        Self::from_matrices(Family::Sp, n, labels, mats, coords).expect("sp_2n is a Lie algebra")
    }

    /// `so_d` with basis `E_ij - E_ji`, `i < j`.
    pub fn so(d: usize) -> Arc<Self> {
        assert!(d >= 2);
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut coords = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                labels.push(format!("L{}", pair_name(i, j, d)));
                mats.push(&Matrix::unit(d, i, j) - &Matrix::unit(d, j, i));
                coords.push(Variable { name: format!("a{}", pair_name(i, j, d)), role: VarRole::MatrixEntry { i, j } });
            }
        }
        Self::from_matrices(Family::So, d, labels, mats, coords).expect("so_d is a Lie algebra")
    }

    pub fn from_spec(spec: &LieSpecJson) -> Result<Arc<Self>> {
        match spec.family {
            Family::Gl => Ok(Self::gl(spec.n.max(1))),
            Family::Sl => {
                if spec.n < 2 {
                    return Err(Error::Invalid("sl needs n >= 2 (matrix size)".into()));
                }
                Ok(Self::sl(spec.n))
            }
            Family::Sp => Ok(Self::sp(spec.n.max(1))),
            Family::So => {
                if spec.n < 2 {
                    return Err(Error::Invalid("so needs n >= 2".into()));
                }
                Ok(Self::so(spec.n))
            }
            Family::Custom => {
                let c = spec
                    .custom_constants
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("custom family needs custom_constants".into()))?;
                let d = c.labels.len();
                let mut br: Brackets = vec![vec![Vec::new(); d]; d];
                for entry in &c.brackets {
                    if entry.i >= d || entry.j >= d {
                        return Err(Error::Invalid("bracket index out of range".into()));
                    }
                    let mut v = vec![Scalar::zero(); d];
                    for (k, s) in &entry.terms {
                        if *k >= d {
                            return Err(Error::Invalid("bracket index out of range".into()));
                        }
                        v[*k] += parse_scalar(s)?;
                    }
                    br[entry.i][entry.j] = sparse(&v);
                    br[entry.j][entry.i] = sparse(&v.iter().map(|x| -x).collect::<Vec<_>>());
                }
                Self::from_structure_constants(c.labels.clone(), br)
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank_parameter(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rep(&self) -> Option<&[Matrix]> {
        self.rep.as_deref()
    }

    pub fn coord_vars(&self) -> &Arc<VarTable> {
        &self.coord_vars
    }

    pub fn basis_vars(&self) -> &Arc<VarTable> {
        &self.basis_vars
    }

    /// Row `k` gives the element of `g` identified with coordinate `α_k`.
    pub fn chart(&self) -> &Matrix {
        &self.chart
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vec<(usize, Scalar)> {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad X_i` in the basis.
    pub fn ad(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in &self.brackets[i][j] {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Generic element `A = sum_k α_k X_k` of the defining representation,
    /// as a matrix of linear polynomials in the coordinates.
    pub fn generic_matrix(&self) -> Result<Vec<Vec<SparsePoly>>> {
        let mats = self.rep.as_ref().ok_or_else(|| Error::UnsupportedFamily("no defining representation".into()))?;
        let size = mats[0].rows();
        let mut a = vec![vec![SparsePoly::zero(&self.coord_vars); size]; size];
        for (k, m) in mats.iter().enumerate() {
            let ak = SparsePoly::var(&self.coord_vars, k);
            for (i, row) in a.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    if !m[(i, j)].is_zero() {
                        entry.add_assign_scaled(&ak, &m[(i, j)]);
                    }
                }
            }
        }
        Ok(a)
    }

    /// Rewrites a polynomial in coordinates as a commutative polynomial in basis symbols.
    pub fn coords_to_basis_poly(&self, p: &SparsePoly) -> SparsePoly {
        let images: Vec<SparsePoly> = (0..self.dim())
            .map(|k| SparsePoly::linear(&self.basis_vars, self.chart.row(k)))
            .collect();
        if images.is_empty() {
            return SparsePoly::constant(&self.basis_vars, p.constant_term());
        }
        p.substitute(&images)
    }

    /// Coordinates of a basis-symbol-linear element, inverse of the chart.
    pub fn element_of_linear(&self, p: &SparsePoly) -> Vec<Scalar> {
        let b = self.coords_to_basis_poly(p);
        (0..self.dim())
            .map(|l| b.coeff(&crate::exact::Monomial::var(self.dim(), l)))
            .collect()
    }

    /// Action of `X_a` on a polynomial function of `g` by the coadjoint
    /// derivation: `(X_a · f)(A) = d/dt f(e^{-t ad X_a} A)` at `t = 0`.
    ///
    /// Computed through the basis-symbol form, where `X_a` acts by the
    /// derivation extending `ad X_a`.
    pub fn ad_on_basis_poly(&self, a: usize, p: &SparsePoly) -> SparsePoly {
        let d = self.dim();
        let mut out = SparsePoly::zero(&self.basis_vars);
        for l in 0..d {
            let dp = p.partial(l);
            if dp.is_zero() {
                continue;
            }
            let mut img = vec![Scalar::zero(); d];
            for (k, c) in &self.brackets[a][l] {
                img[*k] = c.clone();
            }
            let lin = SparsePoly::linear(&self.basis_vars, &img);
            out = &out + &(&dp * &lin);
        }
        out
    }
}

/// JSON description of a Lie algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieSpecJson {
    pub family: Family,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub custom_constants: Option<CustomConstants>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomConstants {
    pub labels: Vec<String>,
    /// `[X_i, X_j] = sum terms`; only one of `(i,j)`, `(j,i)` is needed.
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

pub fn symplectic_j(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        j[(2 * a, 2 * a + 1)] = Scalar::one();
        j[(2 * a + 1, 2 * a)] = -Scalar::one();
    }
    j
}

fn pair_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{}_{}", i + 1, j + 1)
    }
}

pub(crate) fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn negate(v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    v.iter().map(|(i, c)| (*i, -c)).collect()
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

fn add3(a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).zip(c).map(|((x, y), z)| x + y + z).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn sl2_brackets() {
        let g = LieAlgebra::sl(2);
        assert_eq!(g.labels(), ["f", "h", "e"]);
        let (f, h, e) = (0, 1, 2);
        assert_eq!(g.bracket_basis(e, f), &vec![(h, qi(1))]);
        assert_eq!(g.bracket_basis(h, e), &vec![(e, qi(2))]);
        assert_eq!(g.bracket_basis(h, f), &vec![(f, qi(-2))]);
    }

    #[test]
    fn sp2_is_sl2() {
        let g = LieAlgebra::sp(1);
        let s = LieAlgebra::sl(2);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.bracket_basis(i, j), s.bracket_basis(i, j));
            }
        }
        assert_eq!(g.rep().unwrap()[1], Matrix::from_i64(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn dims() {
        assert_eq!(LieAlgebra::gl(3).dim(), 9);
        assert_eq!(LieAlgebra::sl(4).dim(), 15);
        assert_eq!(LieAlgebra::sp(2).dim(), 10);
        assert_eq!(LieAlgebra::so(4).dim(), 6);
    }

    #[test]
    fn gl_chart_transposes() {
        let g = LieAlgebra::gl(2);
        // a_12 is identified with E_21 under the trace form.
        let a12 = SparsePoly::var(g.coord_vars(), 1);
        assert_eq!(g.element_of_linear(&a12), vec![qi(0), qi(0), qi(1), qi(0)]);
    }

    #[test]
    fn custom_jacobi_rejected() {
        let spec: LieSpecJson = serde_json::from_str(
            r#"{"family":"custom","custom_constants":{"labels":["a","b","c"],
               "brackets":[{"i":0,"j":1,"terms":[[2,"1"]]},{"i":1,"j":2,"terms":[[1,"1"]]}]}}"#,
        )
        .unwrap();
        assert!(matches!(LieAlgebra::from_spec(&spec), Err(Error::Invalid(_))));
    }

    #[test]
    fn custom_heisenberg() {
        let spec: LieSpecJson = serde_json::from_str(
            r#"{"family":"custom","custom_constants":{"labels":["p","q","z"],
               "brackets":[{"i":0,"j":1,"terms":[[2,"1"]]}]}}"#,
        )
        .unwrap();
        let g = LieAlgebra::from_spec(&spec).unwrap();
        assert_eq!(g.bracket_basis(1, 0), &vec![(2, qi(-1))]);
    }
}
