//! McKay graphs of `Γ ⊂ SL_2`, Young-diagram bookkeeping and the criterion
//! for `G`-irreducible finite-dimensional representations of wreath-product
//! algebras `H_κ(S_n ⋉ Γ^n)` on which `V` acts by zero.

pub mod tables;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::category_o::gl::Laurent;
use crate::category_o::DistributionData;
use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Cyclotomic, Scalar};
pub use tables::{binary_dihedral, cyclic, CharacterTable, TableJson};

/// Subgroup `Γ ⊂ SL_2` with its tautological representation `L = ℂ²`.
///
/// Vertex ids: finite `Γ` uses the row index of its character table;
/// `GL_1` uses `j ∈ ℤ` for `λ ↦ λ^j`; `SL_2` uses `j ≥ 0` for `S^j L`;
/// `Õ_2` uses 0 for the trivial, 1 for the determinant and `j + 1` for the
/// two-dimensional `W_j = Ind(λ^j)`, `j ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gamma {
    Finite(CharacterTable),
    Torus,
    O2Tilde,
    SL2,
}

impl Gamma {
    pub fn name(&self) -> String {
        match self {
            Gamma::Finite(t) => t.name.clone(),
            Gamma::Torus => "GL1".into(),
            Gamma::O2Tilde => "O2~".into(),
            Gamma::SL2 => "SL2".into(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Gamma::Finite(_))
    }

    pub fn has_vertex(&self, i: i64) -> bool {
        match self {
            Gamma::Finite(t) => i >= 0 && (i as usize) < t.chars.len(),
            Gamma::Torus => true,
            Gamma::O2Tilde | Gamma::SL2 => i >= 0,
        }
    }

    fn check_vertex(&self, i: i64) -> Result<()> {
        if self.has_vertex(i) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{} has no irreducible representation with id {i}", self.name())))
        }
    }

    pub fn dim(&self, i: i64) -> Result<usize> {
        self.check_vertex(i)?;
        Ok(match self {
            Gamma::Finite(t) => t.dim(i as usize).to_integer().try_into().expect("small degree"),
            Gamma::Torus => 1,
            Gamma::O2Tilde => {
                if i < 2 {
                    1
                } else {
                    2
                }
            }
            Gamma::SL2 => i as usize + 1,
        })
    }

    pub fn label(&self, i: i64) -> String {
        match self {
            Gamma::Finite(t) => t.irreps.get(i as usize).cloned().unwrap_or_default(),
            Gamma::Torus => format!("l^{i}"),
            Gamma::O2Tilde => match i {
                0 => "triv".into(),
                1 => "det".into(),
                _ => format!("W{}", i - 1),
            },
            Gamma::SL2 => format!("S^{i}L"),
        }
    }

    /// Multiplicity of `Y_i` in `L ⊗ Y_j`.
    pub fn multiplicity(&self, i: i64, j: i64) -> Result<usize> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(match self {
            Gamma::Finite(t) => {
                let lj: Vec<Cyclotomic> = t.l_char.iter().zip(&t.chars[j as usize]).map(|(a, b)| a * b).collect();
                let m = t.inner(&lj, &t.chars[i as usize]).to_rational().expect("multiplicities are rational");
                assert!(m.is_integer() && m >= Scalar::zero(), "character table gives a non-integral multiplicity");
                m.to_integer().try_into().expect("small multiplicity")
            }
            Gamma::Torus | Gamma::SL2 => usize::from((i - j).abs() == 1),
            Gamma::O2Tilde => {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                match (lo, hi) {
                    // L ⊗ triv = L ⊗ det = W_1
                    (0, 2) | (1, 2) => 1,
                    (a, b) if a >= 2 => usize::from(b - a == 1),
                    _ => 0,
                }
            }
        })
    }

    /// `(c, χ_{Y_i}(g) det(1 - g|_L))`.
    ///
    /// Finite `Γ`: `c` gives the value `c_g` on each nontrivial class and the
    /// pairing sums over group elements. `GL_1`: `c` is finite
    /// evaluation/derivative data paired against `λ^i (2 - λ - λ⁻¹)`.
    pub fn condition3_pairing(&self, c: &ClassDistribution, i: i64) -> Result<Cyclotomic> {
        self.check_vertex(i)?;
        match (self, c) {
            (Gamma::Finite(t), ClassDistribution::Classes(values)) => {
                if values.len() != t.num_classes() {
                    return Err(Error::Invalid("need one c value per conjugacy class".into()));
                }
                let mut s = Cyclotomic::zero(t.conductor);
                for (cl, v) in values.iter().enumerate().skip(1) {
                    if v.is_zero() {
                        continue;
                    }
                    let weight = v * Scalar::from_integer((t.class_sizes[cl] as i64).into());
                    s = &s + &(&t.chars[i as usize][cl] * &t.det_one_minus(cl)).scale(&weight);
                }
                Ok(s)
            }
            (Gamma::Torus, ClassDistribution::Points(d)) => {
                let mut f = Laurent::new();
                f.insert(i, Scalar::from_integer(2.into()));
                f.insert(i + 1, -Scalar::one());
                f.insert(i - 1, -Scalar::one());
                Ok(Cyclotomic::from_rational(1, d.pair(&f)?))
            }
            (Gamma::O2Tilde | Gamma::SL2, _) => {
                Err(Error::Invalid(format!("condition (3) pairings for {} are not implemented (graph only)", self.name())))
            }
            _ => Err(Error::Invalid("c must be class values for finite Γ and point data for GL1".into())),
        }
    }
}

/// Invariant distribution on `Γ`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassDistribution {
    /// Value on each conjugacy class (the identity entry is ignored).
    Classes(Vec<Scalar>),
    Points(DistributionData),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: i64,
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: i64,
    pub to: i64,
    pub mult: usize,
}

/// McKay graph, or a window of it for infinite `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayGraph {
    pub name: String,
    pub finite: bool,
    pub vertices: Vec<Vertex>,
    /// One entry per unordered pair with positive multiplicity.
    pub edges: Vec<Edge>,
}

/// Vertices of `Γ` shown for infinite groups: ids in `window`.
pub fn mckay_graph(gamma: &Gamma, window: std::ops::RangeInclusive<i64>) -> Result<McKayGraph> {
    let ids: Vec<i64> = match gamma {
        Gamma::Finite(t) => (0..t.chars.len() as i64).collect(),
        _ => window.filter(|&i| gamma.has_vertex(i)).collect(),
    };
    let mut vertices = Vec::new();
    for &i in &ids {
        vertices.push(Vertex { id: i, label: gamma.label(i), dim: gamma.dim(i)? });
    }
    let mut edges = Vec::new();
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a..] {
            let m = gamma.multiplicity(i, j)?;
            if m > 0 {
                edges.push(Edge { from: i, to: j, mult: m });
            }
        }
    }
    Ok(McKayGraph { name: gamma.name(), finite: gamma.is_finite(), vertices, edges })
}

impl McKayGraph {
    pub fn mult(&self, i: i64, j: i64) -> usize {
        self.edges
            .iter()
            .find(|e| (e.from == i && e.to == j) || (e.from == j && e.to == i))
            .map_or(0, |e| e.mult)
    }

    /// Multigraph in DOT syntax; a multiplicity `m` edge is drawn `m` times.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"{}\" {{\n", self.name);
        for v in &self.vertices {
            out.push_str(&format!("  v{} [label=\"{} ({})\"];\n", fmt_id(v.id), v.label, v.dim));
        }
        for e in &self.edges {
            for _ in 0..e.mult {
                out.push_str(&format!("  v{} -- v{};\n", fmt_id(e.from), fmt_id(e.to)));
            }
        }
        if !self.finite {
            out.push_str("  // window of an infinite graph\n");
        }
        out.push_str("}\n");
        out
    }
}

fn fmt_id(i: i64) -> String {
    if i < 0 {
        format!("m{}", -i)
    } else {
        i.to_string()
    }
}

/// `sum_j mult(i, j) dim Y_j = 2 dim Y_i`, with `j` ranging over all of `Γ`.
pub fn dimension_identity(gamma: &Gamma, i: i64) -> Result<bool> {
    let neighbours: Vec<i64> = match gamma {
        Gamma::Finite(t) => (0..t.chars.len() as i64).collect(),
        _ => (i - 2..=i + 2).filter(|&j| gamma.has_vertex(j)).chain(0..4).collect(),
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut total = 0;
    for j in neighbours {
        if seen.insert(j) {
            total += gamma.multiplicity(i, j)? * gamma.dim(j)?;
        }
    }
    Ok(total == 2 * gamma.dim(i)?)
}

/// Partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram(Vec<usize>);

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(parts)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.0
    }
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(YoungDiagram(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> YoungDiagram {
        YoungDiagram((1..=self.0[0]).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }
}

/// `(a, b)` = (number of rows, number of columns) of a rectangular diagram.
pub fn rectangular_check(w: &YoungDiagram) -> Result<(usize, usize)> {
    let first = w.0[0];
    if w.0.iter().all(|&p| p == first) {
        Ok((w.0.len(), first))
    } else {
        Err(Error::NotRectangular(w.0.clone()))
    }
}

/// `2k(b - a)` for an `a × b` rectangle.
pub fn k_term(k: &Scalar, a: usize, b: usize) -> Scalar {
    Scalar::from_integer(2.into()) * k * Scalar::from_integer((b as i64 - a as i64).into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub vertex: i64,
    pub diagram: YoungDiagram,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WreathSpec {
    pub gamma: Gamma,
    pub n: usize,
    pub blocks: Vec<Block>,
    pub k: Scalar,
    pub c: ClassDistribution,
}

impl WreathSpec {
    /// `sum n_i = n`, distinct existing vertices.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.blocks {
            self.gamma.check_vertex(b.vertex)?;
            if !seen.insert(b.vertex) {
                return Err(Error::Invalid(format!("vertex {} listed twice", b.vertex)));
            }
        }
        let total: usize = self.blocks.iter().map(|b| b.diagram.size()).sum();
        if total != self.n {
            return Err(Error::Invalid(format!("occupation numbers sum to {total}, expected n = {}", self.n)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: u8,
    pub vertices: Vec<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MontaraniReport {
    pub admissible: bool,
    /// The criterion assumes `k ≠ 0` (vacuous when `n = 1`).
    pub k_assumption: bool,
    pub failures: Vec<ConditionFailure>,
    /// Left side of condition (3) per occupied vertex (rectangular ones only).
    pub condition3: BTreeMap<i64, String>,
}

/// Evaluates conditions (1)–(3) for `W ⊗ Y↑`.
pub fn montarani_check(spec: &WreathSpec) -> Result<MontaraniReport> {
    spec.validate()?;
    let mut failures = Vec::new();
    let mut condition3 = BTreeMap::new();
    for b in &spec.blocks {
        match rectangular_check(&b.diagram) {
            Err(_) => failures.push(ConditionFailure {
                condition: 1,
                vertices: vec![b.vertex],
                detail: format!("diagram {:?} is not rectangular", b.diagram.parts()),
            }),
            Ok((a, cols)) => {
                let pairing = spec.gamma.condition3_pairing(&spec.c, b.vertex)?;
                let dim = Scalar::from_integer((spec.gamma.dim(b.vertex)? as i64).into());
                let rational = &dim + k_term(&spec.k, a, cols);
                let value = &Cyclotomic::from_rational(pairing.order(), rational) + &pairing;
                if !value.is_zero() {
                    failures.push(ConditionFailure {
                        condition: 3,
                        vertices: vec![b.vertex],
                        detail: format!("dim Y + 2k(b-a) + (c, χ det(1-g)) = {value}"),
                    });
                }
                condition3.insert(b.vertex, value.to_string());
            }
        }
    }
    for (x, b1) in spec.blocks.iter().enumerate() {
        for b2 in &spec.blocks[x + 1..] {
            if spec.gamma.multiplicity(b1.vertex, b2.vertex)? > 0 {
                failures.push(ConditionFailure {
                    condition: 2,
                    vertices: vec![b1.vertex, b2.vertex],
                    detail: "occupied vertices are adjacent".into(),
                });
            }
        }
    }
    failures.sort_by_key(|f| (f.condition, f.vertices.clone()));
    Ok(MontaraniReport {
        admissible: failures.is_empty(),
        k_assumption: spec.n == 1 || !spec.k.is_zero(),
        failures,
        condition3,
    })
}

// ---- JSON ----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaJson {
    Cyclic(usize),
    BinaryDihedral(usize),
    Table(TableJson),
    Torus,
    O2Tilde,
    Sl2,
}

impl GammaJson {
    pub fn build(&self) -> Result<Gamma> {
        Ok(match self {
            GammaJson::Cyclic(l) => Gamma::Finite(cyclic(*l)?),
            // order 4m
            GammaJson::BinaryDihedral(order) => {
                if order % 4 != 0 {
                    return Err(Error::Invalid("binary dihedral order must be a multiple of 4".into()));
                }
                Gamma::Finite(binary_dihedral(order / 4)?)
            }
            GammaJson::Table(t) => Gamma::Finite(CharacterTable::from_json(t)?),
            GammaJson::Torus => Gamma::Torus,
            GammaJson::O2Tilde => Gamma::O2Tilde,
            GammaJson::Sl2 => Gamma::SL2,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockJson {
    pub vertex: i64,
    pub diagram: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CDataJson {
    /// Class index (as a string key) to value.
    Classes { classes: BTreeMap<String, String> },
    Points(DistributionData),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WreathSpecJson {
    pub gamma: GammaJson,
    pub n: usize,
    pub blocks: Vec<BlockJson>,
    #[serde(default = "one_string")]
    pub k: String,
    #[serde(default)]
    pub c: Option<CDataJson>,
}

fn one_string() -> String {
    "1".into()
}

impl WreathSpec {
    pub fn from_json_spec(j: &WreathSpecJson) -> Result<Self> {
        let gamma = j.gamma.build()?;
        let c = match (&gamma, &j.c) {
            (Gamma::Finite(t), None) => ClassDistribution::Classes(vec![Scalar::zero(); t.num_classes()]),
            (Gamma::Finite(t), Some(CDataJson::Classes { classes })) => {
                let mut v = vec![Scalar::zero(); t.num_classes()];
                for (key, val) in classes {
                    let cl: usize = key
                        .parse()
                        .ok()
                        .filter(|&cl| cl > 0 && cl < t.num_classes())
                        .ok_or_else(|| Error::Invalid(format!("bad nontrivial class index {key:?}")))?;
                    v[cl] = parse_scalar(val)?;
                }
                ClassDistribution::Classes(v)
            }
            (_, None) => ClassDistribution::Points(DistributionData::default()),
            (_, Some(CDataJson::Points(d))) => ClassDistribution::Points(d.clone()),
            (_, Some(CDataJson::Classes { .. })) => {
                return Err(Error::Invalid("class values are only meaningful for finite Γ".into()))
            }
        };
        let blocks = j
            .blocks
            .iter()
            .map(|b| Ok(Block { vertex: b.vertex, diagram: YoungDiagram::new(b.diagram.clone())? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(WreathSpec { gamma, n: j.n, blocks, k: parse_scalar(&j.k)?, c })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: WreathSpecJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_spec(&j)
    }
}
