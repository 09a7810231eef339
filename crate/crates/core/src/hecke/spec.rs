//! JSON description of an algebra:
//! `{base: {...}, V: {dim, labels, roles}, kappa: {entries | family, params}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{base_add, cherednik_labels, Base, BaseElem, FiniteGroup, HeckeAlgebra, KappaForm, VRole};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Matrix, Scalar};
use crate::genfun::{v_representation, BetaParameter};
use crate::lie::{LieAlgebra, LieSpecJson};

/// Matrices are written as rows of scalar strings (`"1/2"`, `"-3"`).
pub type MatrixJson = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseJson {
    /// `U(g)`; `rep` defaults to the natural module for gl (on `h* ⊕ h`) and sp.
    Enveloping {
        #[serde(flatten)]
        lie: LieSpecJson,
        #[serde(default)]
        rep: Option<Vec<MatrixJson>>,
    },
    /// Finite group from generators on `h` (then `V = h* ⊕ h`) or on `V`,
    /// or from a multiplication table with matrices on `V`.
    FiniteGroup {
        #[serde(default)]
        generators_h: Option<Vec<MatrixJson>>,
        #[serde(default)]
        generators_v: Option<Vec<MatrixJson>>,
        #[serde(default)]
        table: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        matrices: Option<Vec<MatrixJson>>,
    },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VJson {
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub roles: Option<Vec<VRole>>,
}

/// One term of a base element: PBW exponents, or `[g]` for a group element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaseTermJson {
    pub mono: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KappaEntryJson {
    pub i: usize,
    pub j: usize,
    pub value: Vec<BaseTermJson>,
}

/// `c` for every reflection, or values keyed by group element index (spread
/// over conjugacy classes).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CJson {
    Uniform(String),
    ByElement(BTreeMap<String, String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaFamily {
    Beta,
    Maineq,
    Maineqc,
    Zero,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct KappaParams {
    #[serde(default)]
    pub beta: Option<Vec<String>>,
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub c: Option<CJson>,
    /// Symplectic form on `V` for `maineq`; defaults to the Darboux form.
    #[serde(default)]
    pub omega: Option<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KappaJson {
    #[serde(default)]
    pub entries: Option<Vec<KappaEntryJson>>,
    #[serde(default)]
    pub family: Option<KappaFamily>,
    #[serde(default)]
    pub params: KappaParams,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub base: BaseJson,
    #[serde(rename = "V", default)]
    pub v: VJson,
    pub kappa: KappaJson,
}

pub fn parse_matrix(m: &MatrixJson) -> Result<Matrix> {
    let rows = m.iter().map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Invalid("matrix rows must be non-empty and of equal length".into()));
    }
    Ok(Matrix::from_rows(rows))
}

fn parse_matrices(ms: &[MatrixJson]) -> Result<Vec<Matrix>> {
    ms.iter().map(parse_matrix).collect()
}

fn build_base(b: &BaseJson) -> Result<(Base, Option<Arc<LieAlgebra>>)> {
    match b {
        BaseJson::Enveloping { lie, rep } => {
            let g = LieAlgebra::from_spec(lie)?;
            let rep = match rep {
                Some(r) => parse_matrices(r)?,
                None => v_representation(&g)?,
            };
            Ok((Base::Enveloping { lie: g.clone(), rep }, Some(g)))
        }
        BaseJson::FiniteGroup { generators_h, generators_v, table, matrices } => {
            let g = match (generators_h, generators_v, table, matrices) {
                (Some(gh), None, None, None) => FiniteGroup::on_h(&parse_matrices(gh)?)?,
                (None, Some(gv), None, None) => FiniteGroup::on_v(&parse_matrices(gv)?)?,
                (None, None, Some(t), Some(m)) => FiniteGroup::from_table(t.clone(), parse_matrices(m)?)?,
                _ => {
                    return Err(Error::Invalid(
                        "finite_group needs exactly one of generators_h, generators_v, or table with matrices".into(),
                    ))
                }
            };
            Ok((Base::Group(Arc::new(g)), None))
        }
    }
}

/// `c_g` for every element: a uniform value on reflections, or explicit
/// values spread over conjugacy classes.
pub fn expand_c(group: &FiniteGroup, c: &CJson) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); group.order()];
    match c {
        CJson::Uniform(s) => {
            let v = parse_scalar(s)?;
            for r in group.reflections() {
                out[r] = v.clone();
            }
        }
        CJson::ByElement(m) => {
            for (k, s) in m {
                let g: usize = k
                    .trim_start_matches('g')
                    .parse()
                    .ok()
                    .filter(|&g| g < group.order())
                    .ok_or_else(|| Error::Invalid(format!("bad group element key {k:?}")))?;
                let v = parse_scalar(s)?;
                for h in group.conjugacy_class(g) {
                    if !out[h].is_zero() && out[h] != v {
                        return Err(Error::NotEquivariant(format!("c differs within the class of g{g}")));
                    }
                    out[h] = v.clone();
                }
            }
        }
    }
    Ok(out)
}

fn v_labels(spec: &VJson, dim: usize) -> Result<(Vec<String>, Vec<VRole>)> {
    if let Some(d) = spec.dim {
        if d != dim {
            return Err(Error::Invalid(format!("V.dim = {d} but the base acts on dimension {dim}")));
        }
    }
    let labels = spec.labels.clone().unwrap_or_else(|| (0..dim).map(|i| format!("v{}", i + 1)).collect());
    let roles = spec.roles.clone().unwrap_or_else(|| vec![VRole::Plain; dim]);
    if labels.len() != dim || roles.len() != dim {
        return Err(Error::Invalid("V.labels and V.roles must match dim V".into()));
    }
    Ok((labels, roles))
}

fn base_dim(base: &Base) -> usize {
    match base {
        Base::Enveloping { rep, .. } => rep.first().map_or(0, Matrix::rows),
        Base::Group(g) => g.dim_v(),
    }
}

/// Builds the algebra described by a JSON spec.
pub fn build_from_spec(spec: &AlgebraSpec) -> Result<Arc<HeckeAlgebra>> {
    let (base, lie) = build_base(&spec.base)?;
    let dim = base_dim(&base);
    let params = &spec.kappa.params;
    let t = params.t.as_deref().map(parse_scalar).transpose()?;
    match (&spec.kappa.entries, &spec.kappa.family) {
        (Some(entries), None) => {
            let (labels, roles) = v_labels(&spec.v, dim)?;
            let mut parsed = Vec::new();
            for e in entries {
                let mut v = BaseElem::new();
                for term in &e.value {
                    base_add(&mut v, term.mono.clone(), parse_scalar(&term.coeff)?);
                }
                parsed.push((e.i, e.j, v));
            }
            HeckeAlgebra::build(base, KappaForm::from_entries(labels, roles, parsed)?)
        }
        (None, Some(KappaFamily::Zero)) => {
            let (labels, roles) = match &base {
                Base::Group(g) if g.has_h() && spec.v.labels.is_none() => cherednik_labels(dim / 2),
                _ => v_labels(&spec.v, dim)?,
            };
            HeckeAlgebra::undeformed(base, labels, roles)
        }
        (None, Some(KappaFamily::Beta)) => {
            let g = lie.ok_or_else(|| Error::Invalid("beta family needs an enveloping base".into()))?;
            let beta = BetaParameter::parse(params.beta.as_deref().unwrap_or(&[]))?;
            HeckeAlgebra::infinitesimal(&g, &beta)
        }
        (None, Some(fam @ (KappaFamily::Maineq | KappaFamily::Maineqc))) => {
            let Base::Group(g) = base else {
                return Err(Error::Invalid("maineq/maineqc need a finite group base".into()));
            };
            let t = t.unwrap_or_else(Scalar::zero);
            let c = match &params.c {
                Some(c) => expand_c(&g, c)?,
                None => vec![Scalar::zero(); g.order()],
            };
            if matches!(fam, KappaFamily::Maineqc) {
                HeckeAlgebra::cherednik(g, t, c)
            } else {
                let omega = match &params.omega {
                    Some(m) => parse_matrix(m)?,
                    None => {
                        if dim % 2 == 1 {
                            return Err(Error::Invalid("odd-dimensional V needs an explicit omega".into()));
                        }
                        crate::lie::symplectic_j(dim / 2)
                    }
                };
                HeckeAlgebra::symplectic_reflection(g, &omega, t, c)
            }
        }
        _ => Err(Error::Invalid("kappa needs exactly one of entries or family".into())),
    }
}

impl HeckeAlgebra {
    pub fn from_json(text: &str) -> Result<Arc<Self>> {
        let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        build_from_spec(&spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{HeckeElement, Letter};

    #[test]
    fn maineqc_z2_from_json() {
        let h = HeckeAlgebra::from_json(
            r#"{"base":{"finite_group":{"generators_h":[[["-1"]]]}},
                "kappa":{"family":"maineqc","params":{"t":"1","c":"1/2"}}}"#,
        )
        .unwrap();
        let nf = HeckeElement::from_word(&h, &[Letter::V(1), Letter::V(0)]);
        assert_eq!(nf.to_string(), "x1*y1 + g1 + 1");
    }

    #[test]
    fn beta_from_json() {
        let h = HeckeAlgebra::from_json(
            r#"{"base":{"enveloping":{"family":"gl","n":2}},"kappa":{"family":"beta","params":{"beta":["1"]}}}"#,
        )
        .unwrap();
        assert_eq!(h.dim_v(), 4);
        assert!(h.is_cherednik_type());
    }

    #[test]
    fn explicit_entries_and_errors() {
        let ok = r#"{"base":{"finite_group":{"generators_v":[[["-1","0"],["0","-1"]]]}},
                     "V":{"labels":["x","y"],"roles":["h_star","h"]},
                     "kappa":{"entries":[{"i":0,"j":1,"value":[{"mono":[0],"coeff":"1"},{"mono":[1],"coeff":"2"}]}]}}"#;
        assert!(HeckeAlgebra::from_json(ok).is_ok());
        let both = r#"{"base":{"finite_group":{"generators_v":[[["-1"]]]}},"kappa":{}}"#;
        assert!(matches!(HeckeAlgebra::from_json(both), Err(Error::Invalid(_))));
        assert!(matches!(HeckeAlgebra::from_json("{"), Err(Error::Parse(_))));
    }
}
