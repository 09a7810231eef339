use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub holds: bool,
    pub reflections_checked: usize,
    /// `(g, i, j, lhs, rhs)` for every failing basis pair.
    pub failures: Vec<(usize, usize, usize, String, String)>,
}

/// For every reflection `g` and basis vectors `x_i ∈ h*`, `y_j ∈ h`, compares
/// `<(1-g)x_i, (1-g)y_j>` with `Tr(1-g)|_h · <(1-g)x_i, y_j>`, where `g`
/// acts on `h*` contragrediently.
pub fn sra_cherednik_bridge(group: &FiniteGroup) -> Result<BridgeReport> {
    if !group.has_h() {
        return Err(Error::Invalid("bridge needs a group acting on h".into()));
    }
    let refl = group.reflections();
    let mut failures = Vec::new();
    for &g in &refl {
        let on_h = group.mat_h(g).expect("on h");
        let d = on_h.rows();
        let id = Matrix::identity(d);
        let one_minus_h = &id - on_h;
        let one_minus_hstar = &id - &group.mat_h(group.inv(g)).expect("on h").transpose();
        let phi = one_minus_h.trace();
        for i in 0..d {
            let u = one_minus_hstar.col(i);
            for j in 0..d {
                let w = one_minus_h.col(j);
                let lhs: Scalar = u.iter().zip(&w).map(|(a, b)| a * b).sum();
                let rhs = &phi * &u[j];
                if lhs != rhs {
                    failures.push((g, i, j, fmt_scalar(&lhs), fmt_scalar(&rhs)));
                }
            }
        }
    }
    Ok(BridgeReport { holds: failures.is_empty(), reflections_checked: refl.len(), failures })
}
