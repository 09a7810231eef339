//! Generating-function expansions for the `gl_n` and `sp_2n` deformation
//! coefficients and assembly of the corresponding `U(g)`-valued pairings.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Scalar, SparsePoly, TruncatedSeries, VarTable};
use crate::lie::env::{symmetrize, EnvElement};
use crate::lie::{symplectic_j, Family, LieAlgebra};

type PolyMatrix = Vec<Vec<SparsePoly>>;

fn pm_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = SparsePoly::zero(&vars);
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn pm_identity(vars: &Arc<VarTable>, n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { SparsePoly::one(vars) } else { SparsePoly::zero(vars) }).collect())
        .collect()
}

fn pm_trace(a: &PolyMatrix) -> SparsePoly {
    let vars = a[0][0].vars().clone();
    a.iter().enumerate().fold(SparsePoly::zero(&vars), |acc, (i, row)| &acc + &row[i])
}

/// Powers `A^0, …, A^M` of the generic element of the defining representation.
fn matrix_powers(g: &LieAlgebra, m: usize) -> Result<Vec<PolyMatrix>> {
    let a = g.generic_matrix()?;
    let mut out = vec![pm_identity(g.coord_vars(), a.len())];
    for k in 1..=m {
        let next = pm_mul(&out[k - 1], &a);
        out.push(next);
    }
    Ok(out)
}

fn check_family(g: &LieAlgebra) -> Result<()> {
    match g.family() {
        Family::Gl | Family::Sp => Ok(()),
        f => Err(Error::UnsupportedFamily(format!("{f:?}"))),
    }
}

/// `det(1 - τA)^{-1} = exp(sum_{k>0} τ^k Tr(A^k)/k)` through order `M`,
/// with coefficients polynomial in the coordinates of `g`.
pub fn det_inverse_expansion(g: &LieAlgebra, m: usize) -> Result<TruncatedSeries> {
    check_family(g)?;
    let pows = matrix_powers(g, m)?;
    let vars = g.coord_vars().clone();
    let mut log = TruncatedSeries::zero(&vars, m);
    for (k, p) in pows.iter().enumerate().skip(1) {
        log.set_coeff(k, pm_trace(p).scale(&Scalar::new(1.into(), (k as i64).into())));
    }
    log.exp()
}

/// Deformation coefficient `r_m` (gl) or `ℓ_m` (sp) as a table over basis
/// pairs. For gl, `table[i][j] = r_m(e_i^*, e_j)`; for sp, `table[a][b] = ℓ_m(e_a, e_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationCoefficient {
    pub m: usize,
    pub family: Family,
    pub table: Vec<Vec<SparsePoly>>,
}

fn gl_algebra(n: usize) -> Arc<LieAlgebra> {
    LieAlgebra::gl(n)
}

/// `r_m`, `m = 0..=M`, from `(x, (1-τA)^{-1} y) det(1-τA)^{-1}`.
pub fn r_coefficients(n: usize, m: usize) -> Vec<DeformationCoefficient> {
    r_coefficients_in(&gl_algebra(n), m).expect("gl_n is supported")
}

pub fn r_coefficients_in(g: &LieAlgebra, m: usize) -> Result<Vec<DeformationCoefficient>> {
    if g.family() != Family::Gl {
        return Err(Error::UnsupportedFamily(format!("{:?}", g.family())));
    }
    let n = g.rank_parameter();
    let pows = matrix_powers(g, m)?;
    let d = det_inverse_expansion(g, m)?;
    Ok((0..=m)
        .into_par_iter()
        .map(|mm| {
            let table = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut acc = SparsePoly::zero(g.coord_vars());
                            for k in 0..=mm {
                                if !pows[k][i][j].is_zero() {
                                    acc = &acc + &(&pows[k][i][j] * d.coeff(mm - k));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            DeformationCoefficient { m: mm, family: Family::Gl, table }
        })
        .collect())
}

/// `ℓ_m`, `m = 0..=M`, from `ω(x, (1-τ²A²)^{-1} y) det(1-τA)^{-1}`.
pub fn ell_coefficients(n: usize, m: usize) -> Vec<DeformationCoefficient> {
    ell_coefficients_in(&LieAlgebra::sp(n), m).expect("sp_2n is supported")
}

pub fn ell_coefficients_in(g: &LieAlgebra, m: usize) -> Result<Vec<DeformationCoefficient>> {
    if g.family() != Family::Sp {
        return Err(Error::UnsupportedFamily(format!("{:?}", g.family())));
    }
    let dim_v = 2 * g.rank_parameter();
    let pows = matrix_powers(g, m)?;
    let d = det_inverse_expansion(g, m)?;
    let j = symplectic_j(g.rank_parameter());
    let vars = g.coord_vars().clone();
    // (J A^{2k})_{ab}
    let jpow = |k: usize, a: usize, b: usize| -> SparsePoly {
        let mut acc = SparsePoly::zero(&vars);
        for c in 0..dim_v {
            if !j[(a, c)].is_zero() {
                acc.add_assign_scaled(&pows[k][c][b], &j[(a, c)]);
            }
        }
        acc
    };
    Ok((0..=m)
        .into_par_iter()
        .map(|mm| {
            let table = (0..dim_v)
                .map(|a| {
                    (0..dim_v)
                        .map(|b| {
                            let mut acc = SparsePoly::zero(&vars);
                            for k in (0..=mm).step_by(2) {
                                let dc = d.coeff(mm - k);
                                if !dc.is_zero() {
                                    acc = &acc + &(&jpow(k, a, b) * dc);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            DeformationCoefficient { m: mm, family: Family::Sp, table }
        })
        .collect())
}

/// Coefficients `β_0, β_1, …` of the deformation parameter polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaParameter(#[serde(with = "crate::exact::scalar_vec")] pub Vec<Scalar>);

impl BetaParameter {
    pub fn parse(items: &[String]) -> Result<Self> {
        Ok(BetaParameter(items.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()?))
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }
}

/// `κ(v_a, v_b) = [v_a, v_b]` for `a < b` over the ordered `V` basis.
///
/// gl: `V = (x_1..x_n, y_1..y_n)` and `[y_j, x_i] = sym(sum_m β_m r_m(x_i, y_j))`.
/// sp: Darboux basis and `[e_a, e_b] = sym(sum_m β_m ℓ_m(e_a, e_b))`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfinitesimalKappa {
    pub algebra: Arc<LieAlgebra>,
    pub dim_v: usize,
    pub entries: Vec<(usize, usize, EnvElement)>,
}

pub fn assemble_kappa(g: &Arc<LieAlgebra>, beta: &BetaParameter) -> Result<InfinitesimalKappa> {
    check_family(g)?;
    let m = beta.degree().unwrap_or(0);
    let combine = |coeffs: &[DeformationCoefficient], a: usize, b: usize| -> SparsePoly {
        let mut acc = SparsePoly::zero(g.coord_vars());
        for (mm, bm) in beta.0.iter().enumerate() {
            if !bm.is_zero() {
                acc.add_assign_scaled(&coeffs[mm].table[a][b], bm);
            }
        }
        acc
    };
    match g.family() {
        Family::Gl => {
            let n = g.rank_parameter();
            let r = r_coefficients_in(g, m)?;
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let v = symmetrize(g, &combine(&r, i, j)).scale(&-Scalar::one());
                    if !v.is_zero() {
                        entries.push((i, n + j, v));
                    }
                }
            }
            Ok(InfinitesimalKappa { algebra: g.clone(), dim_v: 2 * n, entries })
        }
        Family::Sp => {
            if let Some((i, _)) = beta.0.iter().enumerate().find(|(i, c)| i % 2 == 1 && !c.is_zero()) {
                return Err(Error::OddBetaForSp(i));
            }
            let dv = 2 * g.rank_parameter();
            let l = ell_coefficients_in(g, m)?;
            let mut entries = Vec::new();
            for a in 0..dv {
                for b in a + 1..dv {
                    let v = symmetrize(g, &combine(&l, a, b));
                    if !v.is_zero() {
                        entries.push((a, b, v));
                    }
                }
            }
            Ok(InfinitesimalKappa { algebra: g.clone(), dim_v: dv, entries })
        }
        _ => unreachable!(),
    }
}

/// Representation of `g` on `V` in the order used by `assemble_kappa`.
pub fn v_representation(g: &LieAlgebra) -> Result<Vec<crate::exact::Matrix>> {
    match g.family() {
        Family::Gl => Ok(crate::lie::closure::gl_rep_on_hstar_h(g.rank_parameter())),
        Family::Sp => Ok(g.rep().expect("sp has a defining representation").to_vec()),
        f => Err(Error::UnsupportedFamily(format!("{f:?}"))),
    }
}

/// Constant `γ` with `sym(ℓ_{2k}(e_1, e_2)) = γ · ω(e_1, e_2) · Δ^k` in `U(sl_2)`,
/// where `Δ` is the Casimir element; `None` if no such constant exists.
pub fn sl2_gamma(k: usize) -> Option<Scalar> {
    let g = LieAlgebra::sp(1);
    let ell = ell_coefficients_in(&g, 2 * k).ok()?;
    let lhs = symmetrize(&g, &ell[2 * k].table[0][1]);
    let delta = EnvElement::casimir(&g).ok()?;
    let mut rhs = EnvElement::one(&g);
    for _ in 0..k {
        rhs = rhs.mul(&delta).ok()?;
    }
    proportionality(&lhs, &rhs)
}

/// Constant `γ` with `ℓ_{2k}(e_1, e_2) = γ · C^k` in `S(sl_2)`, where `C` is
/// the Casimir symbol `h²/2 + 2ef`, so that `sym(ℓ_{2k}) = γ · sym(C^k)`.
pub fn sl2_gamma_symbolic(k: usize) -> Option<Scalar> {
    let g = LieAlgebra::sp(1);
    let ell = ell_coefficients_in(&g, 2 * k).ok()?;
    let lhs = g.coords_to_basis_poly(&ell[2 * k].table[0][1]);
    let c = SparsePoly::parse(g.basis_vars(), "1/2*h^2 + 2*f*e").ok()?;
    let rhs = c.pow(k as u32);
    let (m, v) = rhs.leading_term()?;
    let gamma = lhs.coeff(m) / v;
    (rhs.scale(&gamma) == lhs).then_some(gamma)
}

/// `sym(C^k)` for the Casimir symbol `C = h²/2 + 2ef` of `sl_2`.
pub fn sl2_sym_casimir_power(k: usize) -> EnvElement {
    let g = LieAlgebra::sp(1);
    let c = SparsePoly::parse(g.basis_vars(), "1/2*h^2 + 2*f*e").expect("valid");
    crate::lie::env::symmetrize_basis_poly(&g, &c.pow(k as u32))
}

fn proportionality(lhs: &EnvElement, rhs: &EnvElement) -> Option<Scalar> {
    let (m, v) = rhs.terms().last()?;
    let gamma = lhs.coeff(m) / v;
    (rhs.scale(&gamma) == *lhs).then_some(gamma)
}

/// Input for the Lie-closure check of `gl_n ⊕ h ⊕ h*` with `κ(y, x) = r_1(x, y)`.
/// With `drop_trace` the `(x,y)Id` part of `r_1` is omitted.
pub fn tau_closure_input(n: usize, drop_trace: bool) -> (Arc<LieAlgebra>, Vec<crate::exact::Matrix>, Vec<(usize, usize, Vec<Scalar>)>) {
    let g = gl_algebra(n);
    let r1 = &r_coefficients_in(&g, 1).expect("gl")[1];
    let mut kappa = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut v = g.element_of_linear(&r1.table[i][j]);
            if drop_trace && i == j {
                for a in 0..n {
                    v[a * n + a] -= Scalar::one();
                }
            }
            // stored as [x_i, y_j] = -[y_j, x_i]
            kappa.push((i, n + j, v.into_iter().map(|c| -c).collect()));
        }
    }
    let rep = crate::lie::closure::gl_rep_on_hstar_h(n);
    (g, rep, kappa)
}
