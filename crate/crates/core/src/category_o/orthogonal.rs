use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{raising_ops, GradedModule, GradedOp};
use crate::dunkl::{coordinates_in, degree_basis, dunkl_rep_matrices, reflection_operator, DunklParams};
use crate::error::{Error, Result};
use crate::exact::{binomial, fmt_scalar, Matrix, Scalar, SparsePoly};

/// The polynomial representation `ℂ[h] = M(ℂ)` realized by Dunkl operators,
/// truncated at degree `top`.
pub fn dunkl_module(params: &DunklParams, top: usize) -> Result<GradedModule> {
    let d = params.dim();
    let monos: Vec<Vec<Vec<u32>>> = (0..=top).map(|n| degree_basis(d, n as u32).into_iter().map(|m| m.0).collect()).collect();
    let dims: Vec<usize> = monos.iter().map(Vec::len).collect();
    let (x, peel) = raising_ops(d, &dims, &monos, 1);
    let mats = (0..=top).into_par_iter().map(|n| dunkl_rep_matrices(params, n as u32)).collect::<Result<Vec<_>>>()?;
    let y = (0..d)
        .map(|i| GradedOp { shift: -1, blocks: mats.iter().map(|m| Some(m.d[i].clone())).collect() })
        .collect();
    let c_blocks = (0..=top)
        .into_par_iter()
        .map(|n| {
            let basis = degree_basis(d, n as u32);
            let mut m = Matrix::zeros(basis.len(), basis.len());
            for (a, mono) in basis.iter().enumerate() {
                let f = SparsePoly::monomial(params.vars(), mono.clone(), Scalar::one());
                let col = coordinates_in(&basis, &reflection_operator(params, &f)?)?;
                for (r, v) in col.into_iter().enumerate() {
                    m[(r, a)] = v;
                }
            }
            Ok(Some(m))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = monos
        .iter()
        .map(|ms| {
            ms.iter()
                .map(|m| SparsePoly::monomial(params.vars(), crate::exact::Monomial(m.clone()), Scalar::one()).to_string())
                .collect()
        })
        .collect();
    Ok(GradedModule { top, dims, basis, peel, x, y, c_op: GradedOp { shift: 0, blocks: c_blocks }, t: params.t().clone() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Report {
    pub holds: bool,
    /// `(relation, degree)` of the first failure.
    pub failure: Option<(String, usize)>,
}

/// `F = ½ sum x_i²`, `E = -½ sum y_i²`, `H = -½ sum (x_i y_i + y_i x_i)`.
pub fn sl2_operators(m: &GradedModule, e_signs: &[Scalar]) -> (GradedOp, GradedOp, GradedOp) {
    let half = Scalar::new(1.into(), 2.into());
    let mut f = GradedOp::zero(&m.dims, 2);
    let mut e = GradedOp::zero(&m.dims, -2);
    let mut h = GradedOp::zero(&m.dims, 0);
    for i in 0..m.rank_h() {
        f = f.add(&m.x[i].compose(&m.x[i]).scale(&half));
        e = e.add(&m.y[i].compose(&m.y[i]).scale(&(-&half * &e_signs[i])));
        h = h.add(&m.x[i].compose(&m.y[i]).add(&m.y[i].compose(&m.x[i])).scale(&-half.clone()));
    }
    (e, f, h)
}

/// Checks `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H` and `H = -𝐡` on degrees
/// `≤ max_degree` of the O(d) Dunkl module with `t = 1`.
pub fn sl2_triple_check(d: usize, k: &Scalar, max_degree: usize) -> Result<Sl2Report> {
    sl2_triple_check_signed(d, k, max_degree, &vec![Scalar::one(); d])
}

/// As `sl2_triple_check`, with `E = -½ sum e_signs[i] y_i²` (mutation hook).
pub fn sl2_triple_check_signed(d: usize, k: &Scalar, max_degree: usize, e_signs: &[Scalar]) -> Result<Sl2Report> {
    let params = DunklParams::orthogonal(Scalar::one(), d, k.clone());
    let m = dunkl_module(&params, max_degree + 2)?;
    let (e, f, h) = sl2_operators(&m, e_signs);
    let two = Scalar::from_integer(2.into());
    let checks = [
        ("[H,E]=2E", h.commutator(&e), e.scale(&two)),
        ("[H,F]=-2F", h.commutator(&f), f.scale(&-two.clone())),
        ("[E,F]=H", e.commutator(&f), h.clone()),
        ("H=-h", h.clone(), m.euler().scale(&-Scalar::one())),
    ];
    for (name, lhs, rhs) in checks {
        if let Some(n) = lhs.differs_at(&rhs, max_degree) {
            return Ok(Sl2Report { holds: false, failure: Some((name.to_string(), n)) });
        }
    }
    Ok(Sl2Report { holds: true, failure: None })
}

/// `λ_Y(k) = -d/2 - k · Tr_Y(s)/dim Y`; `trace_ratio = None` means `Y = ℂ`.
pub fn lowest_weight(d: usize, k: &Scalar, trace_ratio: Option<&Scalar>) -> Scalar {
    let r = trace_ratio.cloned().unwrap_or_else(Scalar::one);
    -Scalar::new((d as i64).into(), 2.into()) - k * r
}

/// Dimension of harmonic polynomials of degree `n` on `ℝ^d`.
pub fn harmonic_dim(d: usize, n: usize) -> usize {
    let (d, n) = (d as i64, n as i64);
    let v = binomial(n + d - 1, d - 1) - binomial(n + d - 3, d - 1);
    v.to_integer().try_into().expect("small")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcReport {
    pub d: usize,
    pub m: usize,
    pub k: String,
    /// Rank of the Shapovalov form in each degree until termination.
    pub ranks: Vec<usize>,
    pub dimension: usize,
    /// `(sl2 label m - n, harmonic degree n, dim Harm(n))`.
    pub decomposition: Vec<(usize, usize, usize)>,
    pub predicted_ranks: Vec<usize>,
    pub matches: bool,
}

/// `L(ℂ) = M(ℂ)/ker(Shapovalov)` at `k = -d/2 - m`, compared degree by
/// degree with `⊕_{n ≤ m} L_{m-n} ⊗ Harm(n)`, where `L_j` has weights
/// spaced by two starting in degree `n`.
pub fn lc_structure(d: usize, m: usize) -> Result<LcReport> {
    let k = -Scalar::new((d as i64).into(), 2.into()) - Scalar::from_integer((m as i64).into());
    let params = DunklParams::orthogonal(Scalar::one(), d, k.clone());
    let cap = 4 * m + 12;
    let mut top = 2 * m + 3;
    let ranks = loop {
        let module = super::orthogonal::dunkl_module(&params, top)?;
        let ranks: Vec<usize> = (0..=top).into_par_iter().map(|n| module.gram(n).rank()).collect();
        let end = ranks.windows(3).position(|w| w.iter().all(|&r| r == 0));
        if let Some(p) = end {
            break ranks[..p].to_vec();
        }
        if top >= cap {
            return Err(Error::NonTerminating(top));
        }
        top = (2 * top).min(cap);
    };
    let decomposition: Vec<(usize, usize, usize)> = (0..=m).map(|n| (m - n, n, harmonic_dim(d, n))).collect();
    let mut predicted = vec![0usize; 2 * m + 1];
    for &(j, n, h) in &decomposition {
        for p in 0..=j {
            predicted[n + 2 * p] += h;
        }
    }
    while predicted.last() == Some(&0) {
        predicted.pop();
    }
    Ok(LcReport {
        d,
        m,
        k: fmt_scalar(&k),
        dimension: ranks.iter().sum(),
        matches: ranks == predicted,
        ranks,
        decomposition,
        predicted_ranks: predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn harmonic_dims() {
        assert_eq!((0..4).map(|n| harmonic_dim(2, n)).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
        assert_eq!((0..4).map(|n| harmonic_dim(3, n)).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn lowest_weights() {
        assert_eq!(lowest_weight(3, &qi(0), None), q(-3, 2));
        assert_eq!(lowest_weight(2, &qi(-3), None), qi(2));
        let d = 4;
        assert_eq!(lowest_weight(d, &q(1, 2), Some(&q(2, 4))), qi(-2) - q(1, 4));
    }

    #[test]
    fn m_zero_is_trivial() {
        let r = lc_structure(2, 0).unwrap();
        assert_eq!(r.dimension, 1);
        assert!(r.matches);
    }
}
