use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{raising_ops, GradedModule, GradedOp};
use crate::dunkl::degree_basis;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Monomial, Scalar};
use crate::hecke::{Base, BaseElem, HeckeAlgebra, HeckeElement, Letter, NMono};
use crate::lie::env::word_of;

/// A finite-dimensional module `Y` over the base algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseModule {
    /// Matrix of every group element.
    Group(Vec<Matrix>),
    /// Matrix of every Lie basis element.
    Lie(Vec<Matrix>),
}

impl BaseModule {
    /// The trivial one-dimensional module.
    pub fn trivial(h: &HeckeAlgebra) -> Self {
        match h.base() {
            Base::Group(g) => BaseModule::Group(vec![Matrix::identity(1); g.order()]),
            Base::Enveloping { lie, .. } => BaseModule::Lie(vec![Matrix::zeros(1, 1); lie.dim()]),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BaseModule::Group(m) | BaseModule::Lie(m) => m.first().map_or(0, Matrix::rows),
        }
    }

    /// Checks that the matrices define a module over the base of `h`.
    pub fn validate(&self, h: &HeckeAlgebra) -> Result<()> {
        match (self, h.base()) {
            (BaseModule::Group(m), Base::Group(g)) => {
                if m.len() != g.order() {
                    return Err(Error::Invalid("need one matrix per group element".into()));
                }
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        if &m[a] * &m[b] != m[g.mul(a, b)] {
                            return Err(Error::Invalid("Y matrices do not respect the group law".into()));
                        }
                    }
                }
                Ok(())
            }
            (BaseModule::Lie(m), Base::Enveloping { lie, .. }) => {
                if m.len() != lie.dim() {
                    return Err(Error::Invalid("need one matrix per Lie basis element".into()));
                }
                for a in 0..lie.dim() {
                    for b in 0..lie.dim() {
                        let mut rhs = Matrix::zeros(self.dim(), self.dim());
                        for (k, c) in lie.bracket_basis(a, b) {
                            rhs = &rhs + &m[*k].scale(c);
                        }
                        if m[a].commutator(&m[b]) != rhs {
                            return Err(Error::Invalid("Y matrices do not represent g".into()));
                        }
                    }
                }
                Ok(())
            }
            _ => Err(Error::Invalid("Y does not match the base algebra".into())),
        }
    }

    /// Action of a base monomial.
    pub fn act(&self, key: &[u32]) -> Matrix {
        match self {
            BaseModule::Group(m) => m[key[0] as usize].clone(),
            BaseModule::Lie(m) => {
                let mut out = Matrix::identity(self.dim());
                for a in word_of(&Monomial(key.to_vec())) {
                    out = &out * &m[a];
                }
                out
            }
        }
    }
}

/// The part `c` of the Euler element `𝐡 = c + sum x_i y_i + t·d/2` and the scale `t`.
///
/// Finite groups: `c = sum_g c_g g` from the reflection data. Enveloping
/// base: `c` is solved for among PBW monomials of positive degree so that
/// `[𝐡, x] = t x` and `[𝐡, y] = -t y` hold, with `t = 1` when solvable and
/// otherwise `t` equal to minus the constant term of `κ(x_1, y_1)`.
pub fn euler_base_element(h: &Arc<HeckeAlgebra>) -> Result<(Scalar, BaseElem)> {
    let xs = h.x_indices();
    let ys = h.y_indices();
    if !h.is_cherednik_type() {
        return Err(Error::Invalid("Euler element needs a Cherednik-type algebra (V = h* ⊕ h)".into()));
    }
    match h.base() {
        Base::Group(_) => {
            let data = h.reflection_data().ok_or_else(|| Error::Invalid("finite-group algebra without (t, c) data".into()))?;
            let mut c = BaseElem::new();
            for (g, v) in data.c.iter().enumerate() {
                if !v.is_zero() {
                    c.insert(vec![g as u32], v.clone());
                }
            }
            Ok((data.t.clone(), c))
        }
        Base::Enveloping { lie, .. } => {
            let zero_key = vec![0u32; lie.dim()];
            let forced = -h.kappa(xs[0], ys[0]).get(&zero_key).cloned().unwrap_or_else(Scalar::zero);
            // a central element acting on h* by a scalar trades t against c, so
            // t = 1 is tried first
            for t in [Scalar::one(), forced] {
                if let Some(c) = solve_euler_base(h, lie.dim(), &t)? {
                    return Ok((t, c));
                }
            }
            Err(Error::Invalid("no Euler element of bounded degree in the base".into()))
        }
    }
}

/// Solves `[c + sum x_i y_i, x] = t x`, `[…, y] = -t y` for `c` among PBW
/// monomials of degree `1..=maxdeg(κ)+1`.
fn solve_euler_base(h: &Arc<HeckeAlgebra>, lie_dim: usize, t: &Scalar) -> Result<Option<BaseElem>> {
    let xs = h.x_indices();
    let ys = h.y_indices();
    let top = (0..h.dim_v())
        .flat_map(|a| (0..h.dim_v()).map(move |b| (a, b)))
        .flat_map(|(a, b)| h.kappa(a, b).keys().map(|k| k.iter().sum::<u32>()).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
        + 1;
    let unknowns: Vec<Vec<u32>> = (1..=top).flat_map(|n| degree_basis(lie_dim, n)).map(|m| m.0).collect();
    let mut sum_xy = HeckeElement::zero(h);
    for (&x, &y) in xs.iter().zip(&ys) {
        sum_xy = sum_xy.add(&HeckeElement::v(h, x).mul(&HeckeElement::v(h, y))?)?;
    }
    // rows indexed by (generator, normal monomial)
    let mut rows: BTreeMap<(usize, NMono), Vec<Scalar>> = BTreeMap::new();
    let ncols = unknowns.len();
    let gens: Vec<(usize, Scalar)> = xs.iter().map(|&x| (x, t.clone())).chain(ys.iter().map(|&y| (y, -t.clone()))).collect();
    for (gi, (v, target)) in gens.iter().enumerate() {
        let ve = HeckeElement::v(h, *v);
        let rhs = ve.scale(target).sub(&sum_xy.commutator(&ve)?)?;
        for (m, c) in rhs.terms() {
            rows.entry((gi, m.clone())).or_insert_with(|| vec![Scalar::zero(); ncols + 1])[ncols] = c.clone();
        }
        let cols: Vec<HeckeElement> = unknowns
            .par_iter()
            .map(|u| {
                let b: BaseElem = [(u.clone(), Scalar::one())].into_iter().collect();
                HeckeElement::base(h, &b).commutator(&ve).expect("same algebra")
            })
            .collect();
        for (j, e) in cols.iter().enumerate() {
            for (m, c) in e.terms() {
                rows.entry((gi, m.clone())).or_insert_with(|| vec![Scalar::zero(); ncols + 1])[j] = c.clone();
            }
        }
    }
    if rows.is_empty() {
        return Ok(Some(BaseElem::new()));
    }
    let (a, b): (Vec<Vec<Scalar>>, Vec<Scalar>) = rows
        .into_values()
        .map(|mut r| {
            let last = r.pop().expect("augmented column");
            (r, last)
        })
        .unzip();
    Ok(Matrix::from_rows(a).solve(&b).map(|sol| unknowns.into_iter().zip(sol).filter(|(_, v)| !v.is_zero()).collect()))
}

/// `M(Y) = H ⊗_{H⁺} Y` truncated at degree `top`, with basis `x^α ⊗ w`.
pub fn verma_build(h: &Arc<HeckeAlgebra>, ymod: &BaseModule, top: usize) -> Result<GradedModule> {
    ymod.validate(h)?;
    if !h.is_cherednik_type() {
        return Err(Error::Invalid("Verma modules need V = h* ⊕ h with κ vanishing on h* × h* and h × h".into()));
    }
    let xs = h.x_indices();
    let ys = h.y_indices();
    let d = xs.len();
    let ydim = ymod.dim();
    let monos: Vec<Vec<Vec<u32>>> = (0..=top).map(|n| degree_basis(d, n as u32).into_iter().map(|m| m.0).collect()).collect();
    let dims: Vec<usize> = monos.iter().map(|m| m.len() * ydim).collect();
    let (x, peel) = raising_ops(d, &dims, &monos, ydim);
    let (t, c) = euler_base_element(h)?;

    let x_word = |alpha: &[u32]| -> Vec<Letter> {
        word_of(&Monomial(alpha.to_vec())).into_iter().map(|i| Letter::V(xs[i])).collect()
    };
    // applies a normal-form element (acting on x^α ⊗ Y) and returns the block column
    let project = |e: &HeckeElement, n_target: usize, out: &mut Matrix, a: usize| -> Result<()> {
        let index = &monos[n_target];
        for (m, coef) in e.terms() {
            if ys.iter().any(|&y| m.v[y] > 0) {
                continue;
            }
            let gamma: Vec<u32> = xs.iter().map(|&x| m.v[x]).collect();
            let pos = index
                .iter()
                .position(|g| *g == gamma)
                .ok_or_else(|| Error::Invalid("normal form left the expected degree".into()))?;
            let act = ymod.act(&m.b);
            for w in 0..ydim {
                for w2 in 0..ydim {
                    if !act[(w2, w)].is_zero() {
                        out[(pos * ydim + w2, a * ydim + w)] += coef * &act[(w2, w)];
                    }
                }
            }
        }
        Ok(())
    };

    let mut y_ops = Vec::new();
    for &yj in &ys {
        let blocks = (0..=top)
            .into_par_iter()
            .map(|n| {
                if n == 0 {
                    return Ok(Some(Matrix::zeros(0, dims[0])));
                }
                let mut m = Matrix::zeros(dims[n - 1], dims[n]);
                for (a, alpha) in monos[n].iter().enumerate() {
                    let mut w = vec![Letter::V(yj)];
                    w.extend(x_word(alpha));
                    project(&HeckeElement::from_word(h, &w), n - 1, &mut m, a)?;
                }
                Ok(Some(m))
            })
            .collect::<Result<Vec<_>>>()?;
        y_ops.push(GradedOp { shift: -1, blocks });
    }
    let c_elem = HeckeElement::base(h, &c);
    let c_blocks = (0..=top)
        .into_par_iter()
        .map(|n| {
            let mut m = Matrix::zeros(dims[n], dims[n]);
            for (a, alpha) in monos[n].iter().enumerate() {
                let e = c_elem.mul(&HeckeElement::from_word(h, &x_word(alpha)))?;
                project(&e, n, &mut m, a)?;
            }
            Ok(Some(m))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = |n: usize| -> Vec<String> {
        monos[n]
            .iter()
            .flat_map(|alpha| {
                let mut v = vec![0u32; h.dim_v()];
                for (i, &e) in alpha.iter().enumerate() {
                    v[xs[i]] = e;
                }
                let name = h.mono_label(&NMono { v, b: h.base_one() });
                (0..ydim).map(move |w| if ydim == 1 { name.clone() } else { format!("{name}⊗w{}", w + 1) })
            })
            .collect()
    };
    Ok(GradedModule {
        top,
        basis: (0..=top).map(labels).collect(),
        dims,
        peel,
        x,
        y: y_ops,
        c_op: GradedOp { shift: 0, blocks: c_blocks },
        t,
    })
}
