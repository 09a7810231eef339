//! Graded modules in category O: Verma modules, the Dunkl polynomial
//! representation, Euler gradings, Shapovalov forms and singular vectors.

pub mod character;
pub mod gl;
pub mod orthogonal;
pub mod verma;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, Matrix, Scalar};

pub use character::{character_series, complete_homogeneous, CharacterSeries};
pub use gl::{beta_to_distribution, gl_criterion, gl_criterion_report, CriterionReport, DistributionData};
pub use orthogonal::{dunkl_module, harmonic_dim, lc_structure, lowest_weight, sl2_triple_check};
pub use verma::{verma_build, BaseModule};

/// Operator of fixed degree shift on a graded module truncated at `top`.
///
/// `blocks[n]` maps component `n` to component `n + shift`; it is `None`
/// when the target lies above the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedOp {
    pub shift: i32,
    pub blocks: Vec<Option<Matrix>>,
}

impl GradedOp {
    pub fn identity(dims: &[usize]) -> Self {
        GradedOp { shift: 0, blocks: dims.iter().map(|&d| Some(Matrix::identity(d))).collect() }
    }

    pub fn scalar(dims: &[usize], c: &Scalar) -> Self {
        GradedOp { shift: 0, blocks: dims.iter().map(|&d| Some(Matrix::identity(d).scale(c))).collect() }
    }

    pub fn zero(dims: &[usize], shift: i32) -> Self {
        let top = dims.len() as i32 - 1;
        GradedOp {
            shift,
            blocks: (0..dims.len())
                .map(|n| {
                    let m = n as i32 + shift;
                    if m > top {
                        None
                    } else if m < 0 {
                        Some(Matrix::zeros(0, dims[n]))
                    } else {
                        Some(Matrix::zeros(dims[m as usize], dims[n]))
                    }
                })
                .collect(),
        }
    }

    pub fn block(&self, n: usize) -> Option<&Matrix> {
        self.blocks.get(n).and_then(Option::as_ref)
    }

    /// Dimension of component `n` when a block starting there is stored.
    fn col_dim(&self, n: usize) -> Option<usize> {
        self.block(n).map(Matrix::cols)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedOp) -> GradedOp {
        let blocks = (0..other.blocks.len())
            .map(|n| {
                let inner = other.block(n)?;
                let m = n as i32 + other.shift;
                if m < 0 {
                    // passes through the zero space below degree 0
                    let target = m + self.shift;
                    let rows = if target < 0 { 0 } else { self.col_dim(target as usize).or_else(|| other.col_dim(target as usize))? };
                    return Some(Matrix::zeros(rows, inner.cols()));
                }
                let outer = self.block(m as usize)?;
                Some(outer * inner)
            })
            .collect();
        GradedOp { shift: self.shift + other.shift, blocks }
    }

    pub fn add(&self, other: &GradedOp) -> GradedOp {
        assert_eq!(self.shift, other.shift, "adding operators of different degree");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            })
            .collect();
        GradedOp { shift: self.shift, blocks }
    }

    pub fn scale(&self, c: &Scalar) -> GradedOp {
        GradedOp { shift: self.shift, blocks: self.blocks.iter().map(|b| b.as_ref().map(|m| m.scale(c))).collect() }
    }

    pub fn sub(&self, other: &GradedOp) -> GradedOp {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn commutator(&self, other: &GradedOp) -> GradedOp {
        self.compose(other).sub(&other.compose(self))
    }

    /// Degrees up to `max_degree` where the two operators differ (both defined).
    pub fn differs_at(&self, other: &GradedOp, max_degree: usize) -> Option<usize> {
        (0..=max_degree.min(self.blocks.len().saturating_sub(1))).find(|&n| match (self.block(n), other.block(n)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
    }
}

/// A truncated `ℤ≥0`-graded module with raising operators `x_i` and
/// lowering operators `y_i` given by exact matrices on each component.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub top: usize,
    pub dims: Vec<usize>,
    /// Human-readable basis labels per component.
    pub basis: Vec<Vec<String>>,
    /// `peel[n][b] = (i, b')`: basis vector `b` of degree `n` is `x_i` applied
    /// to basis vector `b'` of degree `n - 1` (empty for `n = 0`).
    pub peel: Vec<Vec<(usize, usize)>>,
    pub x: Vec<GradedOp>,
    pub y: Vec<GradedOp>,
    /// The degree-zero part `c` of the Euler element.
    pub c_op: GradedOp,
    /// Scale `t` of the pairing term.
    pub t: Scalar,
}

impl GradedModule {
    pub fn rank_h(&self) -> usize {
        self.x.len()
    }

    /// `𝐡 = c + sum_i x_i y_i + t·d/2`.
    pub fn euler(&self) -> GradedOp {
        let d = self.rank_h();
        let mut h = self.c_op.add(&GradedOp::scalar(&self.dims, &(&self.t * Scalar::new(d.into(), 2.into()))));
        for i in 0..d {
            h = h.add(&self.x[i].compose(&self.y[i]));
        }
        h
    }

    /// Joint kernel of all `y_i` on component `n`.
    pub fn singular_vectors(&self, n: usize) -> Vec<Vec<Scalar>> {
        if n == 0 || n > self.top {
            return Vec::new();
        }
        let blocks: Vec<&Matrix> = self.y.iter().map(|y| y.block(n).expect("lowering is always defined")).collect();
        Matrix::vstack(&blocks).nullspace()
    }

    /// Gram matrix of the contravariant form with `y_i* = x_i`, normalized by
    /// `(v_0, v_0) = 1` on a degree-zero vector and the identity Gram on `Y`.
    pub fn gram(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::identity(self.dims[0]);
        }
        let prev = self.gram(n - 1);
        let dim = self.dims[n];
        let mut g = Matrix::zeros(dim, dim);
        // (x_i v', w) = (v', y_i w)
        for (a, &(i, a_prev)) in self.peel[n].iter().enumerate() {
            let yi = self.y[i].block(n).expect("lowering");
            for b in 0..dim {
                let mut s = Scalar::zero();
                for c in 0..self.dims[n - 1] {
                    if !yi[(c, b)].is_zero() {
                        s += &prev[(a_prev, c)] * &yi[(c, b)];
                    }
                }
                g[(a, b)] = s;
            }
        }
        g
    }

    pub fn shapovalov(&self, n: usize) -> ShapovalovReport {
        let g = self.gram(n);
        let rank = g.rank();
        ShapovalovReport {
            degree: n,
            dim: self.dims[n],
            rank,
            kernel: self.dims[n] - rank,
            symmetric: g == g.transpose(),
            gram: g.to_rows().iter().map(|r| r.iter().map(fmt_scalar).collect()).collect(),
        }
    }

    /// Shapovalov reports for degrees `0..=top`, computed in parallel.
    pub fn shapovalov_all(&self) -> Vec<ShapovalovReport> {
        (0..=self.top).into_par_iter().map(|n| self.shapovalov(n)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapovalovReport {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub kernel: usize,
    pub symmetric: bool,
    pub gram: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub holds: bool,
    /// `(identity, index, degree)` of the first failure.
    pub failure: Option<(String, usize, usize)>,
    /// Eigenvalue of `𝐡` on each component when it acts by a scalar.
    pub eigenvalues: Vec<Option<String>>,
}

/// Checks `[𝐡, x_i] = t x_i` and `[𝐡, y_i] = -t y_i` on degrees `≤ max_degree`.
pub fn euler_check(m: &GradedModule, max_degree: usize) -> Result<EulerReport> {
    if max_degree + 1 > m.top {
        return Err(Error::Invalid(format!("module truncated at {}; need degree {}", m.top, max_degree + 1)));
    }
    let h = m.euler();
    let mut failure = None;
    for i in 0..m.rank_h() {
        let lhs = h.commutator(&m.x[i]);
        if let Some(n) = lhs.differs_at(&m.x[i].scale(&m.t), max_degree) {
            failure.get_or_insert(("[h,x]".to_string(), i, n));
        }
        let lhs = h.commutator(&m.y[i]);
        if let Some(n) = lhs.differs_at(&m.y[i].scale(&-m.t.clone()), max_degree) {
            failure.get_or_insert(("[h,y]".to_string(), i, n));
        }
    }
    let eigenvalues = (0..=max_degree)
        .map(|n| {
            let b = h.block(n)?;
            let c = if b.rows() == 0 { return None } else { b[(0, 0)].clone() };
            (b == &Matrix::identity(b.rows()).scale(&c)).then(|| fmt_scalar(&c))
        })
        .collect();
    Ok(EulerReport { holds: failure.is_none(), failure, eigenvalues })
}

/// Builds the `GradedOp` list for multiplication by coordinates on a monomial
/// basis, given `index[n]` mapping exponent vectors to positions.
pub(crate) fn raising_ops(
    d: usize,
    dims: &[usize],
    monos: &[Vec<Vec<u32>>],
    ydim: usize,
) -> (Vec<GradedOp>, Vec<Vec<(usize, usize)>>) {
    use std::collections::HashMap;
    let top = dims.len() - 1;
    let index: Vec<HashMap<&Vec<u32>, usize>> =
        monos.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let mut ops = Vec::new();
    for i in 0..d {
        let blocks = (0..=top)
            .map(|n| {
                if n == top {
                    return None;
                }
                let mut m = Matrix::zeros(dims[n + 1], dims[n]);
                for (a, mono) in monos[n].iter().enumerate() {
                    let mut up = mono.clone();
                    up[i] += 1;
                    let b = index[n + 1][&up];
                    for w in 0..ydim {
                        m[(b * ydim + w, a * ydim + w)] = Scalar::one();
                    }
                }
                Some(m)
            })
            .collect();
        ops.push(GradedOp { shift: 1, blocks });
    }
    let mut peel = vec![Vec::new()];
    for n in 1..=top {
        let mut p = Vec::new();
        for mono in &monos[n] {
            let i = mono.iter().position(|&e| e > 0).expect("positive degree");
            let mut down = mono.clone();
            down[i] -= 1;
            let a = index[n - 1][&down];
            for w in 0..ydim {
                p.push((i, a * ydim + w));
            }
        }
        peel.push(p);
    }
    (ops, peel)
}
