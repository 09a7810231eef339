use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{sparse, unit, LieAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// `B(a, b) = Tr(ad a ∘ ad b)` on basis pairs.
pub fn killing_form(g: &LieAlgebra) -> Matrix {
    let d = g.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| g.ad(i)).collect();
    let mut b = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = (&ads[i] * &ads[j]).trace();
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub is_lie_algebra: bool,
    pub dim: usize,
    pub killing_rank: Option<usize>,
    pub semisimple: bool,
    /// First basis triple on which the Jacobi identity fails.
    pub witness: Option<[String; 3]>,
}

/// Checks whether `k ⊕ E` with bracket `[k,k]` from `k`, `[ξ, e] = ρ(ξ) e` and
/// `[e_i, e_j] = κ(e_i, e_j) ∈ k` is a Lie algebra.
///
/// `kappa` lists `(i, j, value)` with `i < j`; omitted pairs are zero.
pub fn lie_closure_check(
    k: &Arc<LieAlgebra>,
    rep: &[Matrix],
    kappa: &[(usize, usize, Vec<Scalar>)],
) -> Result<ClosureReport> {
    let dk = k.dim();
    if rep.len() != dk {
        return Err(Error::Invalid("need one representation matrix per basis element".into()));
    }
    let de = rep.first().map_or(0, Matrix::rows);
    for a in 0..dk {
        for b in 0..dk {
            let lhs = rep[a].commutator(&rep[b]);
            let mut rhs = Matrix::zeros(de, de);
            for (c, v) in k.bracket_basis(a, b) {
                rhs = &rhs + &rep[*c].scale(v);
            }
            if lhs != rhs {
                return Err(Error::Invalid(format!("E is not a representation at ({}, {})", k.label(a), k.label(b))));
            }
        }
    }
    let mut kap = vec![vec![vec![Scalar::zero(); dk]; de]; de];
    for (i, j, v) in kappa {
        if i >= j || *j >= de || v.len() != dk {
            return Err(Error::Invalid("kappa entries must be (i<j, value in k)".into()));
        }
        kap[*i][*j] = v.clone();
        kap[*j][*i] = v.iter().map(|x| -x).collect();
    }
    // ξ·κ(e_i, e_j) = κ(ξ e_i, e_j) + κ(e_i, ξ e_j)
    for a in 0..dk {
        for i in 0..de {
            for j in i + 1..de {
                let lhs = k.bracket(&unit(dk, a), &kap[i][j]);
                let mut rhs = vec![Scalar::zero(); dk];
                for l in 0..de {
                    let ri = &rep[a][(l, i)];
                    let rj = &rep[a][(l, j)];
                    for c in 0..dk {
                        if !ri.is_zero() {
                            rhs[c] += ri * &kap[l][j][c];
                        }
                        if !rj.is_zero() {
                            rhs[c] += rj * &kap[i][l][c];
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::NotEquivariant(format!("basis element {} on pair ({i}, {j})", k.label(a))));
                }
            }
        }
    }
    let dim = dk + de;
    let mut br = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dk {
        for b in 0..dk {
            br[a][b] = k.bracket_basis(a, b).clone();
        }
        for j in 0..de {
            let col: Vec<Scalar> = (0..de).map(|i| rep[a][(i, j)].clone()).collect();
            let act: Vec<(usize, Scalar)> = sparse(&col).into_iter().map(|(i, c)| (dk + i, c)).collect();
            br[dk + j][a] = act.iter().map(|(i, c)| (*i, -c)).collect();
            br[a][dk + j] = act;
        }
    }
    for i in 0..de {
        for j in 0..de {
            br[dk + i][dk + j] = sparse(&kap[i][j]);
        }
    }
    let mut labels: Vec<String> = k.labels().to_vec();
    labels.extend((0..de).map(|i| format!("v{}", i + 1)));
    if let Some(w) = jacobi_witness(&br) {
        return Ok(ClosureReport {
            is_lie_algebra: false,
            dim,
            killing_rank: None,
            semisimple: false,
            witness: Some([labels[w.0].clone(), labels[w.1].clone(), labels[w.2].clone()]),
        });
    }
    let g = LieAlgebra::from_structure_constants(labels, br)?;
    let rank = killing_form(&g).rank();
    Ok(ClosureReport { is_lie_algebra: true, dim, killing_rank: Some(rank), semisimple: rank == dim, witness: None })
}

fn jacobi_witness(br: &[Vec<Vec<(usize, Scalar)>>]) -> Option<(usize, usize, usize)> {
    let d = br.len();
    let bracket = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                for (k, c) in &br[i][j] {
                    out[*k] += x * y * c;
                }
            }
        }
        out
    };
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (ei, ej, ek) = (unit(d, i), unit(d, j), unit(d, k));
                let s1 = bracket(&ei, &bracket(&ej, &ek));
                let s2 = bracket(&ej, &bracket(&ek, &ei));
                let s3 = bracket(&ek, &bracket(&ei, &ej));
                if s1.iter().zip(&s2).zip(&s3).any(|((a, b), c)| !(a + b + c).is_zero()) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Representation of `gl_n` on `V = h* ⊕ h` in the order `x_1..x_n, y_1..y_n`:
/// `E_ab y_c = δ_bc y_a`, `E_ab x_c = -δ_ac x_b`.
pub fn gl_rep_on_hstar_h(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut m = Matrix::zeros(2 * n, 2 * n);
            m[(n + a, n + b)] = Scalar::one();
            m[(b, a)] = -Scalar::one();
            out.push(m);
        }
    }
    out
}

/// An element `(y, x, A)` of `h ⊕ h* ⊕ gl_n`.
#[derive(Clone, PartialEq)]
struct Triple {
    y: Vec<Scalar>,
    x: Vec<Scalar>,
    a: Matrix,
}

fn r1(x: &[Scalar], y: &[Scalar]) -> Matrix {
    let n = x.len();
    let dot: Scalar = x.iter().zip(y).map(|(p, q)| p * q).sum();
    let mut m = Matrix::identity(n).scale(&dot);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += &y[i] * &x[j];
        }
    }
    m
}

fn triple_bracket(u: &Triple, v: &Triple) -> Triple {
    let n = u.y.len();
    let sub = |p: Vec<Scalar>, q: Vec<Scalar>| p.into_iter().zip(q).map(|(a, b)| a - b).collect::<Vec<_>>();
    let xa = |x: &[Scalar], a: &Matrix| -> Vec<Scalar> { (0..n).map(|j| (0..n).map(|i| &x[i] * &a[(i, j)]).sum()).collect() };
    Triple {
        y: sub(u.a.apply(&v.y), v.a.apply(&u.y)),
        x: sub(xa(&u.x, &v.a), xa(&v.x, &u.a)),
        a: &(&u.a.commutator(&v.a) + &r1(&v.x, &u.y)) - &r1(&u.x, &v.y),
    }
}

fn phi(t: &Triple, x_sign: &Scalar) -> Matrix {
    let n = t.y.len();
    let mu = t.a.trace() / Scalar::from_integer((n as i64).into());
    let np1 = Scalar::from_integer(((n + 1) as i64).into());
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = t.a[(i, j)].clone();
        }
        // traceless part plus μ/(n+1) on the diagonal
        m[(i, i)] = &m[(i, i)] - &mu + &mu / &np1;
        m[(i, n)] = t.y[i].clone();
        m[(n, i)] = x_sign * &t.x[i];
    }
    m[(n, n)] = -(&mu * Scalar::from_integer((n as i64).into())) / &np1;
    m
}

fn domain_basis(n: usize) -> Vec<(String, Triple)> {
    let z = || vec![Scalar::zero(); n];
    let mut out = Vec::new();
    for i in 0..n {
        out.push((format!("y{}", i + 1), Triple { y: unit(n, i), x: z(), a: Matrix::zeros(n, n) }));
    }
    for i in 0..n {
        out.push((format!("x{}", i + 1), Triple { y: z(), x: unit(n, i), a: Matrix::zeros(n, n) }));
    }
    for i in 0..n {
        for j in 0..n {
            out.push((format!("E{}{}", i + 1, j + 1), Triple { y: z(), x: z(), a: Matrix::unit(n, i, j) }));
        }
    }
    out
}

/// First basis pair `(u, v)` with `φ([u,v]) ≠ [φ(u), φ(v)]`, where the
/// `h*` block of `φ` is scaled by `x_sign`.
pub fn phi_witness(n: usize, x_sign: &Scalar) -> Option<(String, String)> {
    let basis = domain_basis(n);
    for (lu, u) in &basis {
        for (lv, v) in &basis {
            let lhs = phi(&triple_bracket(u, v), x_sign);
            let rhs = phi(u, x_sign).commutator(&phi(v, x_sign));
            if lhs != rhs {
                return Some((lu.clone(), lv.clone()));
            }
        }
    }
    None
}

/// Verifies that the block map `φ: h ⊕ h* ⊕ gl_n → sl_{n+1}` is a Lie algebra
/// isomorphism: bracket-preserving on all basis pairs and bijective.
pub fn phi_iso_check(n: usize) -> bool {
    let one = Scalar::one();
    if phi_witness(n, &one).is_some() {
        return false;
    }
    let d = n + 1;
    let rows: Vec<Vec<Scalar>> = domain_basis(n)
        .iter()
        .map(|(_, t)| {
            let m = phi(t, &one);
            (0..d * d).map(|k| m[(k / d, k % d)].clone()).collect()
        })
        .collect();
    let rank = Matrix::from_rows(rows).rank();
    rank == d * d - 1 && domain_basis(n).len() == rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn killing_sl2() {
        let g = LieAlgebra::sl(2);
        let b = killing_form(&g);
        let (f, h, e) = (0, 1, 2);
        assert_eq!(b[(h, h)], qi(8));
        assert_eq!(b[(e, f)], qi(4));
        assert_eq!(b[(f, e)], qi(4));
        assert_eq!(b[(h, e)], qi(0));
        assert_eq!(b[(e, e)], qi(0));
        assert!(killing_form(&LieAlgebra::gl(1)).is_zero());
    }

    #[test]
    fn killing_invariance() {
        for g in [LieAlgebra::sl(3), LieAlgebra::sp(2), LieAlgebra::so(4), LieAlgebra::gl(2)] {
            let b = killing_form(&g);
            let d = g.dim();
            let form = |u: &[Scalar], v: &[Scalar]| -> Scalar {
                (0..d).map(|i| (0..d).map(|j| &u[i] * &b[(i, j)] * &v[j]).sum::<Scalar>()).sum()
            };
            for a in 0..d {
                for bb in 0..d {
                    for c in 0..d {
                        let ab = g.bracket(&unit(d, a), &unit(d, bb));
                        let ac = g.bracket(&unit(d, a), &unit(d, c));
                        assert_eq!(form(&ab, &unit(d, c)), -form(&unit(d, bb), &ac));
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_extension_not_semisimple() {
        let k = LieAlgebra::gl(1);
        let rep = vec![Matrix::zeros(2, 2)];
        let r = lie_closure_check(&k, &rep, &[]).unwrap();
        assert!(r.is_lie_algebra);
        assert!(!r.semisimple);
    }

    #[test]
    fn phi_small() {
        assert!(phi_iso_check(1));
        assert!(phi_iso_check(2));
        assert!(phi_witness(2, &qi(-1)).is_some());
    }

    #[test]
    fn equivariance_enforced() {
        let k = LieAlgebra::gl(1);
        let rep = vec![Matrix::from_i64(&[&[1, 0], &[0, 1]])];
        // [v1, v2] = E11 is not equivariant: E11 acts on ∧²E by 2.
        let err = lie_closure_check(&k, &rep, &[(0, 1, vec![qi(1)])]).unwrap_err();
        assert!(matches!(err, Error::NotEquivariant(_)));
    }
}
