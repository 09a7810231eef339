use std::sync::Arc;

use hecke::dunkl::{
    commutator_test, degree_basis, dunkl_apply, dunkl_rep_matrices, orthogonal_integrand, sphere_moment, DunklParams,
    MomentTable, ReflectionDatum,
};
use hecke::exact::{double_factorial, q, qi, Matrix, Monomial, Scalar, SparsePoly};
use hecke::hecke::group::dihedral6_on_h;
use hecke::hecke::FiniteGroup;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Gaussian oracle: `E[x^α] / E[|x|^{|α|}]` for a standard Gaussian in `ℝ^d`,
/// where the radial moment is expanded multinomially from one-dimensional moments.
fn gaussian_oracle(alpha: &[u32], d: usize) -> Scalar {
    let g1 = |k: u32| -> BigInt { if k % 2 == 1 { BigInt::zero() } else { double_factorial(k as i64 - 1) } };
    let num: BigInt = alpha.iter().map(|&a| g1(a)).product();
    let total: u32 = alpha.iter().sum();
    if total % 2 == 1 {
        return Scalar::zero();
    }
    let m = total / 2;
    // E[(sum x_i^2)^m] = sum over compositions of m into d parts
    fn comps(d: usize, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == d {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=m {
            cur.push(e);
            comps(d, m - e, cur, out);
            cur.pop();
        }
    }
    let mut cs = Vec::new();
    comps(d, m, &mut Vec::new(), &mut cs);
    let fact = |n: u32| -> BigInt { (1..=n as u64).map(BigInt::from).product() };
    let mut den = BigInt::zero();
    for c in cs {
        let multinom = fact(m) / c.iter().map(|&e| fact(e)).product::<BigInt>();
        den += multinom * c.iter().map(|&e| g1(2 * e)).product::<BigInt>();
    }
    Scalar::new(num, den)
}

#[test]
fn moments_match_gaussian_oracle() {
    for d in 1..=4 {
        for n in 0..=6u32 {
            for m in degree_basis(d, n) {
                assert_eq!(sphere_moment(&m.0, d), gaussian_oracle(&m.0, d), "α = {:?}, d = {d}", m.0);
            }
        }
    }
    assert_eq!(sphere_moment(&[4, 0, 0], 3), q(3, 15));
}

#[test]
fn moments_sum_to_lower_order() {
    // sum_i E[v^{α + 2 e_i}] = E[v^α] because |v|^2 = 1
    let d = 3;
    for n in 0..=4u32 {
        for m in degree_basis(d, n) {
            let s: Scalar = (0..d)
                .map(|i| {
                    let mut a = m.0.clone();
                    a[i] += 2;
                    sphere_moment(&a, d)
                })
                .sum();
            assert_eq!(s, sphere_moment(&m.0, d));
        }
    }
}

#[test]
fn orthogonal_commute() {
    let r = commutator_test(&DunklParams::orthogonal(qi(1), 2, qi(1)), 4).unwrap();
    assert!(r.zero, "{r:?}");
    let r = commutator_test(&DunklParams::orthogonal(qi(1), 3, q(-1, 2)), 4).unwrap();
    assert!(r.zero, "{r:?}");
}

#[test]
fn corrupted_moment_detected() {
    let table = MomentTable::new(3).with_override(vec![4, 0, 0], q(1, 4));
    let p = DunklParams::orthogonal_with(qi(1), q(-1, 2), Arc::new(table));
    let r = commutator_test(&p, 4).unwrap();
    assert!(!r.zero);
    assert!(r.witness.is_some());
}

#[test]
fn dihedral_commute() {
    let g = FiniteGroup::on_h(&dihedral6_on_h()).unwrap();
    let mut c = vec![qi(0); 6];
    for r in g.reflections() {
        c[r] = q(5, 3);
    }
    let p = DunklParams::finite(qi(2), ReflectionDatum::from_group(&g, &c).unwrap()).unwrap();
    assert!(commutator_test(&p, 5).unwrap().zero);
}

#[test]
fn degree_one_matrices_agree_with_apply() {
    let p = DunklParams::orthogonal(q(3, 2), 2, q(2, 5));
    let m = dunkl_rep_matrices(&p, 1).unwrap();
    for i in 0..2 {
        for (col, mono) in m.source.iter().enumerate() {
            let f = SparsePoly::monomial(p.vars(), mono.clone(), Scalar::one());
            let mut y = vec![qi(0); 2];
            y[i] = qi(1);
            let direct = dunkl_apply(&p, &y, &f).unwrap();
            assert_eq!(m.d[i][(0, col)], direct.constant_term());
        }
    }
    // D_i u_j = (t + 2k/d) δ_ij on linear functions
    assert_eq!(m.d[0][(0, 0)], q(3, 2) + q(2, 5));
    assert_eq!(m.d[0][(0, 1)], qi(0));
    let z = dunkl_rep_matrices(&p, 0).unwrap();
    assert!(z.d.iter().all(|x| x.rows() == 0));
    for n in 0..4 {
        let m = dunkl_rep_matrices(&p, n).unwrap();
        for x in &m.x {
            assert_eq!(x.rank(), x.cols());
        }
    }
}

#[test]
fn integrand_is_even_in_v() {
    let d = 3;
    for n in 1..=3 {
        for mono in degree_basis(d, n) {
            for i in 0..d {
                let q = orthogonal_integrand(d, &mono, i).unwrap();
                let mut images: Vec<SparsePoly> = (0..d).map(|j| SparsePoly::var(q.vars(), j)).collect();
                images.extend((0..d).map(|j| SparsePoly::var(q.vars(), d + j).scale(&qi(-1))));
                assert_eq!(q.substitute(&images), q);
            }
        }
    }
}

fn signed_permutations(d: usize) -> Vec<Matrix> {
    let mut perms = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &perms {
            for j in 0..d {
                if !p.contains(&j) {
                    let mut q = p.clone();
                    q.push(j);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1u32 << d) {
            let mut m = Matrix::zeros(d, d);
            for (i, &j) in p.iter().enumerate() {
                m[(i, j)] = if signs >> i & 1 == 1 { qi(-1) } else { qi(1) };
            }
            out.push(m);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogeneous_output(coeffs in prop::collection::vec(-5i64..5, 10), k in -3i64..3, i in 0usize..3) {
        let p = DunklParams::orthogonal(qi(1), 3, q(k, 2));
        let basis = degree_basis(3, 3);
        let mut f = SparsePoly::zero(p.vars());
        for (m, c) in basis.iter().zip(&coeffs) {
            f.add_term(m.clone(), qi(*c));
        }
        let out = p.apply_basis(i, &f).unwrap();
        prop_assert!(out.is_zero() || (out.is_homogeneous() && out.total_degree() == Some(2)));
    }

    #[test]
    fn orthogonal_equivariance(gi in 0usize..48, e in prop::collection::vec(0u32..3, 3), i in 0usize..3) {
        let p = DunklParams::orthogonal(qi(1), 3, q(-1, 3));
        let g = &signed_permutations(3)[gi];
        let ginv = g.inverse().unwrap();
        let f = SparsePoly::monomial(p.vars(), Monomial(e), Scalar::one());
        // (f ∘ g^{-1})(u) = f(g^{-1} u)
        let compose = |h: &SparsePoly| {
            let images: Vec<SparsePoly> = (0..3).map(|r| SparsePoly::linear(p.vars(), ginv.row(r))).collect();
            h.substitute(&images)
        };
        let mut y = vec![qi(0); 3];
        y[i] = qi(1);
        let gy = g.apply(&y);
        let lhs = dunkl_apply(&p, &gy, &compose(&f)).unwrap();
        let rhs = compose(&dunkl_apply(&p, &y, &f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn one_is_killed() {
    let p = DunklParams::orthogonal(qi(1), 2, qi(3));
    let one = SparsePoly::one(p.vars());
    assert!(p.apply_basis(1, &one).unwrap().is_zero());
}
