use std::collections::BTreeMap;

use hecke::exact::{fmt_scalar, parse_scalar, qi, Monomial, Scalar, SparsePoly};
use hecke::genfun::*;
use hecke::lie::closure::{lie_closure_check, phi_iso_check};
use hecke::lie::LieAlgebra;
use proptest::prelude::*;
use serde::Deserialize;

#[derive(Deserialize)]
struct GammaGolden {
    symbolic: BTreeMap<usize, String>,
    enveloping: BTreeMap<usize, Option<String>>,
}

fn golden() -> GammaGolden {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/sl2_gamma.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn sl2_gamma_matches_golden() {
    let g = golden();
    for (k, want) in &g.symbolic {
        assert_eq!(sl2_gamma_symbolic(*k).map(|v| fmt_scalar(&v)).as_ref(), Some(want), "k = {k}");
    }
    for (k, want) in &g.enveloping {
        assert_eq!(sl2_gamma(*k).map(|v| fmt_scalar(&v)), *want, "k = {k}");
    }
}

#[test]
fn symbolic_gamma_reproduces_symmetrized_coefficient() {
    let g = LieAlgebra::sp(1);
    for (k, s) in golden().symbolic {
        let gamma = parse_scalar(&s).unwrap();
        let ell = ell_coefficients(1, 2 * k);
        let lhs = hecke::lie::env::symmetrize(&g, &ell[2 * k].table[0][1]);
        assert_eq!(lhs, sl2_sym_casimir_power(k).scale(&gamma));
    }
}

/// `(1 - τa)^{-2}` for `gl_1`: the product of the two geometric series.
fn gl1_oracle(m: usize) -> Vec<Scalar> {
    let geo: Vec<Scalar> = vec![qi(1); m + 1];
    (0..=m).map(|k| (0..=k).map(|j| &geo[j] * &geo[k - j]).sum()).collect()
}

#[test]
fn gl1_matches_geometric_product() {
    let r = r_coefficients(1, 6);
    let g = LieAlgebra::gl(1);
    for (m, c) in gl1_oracle(6).into_iter().enumerate() {
        assert_eq!(r[m].table[0][0], SparsePoly::monomial(g.coord_vars(), Monomial(vec![m as u32]), c));
    }
}

#[test]
fn r0_r1_goldens() {
    for n in 2..=3 {
        let g = LieAlgebra::gl(n);
        let r = r_coefficients(n, 1);
        for i in 0..n {
            for j in 0..n {
                let delta = qi(i64::from(i == j));
                assert_eq!(r[0].table[i][j].as_constant(), Some(delta.clone()));
                let lin = g.element_of_linear(&r[1].table[i][j]);
                for a in 0..n {
                    for b in 0..n {
                        let want = qi(i64::from(a == j && b == i)) + if a == b { delta.clone() } else { qi(0) };
                        assert_eq!(lin[a * n + b], want);
                    }
                }
            }
        }
    }
}

#[test]
fn ell_odd_vanish_and_skew() {
    for n in 1..=2 {
        for c in ell_coefficients(n, 4) {
            for a in 0..2 * n {
                for b in 0..2 * n {
                    assert!(c.m % 2 == 0 || c.table[a][b].is_zero());
                    assert!((&c.table[a][b] + &c.table[b][a]).is_zero());
                }
            }
        }
    }
}

#[test]
fn phi_isomorphism_and_closure() {
    for n in 1..=3 {
        assert!(phi_iso_check(n), "n = {n}");
        let (g, rep, kappa) = tau_closure_input(n, false);
        let r = lie_closure_check(&g, &rep, &kappa).unwrap();
        assert!(r.is_lie_algebra && r.semisimple, "{r:?}");
        assert_eq!(r.dim, (n + 1) * (n + 1) - 1);
    }
    let (g, rep, kappa) = tau_closure_input(2, true);
    let r = lie_closure_check(&g, &rep, &kappa).unwrap();
    assert!(!r.is_lie_algebra);
    assert!(r.witness.is_some());
}

#[test]
fn det_inverse_order_two() {
    for n in 1..=3 {
        let g = LieAlgebra::gl(n);
        let s = det_inverse_expansion(&g, 2).unwrap();
        let a = g.generic_matrix().unwrap();
        let tr = (0..n).fold(SparsePoly::zero(g.coord_vars()), |acc, i| &acc + &a[i][i]);
        let mut tr2 = SparsePoly::zero(g.coord_vars());
        for i in 0..n {
            for j in 0..n {
                tr2 = &tr2 + &(&a[i][j] * &a[j][i]);
            }
        }
        let half = Scalar::new(1.into(), 2.into());
        assert_eq!(s.coeff(2), &(&tr2.scale(&half) + &(&tr * &tr).scale(&half)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kappa_is_linear_in_beta(b0 in -4i64..4, b1 in -4i64..4, s in -3i64..4) {
        let g = LieAlgebra::gl(2);
        let k1 = assemble_kappa(&g, &BetaParameter(vec![qi(b0), qi(b1)])).unwrap();
        let ks = assemble_kappa(&g, &BetaParameter(vec![qi(b0 * s), qi(b1 * s)])).unwrap();
        let scaled: Vec<_> = k1.entries.iter().map(|(a, b, v)| (*a, *b, v.scale(&qi(s)))).filter(|e| !e.2.is_zero()).collect();
        prop_assert_eq!(ks.entries, scaled);
    }
}
