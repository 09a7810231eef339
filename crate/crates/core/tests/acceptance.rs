//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use hecke::category_o::*;
use hecke::dunkl::{commutator_test, DunklParams, ReflectionDatum};
use hecke::exact::{binomial, fmt_scalar, q, qi, Matrix, Monomial, Scalar, SparsePoly};
use hecke::genfun::*;
use hecke::hecke::bridge::sra_cherednik_bridge;
use hecke::hecke::group::{dihedral6_on_h, z2_on_h};
use hecke::hecke::{flatness_check, pbw_dimension_census, FiniteGroup, FlatnessOptions, HeckeAlgebra};
use hecke::lie::closure::{lie_closure_check, phi_iso_check};
use hecke::lie::LieAlgebra;
use hecke::wreath::*;
use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_genfun_goldens() -> Check {
    for n in 2..=3 {
        let g = LieAlgebra::gl(n);
        let r = r_coefficients(n, 1);
        for i in 0..n {
            for j in 0..n {
                let delta = qi(i64::from(i == j));
                ensure(r[0].table[i][j].as_constant() == Some(delta.clone()), || format!("r_0 n={n} ({i},{j})"))?;
                let lin = g.element_of_linear(&r[1].table[i][j]);
                for a in 0..n {
                    for b in 0..n {
                        let want = qi(i64::from(a == j && b == i)) + if a == b { delta.clone() } else { qi(0) };
                        ensure(lin[a * n + b] == want, || format!("r_1 n={n} ({i},{j}) entry E{}{}", a + 1, b + 1))?;
                    }
                }
            }
        }
    }
    for n in 1..=3 {
        let g = LieAlgebra::gl(n);
        let s = det_inverse_expansion(&g, 2).map_err(|e| e.to_string())?;
        let a = g.generic_matrix().map_err(|e| e.to_string())?;
        let mut tr = SparsePoly::zero(g.coord_vars());
        let mut tr2 = SparsePoly::zero(g.coord_vars());
        for i in 0..n {
            tr = &tr + &a[i][i];
            for j in 0..n {
                tr2 = &tr2 + &(&a[i][j] * &a[j][i]);
            }
        }
        let want = &tr2.scale(&q(1, 2)) + &(&tr * &tr).scale(&q(1, 2));
        ensure(s.coeff(2) == &want, || format!("det-inverse order 2, n={n}"))?;
    }
    Ok(())
}

fn c2_gl1_closed_form() -> Check {
    let r = r_coefficients(1, 6);
    let g = LieAlgebra::gl(1);
    // coefficient of τ^m in (1 - τa)^{-1} · (1 - τa)^{-1}
    for m in 0..=6usize {
        let c: Scalar = (0..=m).map(|_| qi(1)).sum();
        let want = SparsePoly::monomial(g.coord_vars(), Monomial(vec![m as u32]), c);
        ensure(r[m].table[0][0] == want, || format!("m={m}: {}", r[m].table[0][0]))?;
    }
    Ok(())
}

fn c3_sp_properties() -> Check {
    for n in 1..=2 {
        for c in ell_coefficients(n, 4) {
            for a in 0..2 * n {
                for b in 0..2 * n {
                    ensure(c.m % 2 == 0 || c.table[a][b].is_zero(), || format!("ℓ_{} nonzero, n={n}", c.m))?;
                    ensure((&c.table[a][b] + &c.table[b][a]).is_zero(), || format!("ℓ_{} not skew, n={n}", c.m))?;
                }
            }
        }
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/sl2_gamma.json")).map_err(|e| e.to_string())?;
    let golden: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let g = LieAlgebra::sp(1);
    for k in 0..=2usize {
        let stored = golden["symbolic"][k.to_string()].as_str().ok_or("missing golden")?;
        let gamma = sl2_gamma_symbolic(k).ok_or_else(|| format!("k={k}: not proportional"))?;
        ensure(fmt_scalar(&gamma) == stored, || format!("γ_{k} = {gamma}, golden {stored}"))?;
        let ell = ell_coefficients(1, 2 * k);
        let lhs = hecke::lie::env::symmetrize(&g, &ell[2 * k].table[0][1]);
        ensure(lhs == sl2_sym_casimir_power(k).scale(&gamma), || format!("k={k}: symmetrized identity"))?;
    }
    Ok(())
}

fn c4_phi_and_closure() -> Check {
    for n in 1..=3 {
        ensure(phi_iso_check(n), || format!("φ fails for n={n}"))?;
        let (g, rep, kappa) = tau_closure_input(n, false);
        let r = lie_closure_check(&g, &rep, &kappa).map_err(|e| e.to_string())?;
        ensure(r.semisimple && r.dim == (n + 1) * (n + 1) - 1, || format!("n={n}: {r:?}"))?;
    }
    Ok(())
}

fn random_beta(rng: &mut TestRng, even: bool) -> Vec<Scalar> {
    (0..=3)
        .map(|m| {
            if even && m % 2 == 1 {
                return qi(0);
            }
            let num = (rng.next_u32() % 11) as i64 - 5;
            let den = (rng.next_u32() % 4) as i64 + 1;
            q(num, den)
        })
        .collect()
}

fn census_matches(h: &Arc<HeckeAlgebra>, d: usize) -> Check {
    let h0 = HeckeAlgebra::undeformed(h.base().clone(), h.v_labels().to_vec(), h.form().roles().to_vec()).map_err(|e| e.to_string())?;
    let a = pbw_dimension_census(h, d).map_err(|e| e.to_string())?;
    let b = pbw_dimension_census(&h0, d).map_err(|e| e.to_string())?;
    ensure(a == b, || format!("census {a:?} vs {b:?}"))
}

fn reflection_c(g: &FiniteGroup, value: Scalar) -> Vec<Scalar> {
    let mut c = vec![qi(0); g.order()];
    for r in g.reflections() {
        c[r] = value.clone();
    }
    c
}

const SEED: [u8; 32] = [7; 32];

fn c5_flatness() -> Check {
    let mut rng = TestRng::from_seed(RngAlgorithm::ChaCha, &SEED);
    for (g, even) in [(LieAlgebra::gl(2), false), (LieAlgebra::sp(1), true)] {
        for _ in 0..3 {
            let beta = random_beta(&mut rng, even);
            let h = HeckeAlgebra::infinitesimal(&g, &BetaParameter(beta.clone())).map_err(|e| e.to_string())?;
            let r = flatness_check(&h, FlatnessOptions::default());
            ensure(r.flat, || format!("{:?} β={beta:?}: {:?}", g.family(), r.witnesses))?;
            census_matches(&h, 3)?;
        }
    }
    for (gens, c) in [(z2_on_h(), q(1, 3)), (dihedral6_on_h(), q(2, 5))] {
        let g = Arc::new(FiniteGroup::on_h(&gens).map_err(|e| e.to_string())?);
        let cs = reflection_c(&g, c);
        let h = HeckeAlgebra::cherednik(g, qi(1), cs).map_err(|e| e.to_string())?;
        ensure(flatness_check(&h, FlatnessOptions::default()).flat, || "finite group algebra not flat".into())?;
        census_matches(&h, 3)?;
    }
    let (g, rep, kappa) = tau_closure_input(2, true);
    let r = lie_closure_check(&g, &rep, &kappa).map_err(|e| e.to_string())?;
    ensure(!r.is_lie_algebra && r.witness.is_some(), || "trace-dropped τ accepted".into())?;
    let h = HeckeAlgebra::infinitesimal(&LieAlgebra::gl(2), &BetaParameter(vec![qi(0), qi(1)])).map_err(|e| e.to_string())?;
    let mut form = h.form().clone();
    let (gl2, n) = (LieAlgebra::gl(2), 2);
    for i in 0..n {
        let mut v = form.get(i, n + i);
        for a in 0..n {
            let mut mono = vec![0; gl2.dim()];
            mono[gl2.index_of(&format!("E{}{}", a + 1, a + 1)).ok_or("label")?] = 1;
            hecke::hecke::base_add(&mut v, mono, qi(1));
        }
        form.set(i, n + i, v);
    }
    let dropped = HeckeAlgebra::build(h.base().clone(), form).map_err(|e| e.to_string())?;
    let r = flatness_check(&dropped, FlatnessOptions::default());
    ensure(!r.flat && !r.witnesses.is_empty(), || "trace-dropped algebra reported flat".into())
}

fn c6_dunkl_commute() -> Check {
    for d in [2, 3] {
        for k in [qi(1), q(-1, 2), q(3, 7)] {
            let r = commutator_test(&DunklParams::orthogonal(qi(1), d, k.clone()), 4).map_err(|e| e.to_string())?;
            ensure(r.zero, || format!("O({d}) k={k}: {:?}", r.witness))?;
        }
    }
    let rank1 = ReflectionDatum::new(Matrix::from_i64(&[&[-1]]), vec![qi(1)], q(2, 3)).map_err(|e| e.to_string())?;
    let p = DunklParams::finite(qi(1), vec![rank1]).map_err(|e| e.to_string())?;
    ensure(commutator_test(&p, 4).map_err(|e| e.to_string())?.zero, || "rank one".into())?;
    let g = FiniteGroup::on_h(&dihedral6_on_h()).map_err(|e| e.to_string())?;
    let data = ReflectionDatum::from_group(&g, &reflection_c(&g, q(5, 3))).map_err(|e| e.to_string())?;
    let p = DunklParams::finite(qi(2), data).map_err(|e| e.to_string())?;
    ensure(commutator_test(&p, 4).map_err(|e| e.to_string())?.zero, || "dihedral".into())
}

fn c7_o1_z2() -> Check {
    for k in [qi(1), q(3, 7), q(-5, 2)] {
        let o = DunklParams::orthogonal(qi(1), 1, k.clone());
        let datum = ReflectionDatum::new(Matrix::from_i64(&[&[-1]]), vec![qi(1)], k.clone()).map_err(|e| e.to_string())?;
        let f = DunklParams::finite(qi(1), vec![datum]).map_err(|e| e.to_string())?;
        for j in 0..=6 {
            let m = SparsePoly::monomial(o.vars(), Monomial(vec![j]), qi(1));
            let a = o.apply_basis(0, &m).map_err(|e| e.to_string())?;
            let b = f.apply_basis(0, &m).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("k={k}, u^{j}: {a} vs {b}"))?;
        }
    }
    Ok(())
}

fn c8_euler() -> Check {
    let gl2 = HeckeAlgebra::infinitesimal(&LieAlgebra::gl(2), &BetaParameter(vec![qi(1)])).map_err(|e| e.to_string())?;
    let weyl = verma_build(&gl2, &BaseModule::trivial(&gl2), 5).map_err(|e| e.to_string())?;
    let o2 = dunkl_module(&DunklParams::orthogonal(qi(1), 2, q(1, 3)), 5).map_err(|e| e.to_string())?;
    let g = Arc::new(FiniteGroup::on_h(&z2_on_h()).map_err(|e| e.to_string())?);
    let z2 = HeckeAlgebra::cherednik(g.clone(), qi(1), reflection_c(&g, q(2, 7))).map_err(|e| e.to_string())?;
    let z2m = verma_build(&z2, &BaseModule::trivial(&z2), 5).map_err(|e| e.to_string())?;
    for (name, m) in [("H_1(gl_2)", &weyl), ("O(2)", &o2), ("Z/2", &z2m)] {
        let r = euler_check(m, 4).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{name}: {:?}", r.failure))?;
    }
    Ok(())
}

fn c9_gl_criterion() -> Check {
    let (mut pos, mut neg) = (0, 0);
    for beta in [vec![qi(1), qi(1)], vec![qi(1), qi(-1)], vec![q(1, 3), q(-2, 5)]] {
        let h = HeckeAlgebra::infinitesimal(&LieAlgebra::gl(2), &BetaParameter(beta.clone())).map_err(|e| e.to_string())?;
        let m = verma_build(&h, &BaseModule::trivial(&h), 3).map_err(|e| e.to_string())?;
        let c = beta_to_distribution(&beta, 2);
        for big_n in 1..=2 {
            let (holds, _) = gl_criterion(&c, 2, big_n).map_err(|e| e.to_string())?;
            let kernel = !m.singular_vectors(big_n).is_empty();
            ensure(holds == kernel, || format!("β={beta:?} N={big_n}: criterion {holds}, kernel {kernel}"))?;
            if holds {
                pos += 1;
            } else {
                neg += 1;
            }
        }
    }
    ensure(pos > 0 && neg > 0, || format!("{pos} positive, {neg} negative instances"))
}

fn c10_sl2_and_lc() -> Check {
    for d in [2, 3] {
        for k in [qi(0), q(2, 5), qi(-1), qi(-2), qi(-3)] {
            let r = sl2_triple_check(d, &k, 4).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("d={d} k={k}: {:?}", r.failure))?;
        }
    }
    for m in 0..=2 {
        let r = lc_structure(2, m).map_err(|e| e.to_string())?;
        ensure(r.dimension == (m + 1) * (m + 1) && r.matches, || format!("d=2 m={m}: {r:?}"))?;
    }
    let r = lc_structure(3, 1).map_err(|e| e.to_string())?;
    ensure(r.dimension == 5 && r.matches, || format!("d=3 m=1: {r:?}"))?;
    let m = dunkl_module(&DunklParams::orthogonal(qi(1), 2, q(1, 3)), 6).map_err(|e| e.to_string())?;
    for r in m.shapovalov_all() {
        ensure(r.kernel == 0, || format!("k=1/3 degree {} rank {} of {}", r.degree, r.rank, r.dim))?;
    }
    Ok(())
}

fn c11_character() -> Check {
    for d in 1..=4usize {
        let m = dunkl_module(&DunklParams::orthogonal(qi(1), d, q(1, 3)), 1).map_err(|e| e.to_string())?;
        let c = m.c_op.block(0).ok_or("no degree 0")?[(0, 0)].clone();
        let ones = vec![qi(1); d];
        let s = character_series(&ones, &qi(1), &c, 8);
        ensure(s.offset == &c + q(d as i64, 2), || format!("offset d={d}"))?;
        let lam: Vec<Scalar> = (0..d).map(|i| q(2 * i as i64 + 3, i as i64 + 2)).collect();
        let st = character_series(&lam, &qi(1), &c, 8);
        for n in 0..=8u32 {
            ensure(s.coeffs[n as usize] == binomial(n as i64 + d as i64 - 1, d as i64 - 1), || format!("d={d} n={n} at 1"))?;
            ensure(st.coeffs[n as usize] == complete_homogeneous(&lam, n), || format!("d={d} n={n} at torus point"))?;
        }
    }
    Ok(())
}

fn single(gamma: Gamma, vertex: i64, diagram: Vec<usize>, c: ClassDistribution) -> Result<WreathSpec, String> {
    let d = YoungDiagram::new(diagram).map_err(|e| e.to_string())?;
    Ok(WreathSpec { gamma, n: d.size(), blocks: vec![Block { vertex, diagram: d }], k: qi(1), c })
}

fn c12_wreath() -> Check {
    let z2 = Gamma::Finite(cyclic(2).map_err(|e| e.to_string())?);
    let at = |c: Scalar| single(z2.clone(), 0, vec![1], ClassDistribution::Classes(vec![qi(0), c]));
    ensure(montarani_check(&at(q(-1, 4))?).map_err(|e| e.to_string())?.admissible, || "c=-1/4 rejected".into())?;
    ensure(!montarani_check(&at(qi(0))?).map_err(|e| e.to_string())?.admissible, || "c=0 accepted".into())?;
    let one = || YoungDiagram::new(vec![1]).unwrap();
    let adj = WreathSpec {
        gamma: Gamma::Torus,
        n: 2,
        blocks: vec![Block { vertex: 0, diagram: one() }, Block { vertex: 1, diagram: one() }],
        k: qi(1),
        c: ClassDistribution::Points(DistributionData::point(qi(-1), 0, q(-1, 4))),
    };
    let r = montarani_check(&adj).map_err(|e| e.to_string())?;
    ensure(r.failures.iter().any(|f| f.condition == 2), || "adjacent vertices accepted".into())?;
    let r = montarani_check(&single(z2, 0, vec![3, 2], ClassDistribution::Classes(vec![qi(0), qi(0)]))?).map_err(|e| e.to_string())?;
    ensure(r.failures.iter().any(|f| f.condition == 1), || "non-rectangular accepted".into())?;
    let mut groups: Vec<Gamma> = (1..=6).map(|l| Gamma::Finite(cyclic(l).unwrap())).collect();
    groups.push(Gamma::Finite(binary_dihedral(2).map_err(|e| e.to_string())?));
    for g in &groups {
        if let Gamma::Finite(t) = g {
            for i in 0..t.chars.len() as i64 {
                ensure(dimension_identity(g, i).map_err(|e| e.to_string())?, || format!("{} vertex {i}", t.name))?;
            }
        }
    }
    Ok(())
}

fn c13_bridge() -> Check {
    let g = FiniteGroup::on_h(&dihedral6_on_h()).map_err(|e| e.to_string())?;
    let r = sra_cherednik_bridge(&g).map_err(|e| e.to_string())?;
    ensure(r.holds && r.reflections_checked == 3, || format!("{r:?}"))
}

fn main() {
    let checks: [(&str, fn() -> Check); 13] = [
        ("generating-function goldens", c1_genfun_goldens),
        ("gl_1 closed form", c2_gl1_closed_form),
        ("sp coefficients and sl_2 constants", c3_sp_properties),
        ("φ isomorphism and Lie closure", c4_phi_and_closure),
        ("flatness dichotomy and census", c5_flatness),
        ("Dunkl commutativity", c6_dunkl_commute),
        ("O(1) equals Z/2", c7_o1_z2),
        ("Euler identities", c8_euler),
        ("GL criterion vs singular vectors", c9_gl_criterion),
        ("sl_2 triple and L(C)", c10_sl2_and_lc),
        ("character series", c11_character),
        ("wreath checker", c12_wreath),
        ("sra/Cherednik bridge", c13_bridge),
    ];
    println!("acceptance seed: {}", SEED.iter().map(|b| format!("{b:02x}")).collect::<String>());
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
