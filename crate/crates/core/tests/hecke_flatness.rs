use std::sync::Arc;

use hecke::exact::{q, qi, Scalar};
use hecke::genfun::BetaParameter;
use hecke::hecke::group::{dihedral6_on_h, z2_on_h};
use hecke::hecke::{
    base_add, flatness_check, pbw_dimension_census, FiniteGroup, FlatnessOptions, HeckeAlgebra, KappaForm,
};
use hecke::lie::LieAlgebra;
use hecke::Error;

fn census_matches_h0(h: &Arc<HeckeAlgebra>, d: usize) {
    let h0 = HeckeAlgebra::undeformed(h.base().clone(), h.v_labels().to_vec(), h.form().roles().to_vec()).unwrap();
    assert_eq!(pbw_dimension_census(h, d).unwrap(), pbw_dimension_census(&h0, d).unwrap());
}

#[test]
fn gl2_flat_for_cubic_beta() {
    let g = LieAlgebra::gl(2);
    let h = HeckeAlgebra::infinitesimal(&g, &BetaParameter(vec![qi(1), qi(3), q(-1, 2), q(2, 7)])).unwrap();
    let r = flatness_check(&h, FlatnessOptions::default());
    assert!(r.flat, "{r:?}");
    assert_eq!(r.triples_checked, 4);
    assert!(r.critical_pairs_checked > 0);
}

#[test]
fn sp2_flat_for_even_beta() {
    let g = LieAlgebra::sp(1);
    let h = HeckeAlgebra::infinitesimal(&g, &BetaParameter(vec![qi(2), qi(0), q(5, 3)])).unwrap();
    assert!(flatness_check(&h, FlatnessOptions::default()).flat);
    census_matches_h0(&h, 2);
}

#[test]
fn odd_beta_rejected_for_sp() {
    let err = HeckeAlgebra::infinitesimal(&LieAlgebra::sp(1), &BetaParameter(vec![qi(0), qi(1)])).unwrap_err();
    assert!(matches!(err, Error::OddBetaForSp(1)));
}

#[test]
fn finite_cherednik_flat() {
    let z2 = Arc::new(FiniteGroup::on_h(&z2_on_h()).unwrap());
    let h = HeckeAlgebra::cherednik(z2, qi(1), vec![qi(0), q(1, 3)]).unwrap();
    assert!(flatness_check(&h, FlatnessOptions::default()).flat);
    census_matches_h0(&h, 3);

    let s3 = Arc::new(FiniteGroup::on_h(&dihedral6_on_h()).unwrap());
    let mut c = vec![qi(0); 6];
    for r in s3.reflections() {
        c[r] = q(2, 5);
    }
    let h = HeckeAlgebra::cherednik(s3, qi(1), c).unwrap();
    assert!(flatness_check(&h, FlatnessOptions::default()).flat);
    census_matches_h0(&h, 2);
}

#[test]
fn trace_dropped_tau_fails_with_witness() {
    let g = LieAlgebra::gl(2);
    let h = HeckeAlgebra::infinitesimal(&g, &BetaParameter(vec![qi(0), qi(1)])).unwrap();
    let mut form: KappaForm = h.form().clone();
    let n = 2;
    for i in 0..n {
        let mut v = form.get(i, n + i);
        for k in 0..n {
            let idx = g.index_of(&format!("E{}{}", k + 1, k + 1)).unwrap();
            let mut mono = vec![0; g.dim()];
            mono[idx] = 1;
            base_add(&mut v, mono, Scalar::from_integer(1.into()));
        }
        form.set(i, n + i, v);
    }
    let dropped = HeckeAlgebra::build(h.base().clone(), form).unwrap();
    let r = flatness_check(&dropped, FlatnessOptions::default());
    assert!(!r.flat);
    assert!(!r.witnesses.is_empty());
    assert!(!r.unresolved_overlaps.is_empty());
    assert!(matches!(pbw_dimension_census(&dropped, 1), Err(Error::NotFlat(_))));
}
