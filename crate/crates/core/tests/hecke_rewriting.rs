use std::sync::{Arc, OnceLock};

use hecke::exact::{q, qi};
use hecke::genfun::BetaParameter;
use hecke::hecke::group::dihedral6_on_h;
use hecke::hecke::rewrite::{generator_letters, rewrite_word};
use hecke::hecke::{FiniteGroup, HeckeAlgebra, HeckeElement, Letter, Strategy};
use hecke::lie::LieAlgebra;
use proptest::prelude::*;

fn gl2() -> &'static Arc<HeckeAlgebra> {
    static H: OnceLock<Arc<HeckeAlgebra>> = OnceLock::new();
    H.get_or_init(|| HeckeAlgebra::infinitesimal(&LieAlgebra::gl(2), &BetaParameter(vec![qi(1), q(1, 2), qi(-2)])).unwrap())
}

fn s3() -> &'static Arc<HeckeAlgebra> {
    static H: OnceLock<Arc<HeckeAlgebra>> = OnceLock::new();
    H.get_or_init(|| {
        let g = Arc::new(FiniteGroup::on_h(&dihedral6_on_h()).unwrap());
        let mut c = vec![qi(0); 6];
        for r in g.reflections() {
            c[r] = q(-3, 4);
        }
        HeckeAlgebra::cherednik(g, qi(2), c).unwrap()
    })
}

fn word(h: &HeckeAlgebra, idx: &[usize]) -> Vec<Letter> {
    let letters = generator_letters(h);
    idx.iter().map(|&i| letters[i % letters.len()]).collect()
}

fn v_degree(w: &[Letter]) -> u32 {
    w.iter().filter(|l| matches!(l, Letter::V(_))).count() as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strategies_confluent(idx in prop::collection::vec(0usize..64, 0..=4), choices in prop::collection::vec(0usize..8, 1..5)) {
        for h in [gl2(), s3()] {
            let w = word(h, &idx);
            let a = rewrite_word(h, &w, &Strategy::Leftmost).unwrap();
            let b = rewrite_word(h, &w, &Strategy::Rightmost).unwrap();
            let c = rewrite_word(h, &w, &Strategy::Choices(choices.clone())).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
            prop_assert_eq!(&a, &HeckeElement::from_word(h, &w));
        }
    }

    #[test]
    fn normal_form_never_raises_v_degree(idx in prop::collection::vec(0usize..64, 0..=5)) {
        for h in [gl2(), s3()] {
            let w = word(h, &idx);
            let nf = HeckeElement::from_word(h, &w);
            prop_assert!(nf.v_degree().unwrap_or(0) <= v_degree(&w));
        }
    }

    #[test]
    fn symbol_is_multiplicative(i in prop::collection::vec(0usize..64, 1..=3), j in prop::collection::vec(0usize..64, 1..=3)) {
        for h in [gl2(), s3()] {
            let a = HeckeElement::from_word(h, &word(h, &i));
            let b = HeckeElement::from_word(h, &word(h, &j));
            let lhs = a.mul(&b).unwrap();
            let top = a.v_degree().unwrap_or(0) + b.v_degree().unwrap_or(0);
            let sym_prod = a.symbol().mul(&b.symbol()).unwrap();
            // top-degree part of the product equals the top-degree part of the product of symbols
            let top_part = |e: &HeckeElement| {
                HeckeElement::from_terms(h, e.terms().filter(|(m, _)| m.v_degree() == top).map(|(m, c)| (m.clone(), c.clone())).collect())
            };
            prop_assert_eq!(top_part(&lhs), top_part(&sym_prod));
        }
    }

    #[test]
    fn multiplication_associative(i in prop::collection::vec(0usize..64, 1..=2), j in prop::collection::vec(0usize..64, 1..=2), k in prop::collection::vec(0usize..64, 1..=2)) {
        for h in [gl2(), s3()] {
            let a = HeckeElement::from_word(h, &word(h, &i));
            let b = HeckeElement::from_word(h, &word(h, &j));
            let c = HeckeElement::from_word(h, &word(h, &k));
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }
    }
}
