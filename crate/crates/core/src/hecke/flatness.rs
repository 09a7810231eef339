use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::rewrite::critical_pairs;
use super::{Base, HeckeAlgebra, HeckeElement, NMono};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatnessOptions {
    /// Also resolve every degree-3 overlap of the rewriting system.
    pub critical_pairs: bool,
}

impl Default for FlatnessOptions {
    fn default() -> Self {
        FlatnessOptions { critical_pairs: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    pub triple: [String; 3],
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub flat: bool,
    pub witnesses: Vec<JacobiWitness>,
    pub triples_checked: usize,
    pub critical_pairs_checked: usize,
    /// Overlap words whose two reductions disagree.
    pub unresolved_overlaps: Vec<String>,
}

/// `[κ(a,b), v_c] + [κ(c,a), v_b] + [κ(b,c), v_a]` computed in `SV ⋊ B`.
pub fn jacobi_sum(h: &Arc<HeckeAlgebra>, a: usize, b: usize, c: usize) -> HeckeElement {
    let term = |p: usize, q: usize, r: usize| {
        let k = HeckeElement::base(h, h.kappa(p, q));
        k.commutator(&HeckeElement::v(h, r)).expect("same algebra")
    };
    term(a, b, c).add(&term(c, a, b)).and_then(|s| s.add(&term(b, c, a))).expect("same algebra")
}

/// Jacobi check on all triples `a < b < c` (repeated indices vanish by
/// skewness), optionally confirmed by overlap resolution.
pub fn flatness_check(h: &Arc<HeckeAlgebra>, opts: FlatnessOptions) -> FlatnessReport {
    let n = h.dim_v();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c)))).collect();
    let witnesses: Vec<JacobiWitness> = triples
        .par_iter()
        .filter_map(|&(a, b, c)| {
            let j = jacobi_sum(h, a, b, c);
            (!j.is_zero()).then(|| JacobiWitness {
                triple: [a, b, c].map(|i| h.v_labels()[i].clone()),
                value: j.to_string(),
            })
        })
        .collect();
    let (checked, unresolved) = if opts.critical_pairs {
        match critical_pairs(h) {
            Ok(pairs) => {
                let bad = pairs
                    .iter()
                    .filter(|p| !p.resolves())
                    .map(|p| p.word.iter().map(|&l| h.letter_label(l)).collect::<Vec<_>>().join(" "))
                    .collect();
                (pairs.len(), bad)
            }
            Err(e) => (0, vec![e.to_string()]),
        }
    } else {
        (0, Vec::new())
    };
    FlatnessReport {
        flat: witnesses.is_empty() && unresolved.is_empty(),
        witnesses,
        triples_checked: triples.len(),
        critical_pairs_checked: checked,
        unresolved_overlaps: unresolved,
    }
}

/// Base monomials counted by the census.
fn base_monomials(h: &HeckeAlgebra, d: u32) -> Vec<Vec<u32>> {
    match h.base() {
        Base::Group(g) => (0..g.order() as u32).map(|i| vec![i]).collect(),
        Base::Enveloping { lie, .. } => exponent_vectors(lie.dim(), d),
    }
}

fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// For `k = 0..=d`, the dimension of the span of top symbols of products
/// `v_{i_1} ⋯ v_{i_k} · b` (`i_1 ≤ … ≤ i_k`, `b` a base monomial of degree
/// `≤ d`, or any group element).
///
/// In a flat algebra this is `#(V-monomials of degree k) × #(base monomials)`,
/// the same as in `H_0`.
pub fn pbw_dimension_census(h: &Arc<HeckeAlgebra>, d: usize) -> Result<Vec<usize>> {
    let report = flatness_check(h, FlatnessOptions { critical_pairs: false });
    if !report.flat {
        return Err(Error::NotFlat(
            report.witnesses.first().map(|w| w.triple.join(",")).unwrap_or_default(),
        ));
    }
    let bases = base_monomials(h, d as u32);
    let n = h.dim_v();
    (0..=d)
        .map(|k| {
            let vwords = exponent_vectors_exact(n, k as u32);
            let symbols: Vec<HeckeElement> = vwords
                .par_iter()
                .flat_map_iter(|v| {
                    let word: Vec<super::Letter> =
                        crate::lie::env::word_of(&crate::exact::Monomial(v.clone())).into_iter().map(super::Letter::V).collect();
                    let x = HeckeElement::from_word(h, &word);
                    bases
                        .iter()
                        .map(|b| {
                            let be = HeckeElement::from_terms(h, vec![(NMono { v: vec![0; n], b: b.clone() }, num_traits::One::one())]);
                            x.mul(&be).expect("same algebra").symbol()
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            Ok(span_rank(&symbols))
        })
        .collect()
}

fn exponent_vectors_exact(n: usize, k: u32) -> Vec<Vec<u32>> {
    exponent_vectors(n, k).into_iter().filter(|v| v.iter().sum::<u32>() == k).collect()
}

fn span_rank(elems: &[HeckeElement]) -> usize {
    let mut index = std::collections::BTreeMap::new();
    for e in elems {
        for (m, _) in e.terms() {
            let len = index.len();
            index.entry(m.clone()).or_insert(len);
        }
    }
    if index.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = elems
        .iter()
        .map(|e| {
            let mut r = vec![Scalar::from_integer(0.into()); index.len()];
            for (m, c) in e.terms() {
                r[index[m]] = c.clone();
            }
            r
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;
    use crate::genfun::BetaParameter;
    use crate::hecke::group::z2_on_h;
    use crate::hecke::FiniteGroup;
    use crate::lie::LieAlgebra;

    #[test]
    fn gl1_census() {
        let h = HeckeAlgebra::infinitesimal(&LieAlgebra::gl(1), &BetaParameter(vec![qi(1)])).unwrap();
        let h0 = HeckeAlgebra::undeformed(h.base().clone(), h.v_labels().to_vec(), h.form().roles().to_vec()).unwrap();
        let c = pbw_dimension_census(&h, 2).unwrap();
        assert_eq!(c, pbw_dimension_census(&h0, 2).unwrap());
        // 2 variables in V, base U(gl_1) truncated at degree 2 (3 monomials)
        let expect: Vec<usize> = (0..=2).map(|k| (k + 1) * 3).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn z2_census() {
        let g = Arc::new(FiniteGroup::on_h(&z2_on_h()).unwrap());
        let h = HeckeAlgebra::cherednik(g, qi(1), vec![qi(0), qi(1)]).unwrap();
        let c = pbw_dimension_census(&h, 2).unwrap();
        // monomials in x, y of degree k: k + 1; two group elements
        assert_eq!(c, vec![2, 4, 6]);
    }
}
