//! Free-word rewriting system for `H_κ`, independent of the memoized
//! normal form, used to compare reduction strategies and resolve overlaps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Base, HeckeAlgebra, HeckeElement, Letter, NMono};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Which reducible position to rewrite next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// At step `s`, rewrite the `choices[s % len] mod (#positions)`-th reducible position.
    Choices(Vec<usize>),
}

pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

type Combo = BTreeMap<Vec<Letter>, Scalar>;

fn add(acc: &mut Combo, w: Vec<Letter>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// Positions `p` at which a rule applies to `w[p..]`.
pub fn reducible_positions(h: &HeckeAlgebra, w: &[Letter]) -> Vec<usize> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        if w[p] == Letter::G(0) || (p + 1 < w.len() && pair_reducible(h, w[p], w[p + 1])) {
            out.push(p);
        }
    }
    out
}

fn pair_reducible(_h: &HeckeAlgebra, a: Letter, b: Letter) -> bool {
    use Letter::*;
    match (a, b) {
        (V(i), V(j)) => i > j,
        (B(_), V(_)) | (G(_), V(_)) | (G(_), G(_)) => true,
        (B(x), B(y)) => x > y,
        _ => false,
    }
}

/// One rewriting step at position `p`; returns the replacement for `w[p..p+len]`
/// together with `len`.
fn rule(h: &HeckeAlgebra, w: &[Letter], p: usize) -> (usize, Combo) {
    use Letter::*;
    let mut out = Combo::new();
    if w[p] == G(0) {
        add(&mut out, Vec::new(), Scalar::one());
        return (1, out);
    }
    match (w[p], w[p + 1]) {
        (V(i), V(j)) => {
            add(&mut out, vec![V(j), V(i)], Scalar::one());
            for (k, c) in h.kappa(i, j) {
                add(&mut out, h.base_word(k), c.clone());
            }
        }
        (B(a), V(j)) => {
            add(&mut out, vec![V(j), B(a)], Scalar::one());
            let rho = h.letter_matrix(B(a)).expect("B letter");
            for i in 0..h.dim_v() {
                add(&mut out, vec![V(i)], rho[(i, j)].clone());
            }
        }
        (G(g), V(j)) => {
            let rho = h.letter_matrix(G(g)).expect("G letter");
            for i in 0..h.dim_v() {
                add(&mut out, vec![V(i), G(g)], rho[(i, j)].clone());
            }
        }
        (B(a), B(b)) => {
            let Base::Enveloping { lie, .. } = h.base() else { unreachable!() };
            add(&mut out, vec![B(b), B(a)], Scalar::one());
            for (k, c) in lie.bracket_basis(a, b) {
                add(&mut out, vec![B(*k)], c.clone());
            }
        }
        (G(g), G(k)) => {
            let Base::Group(grp) = h.base() else { unreachable!() };
            add(&mut out, vec![G(grp.mul(g, k))], Scalar::one());
        }
        _ => unreachable!("irreducible pair"),
    }
    (2, out)
}

fn apply_at(h: &HeckeAlgebra, w: &[Letter], p: usize) -> Combo {
    let (len, rep) = rule(h, w, p);
    let mut out = Combo::new();
    for (mid, c) in rep {
        let mut nw = w[..p].to_vec();
        nw.extend(mid);
        nw.extend_from_slice(&w[p + len..]);
        add(&mut out, nw, c);
    }
    out
}

fn to_mono(h: &HeckeAlgebra, w: &[Letter]) -> NMono {
    let mut m = h.one_mono();
    for &l in w {
        match l {
            Letter::V(i) => m.v[i] += 1,
            Letter::B(a) => m.b[a] += 1,
            Letter::G(g) => m.b[0] = g as u32,
        }
    }
    m
}

fn rewrite_combo(h: &Arc<HeckeAlgebra>, start: Combo, strategy: &Strategy, limit: usize) -> Result<HeckeElement> {
    let mut pending = start;
    let mut done: Vec<(NMono, Scalar)> = Vec::new();
    let mut step = 0usize;
    while let Some((w, c)) = pending.pop_first() {
        let pos = reducible_positions(h, &w);
        if pos.is_empty() {
            done.push((to_mono(h, &w), c));
            continue;
        }
        if step >= limit {
            return Err(Error::NonTerminating(limit));
        }
        let p = match strategy {
            Strategy::Leftmost => pos[0],
            Strategy::Rightmost => *pos.last().unwrap(),
            Strategy::Choices(ch) if !ch.is_empty() => pos[ch[step % ch.len()] % pos.len()],
            Strategy::Choices(_) => pos[0],
        };
        step += 1;
        for (nw, nc) in apply_at(h, &w, p) {
            add(&mut pending, nw, nc * &c);
        }
    }
    Ok(HeckeElement::from_terms(h, done))
}

/// Rewrites a free word to normal form with the given strategy.
pub fn rewrite_word(h: &Arc<HeckeAlgebra>, word: &[Letter], strategy: &Strategy) -> Result<HeckeElement> {
    let start: Combo = [(word.to_vec(), Scalar::one())].into_iter().collect();
    rewrite_combo(h, start, strategy, DEFAULT_STEP_LIMIT)
}

/// Every generator letter of the presentation (the group identity excluded).
pub fn generator_letters(h: &HeckeAlgebra) -> Vec<Letter> {
    let mut out: Vec<Letter> = (0..h.dim_v()).map(Letter::V).collect();
    match h.base() {
        Base::Enveloping { lie, .. } => out.extend((0..lie.dim()).map(Letter::B)),
        Base::Group(g) => out.extend((1..g.order()).map(Letter::G)),
    }
    out
}

/// Outcome of resolving one overlap `abc`.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub word: Vec<Letter>,
    pub left: HeckeElement,
    pub right: HeckeElement,
}

impl CriticalPair {
    pub fn resolves(&self) -> bool {
        self.left == self.right
    }
}

/// All length-three overlaps `abc` with `ab` and `bc` both reducible, each
/// reduced first at the left pair and first at the right pair.
pub fn critical_pairs(h: &Arc<HeckeAlgebra>) -> Result<Vec<CriticalPair>> {
    let letters = generator_letters(h);
    let mut words = Vec::new();
    for &a in &letters {
        for &b in &letters {
            if !pair_reducible(h, a, b) {
                continue;
            }
            for &c in &letters {
                if pair_reducible(h, b, c) {
                    words.push(vec![a, b, c]);
                }
            }
        }
    }
    use rayon::prelude::*;
    words
        .into_par_iter()
        .map(|w| {
            let left = rewrite_combo(h, apply_at(h, &w, 0), &Strategy::Leftmost, DEFAULT_STEP_LIMIT)?;
            let right = rewrite_combo(h, apply_at(h, &w, 1), &Strategy::Leftmost, DEFAULT_STEP_LIMIT)?;
            Ok(CriticalPair { word: w, left, right })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;
    use crate::genfun::BetaParameter;
    use crate::lie::LieAlgebra;

    #[test]
    fn strategies_agree_with_memoized_form() {
        let h = HeckeAlgebra::infinitesimal(&LieAlgebra::gl(2), &BetaParameter(vec![qi(1), qi(3)])).unwrap();
        let w = h.parse_word("E21 y2 x1 y1 x2").unwrap();
        let nf = HeckeElement::from_word(&h, &w);
        for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Choices(vec![3, 1, 4, 1, 5])] {
            assert_eq!(rewrite_word(&h, &w, &s).unwrap(), nf);
        }
    }

    #[test]
    fn identity_letter_vanishes() {
        let g = Arc::new(super::super::FiniteGroup::on_h(&super::super::group::z2_on_h()).unwrap());
        let h = HeckeAlgebra::cherednik(g, qi(1), vec![qi(0), qi(1)]).unwrap();
        let r = rewrite_word(&h, &[Letter::G(0), Letter::G(1), Letter::G(1)], &Strategy::Rightmost).unwrap();
        assert_eq!(r, HeckeElement::one(&h));
    }
}
