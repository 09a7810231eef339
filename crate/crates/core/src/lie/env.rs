use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exact::poly::{fmt_monomial, fmt_terms};
use crate::exact::{Monomial, Scalar, SparsePoly};

/// Element of `U(g)` in PBW normal form: ordered monomials
/// `X_1^{e_1} X_2^{e_2} …` over the fixed basis order.
#[derive(Clone)]
pub struct EnvElement {
    alg: Arc<LieAlgebra>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for EnvElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg)
    }
}

impl Eq for EnvElement {}

impl EnvElement {
    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        EnvElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(alg: &Arc<LieAlgebra>, c: Scalar) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(Monomial::one(alg.dim()), c);
        e
    }

    pub fn one(alg: &Arc<LieAlgebra>) -> Self {
        Self::scalar(alg, Scalar::one())
    }

    pub fn generator(alg: &Arc<LieAlgebra>, i: usize) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(Monomial::var(alg.dim(), i), Scalar::one());
        e
    }

    /// Degree-one element `sum_i v_i X_i`.
    pub fn linear(alg: &Arc<LieAlgebra>, v: &[Scalar]) -> Self {
        let mut e = Self::zero(alg);
        for (i, c) in v.iter().enumerate() {
            e.add_term(Monomial::var(alg.dim(), i), c.clone());
        }
        e
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.alg);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    /// PBW normal form of `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            let word = word_of(m);
            let mut acc: Vec<(Vec<u32>, Scalar)> = other.terms.iter().map(|(mm, cc)| (mm.0.clone(), cc * c)).collect();
            for &g in word.iter().rev() {
                let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
                for (mm, cc) in acc {
                    for (r, rc) in left_mul(&self.alg, g, &mm) {
                        *next.entry(r).or_insert_with(Scalar::zero) += &rc * &cc;
                    }
                }
                acc = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            }
            for (mm, cc) in acc {
                out.add_term(Monomial(mm), cc);
            }
        }
        Ok(out)
    }

    /// Commutator `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Product of generators in the given order, straightened.
    pub fn word(alg: &Arc<LieAlgebra>, letters: &[usize]) -> Self {
        let mut acc: Vec<(Vec<u32>, Scalar)> = vec![(vec![0; alg.dim()], Scalar::one())];
        for &g in letters.iter().rev() {
            let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            for (mm, cc) in acc {
                for (r, rc) in left_mul(alg, g, &mm) {
                    *next.entry(r).or_insert_with(Scalar::zero) += &rc * &cc;
                }
            }
            acc = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        let mut out = Self::zero(alg);
        for (m, c) in acc {
            out.add_term(Monomial(m), c);
        }
        out
    }

    /// Top-degree symbol as a commutative polynomial in basis symbols.
    pub fn symbol(&self) -> SparsePoly {
        let mut p = SparsePoly::zero(self.alg.basis_vars());
        if let Some(d) = self.degree() {
            for (m, c) in &self.terms {
                if m.degree() == d {
                    p.add_term(m.clone(), c.clone());
                }
            }
        }
        p
    }

    /// All PBW terms read as a commutative polynomial (not a ring map).
    pub fn as_basis_poly(&self) -> SparsePoly {
        let mut p = SparsePoly::zero(self.alg.basis_vars());
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Adjoint action `[X_a, self]`.
    pub fn ad(&self, a: usize) -> Self {
        let x = Self::generator(&self.alg, a);
        x.commutator(self).expect("same algebra")
    }

    /// Casimir element `sum_k X_k X_k^∨` for the trace form of the defining representation.
    pub fn casimir(alg: &Arc<LieAlgebra>) -> Result<Self> {
        alg.rep().ok_or_else(|| Error::UnsupportedFamily("Casimir needs a defining representation".into()))?;
        let mut out = Self::zero(alg);
        for k in 0..alg.dim() {
            let dual = Self::linear(alg, alg.chart().row(k));
            out = out.add(&Self::generator(alg, k).mul(&dual)?)?;
        }
        Ok(out)
    }
}

pub(crate) fn word_of(m: &Monomial) -> Vec<usize> {
    m.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

/// `X_g · m` for a PBW monomial `m`, in normal form.
pub(crate) fn left_mul(alg: &LieAlgebra, g: usize, m: &[u32]) -> Vec<(Vec<u32>, Scalar)> {
    let first = m.iter().position(|&e| e > 0);
    match first {
        None => {
            let mut r = m.to_vec();
            r[g] += 1;
            return vec![(r, Scalar::one())];
        }
        Some(j) if g <= j => {
            let mut r = m.to_vec();
            r[g] += 1;
            return vec![(r, Scalar::one())];
        }
        _ => {}
    }
    let key = (g, m.to_vec());
    if let Some(hit) = alg.straighten_cache.lock().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let j = first.unwrap();
    let mut rest = m.to_vec();
    rest[j] -= 1;
    // X_g X_j M' = X_j (X_g M') + [X_g, X_j] M'
    let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (r, c) in left_mul(alg, g, &rest) {
        for (r2, c2) in left_mul(alg, j, &r) {
            *acc.entry(r2).or_insert_with(Scalar::zero) += &c * &c2;
        }
    }
    for (k, ck) in alg.bracket_basis(g, j) {
        for (r, c) in left_mul(alg, *k, &rest) {
            *acc.entry(r).or_insert_with(Scalar::zero) += &c * ck;
        }
    }
    let out: Vec<(Vec<u32>, Scalar)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    alg.straighten_cache.lock().expect("cache lock").insert(key, out.clone());
    out
}

/// Symmetrization `S(g) → U(g)` of a commutative polynomial in basis symbols:
/// each monomial becomes the average of all orderings of its letters.
pub fn symmetrize_basis_poly(alg: &Arc<LieAlgebra>, p: &SparsePoly) -> EnvElement {
    let mut out = EnvElement::zero(alg);
    for (m, c) in p.terms() {
        let word = word_of(m);
        let perms = distinct_permutations(&word);
        let w = c / Scalar::from_integer((perms.len() as i64).into());
        for perm in perms {
            out = out.add(&EnvElement::word(alg, &perm).scale(&w)).expect("same algebra");
        }
    }
    out
}

/// Symmetrization of a polynomial function on `g`, given in coordinates,
/// through the trace-form identification `g* ≅ g`.
pub fn symmetrize(alg: &Arc<LieAlgebra>, s: &SparsePoly) -> EnvElement {
    symmetrize_basis_poly(alg, &alg.coords_to_basis_poly(s))
}

fn distinct_permutations(word: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Lexicographic next-permutation enumerates each distinct arrangement once.
    loop {
        let n = sorted.len();
        let Some(i) = (1..n).rev().find(|&i| sorted[i - 1] < sorted[i]) else { break };
        let j = (i..n).rev().find(|&j| sorted[j] > sorted[i - 1]).unwrap();
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.alg.basis_vars();
        fmt_terms(f, self.terms.iter().rev().map(|(m, c)| (fmt_monomial(vars, m), c)))
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvElement({self})")
    }
}
