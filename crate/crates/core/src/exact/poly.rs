use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_scalar, parse_scalar, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarRole {
    MatrixEntry { i: usize, j: usize },
    Coordinate(usize),
    Sphere(usize),
    Eigenvalue(usize),
    Deformation,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub role: VarRole,
}

/// Ordered list of indeterminates shared by all polynomials of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Variable>,
}

impl VarTable {
    pub fn new(vars: Vec<Variable>) -> Arc<Self> {
        Arc::new(VarTable { vars })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        Self::new(
            names
                .iter()
                .map(|n| Variable { name: n.as_ref().to_string(), role: VarRole::Other })
                .collect(),
        )
    }

    /// `prefix1..prefixn` coordinates.
    pub fn coordinates(prefix: &str, n: usize) -> Arc<Self> {
        Self::new(
            (0..n)
                .map(|i| Variable { name: format!("{prefix}{}", i + 1), role: VarRole::Coordinate(i) })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparsePoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        SparsePoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Scalar::one())
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial arity does not match variable table");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] * var_i`.
    pub fn linear(vars: &Arc<VarTable>, coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars.len(), i), c.clone());
        }
        p
    }

    /// Rebuilds terms over another table with the same number of variables.
    pub fn from_terms_in<'a, I>(vars: &Arc<VarTable>, terms: I) -> Self
    where
        I: Iterator<Item = (&'a Monomial, &'a Scalar)>,
    {
        let mut out = SparsePoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "variable count mismatch");
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Constant polynomial value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &SparsePoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable tables"
        );
    }

    pub fn add_assign_scaled(&mut self, other: &SparsePoly, c: &Scalar) {
        self.check_same(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> SparsePoly {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (mm, v) in &self.terms {
            out.terms.insert(mm.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> SparsePoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut mm = m.clone();
                mm.0[i] -= 1;
                out.add_term(mm, c * Scalar::from_integer(e.into()));
            }
        }
        out
    }

    /// Directional derivative `sum_i dir[i] * d/dvar_i`.
    pub fn directional(&self, dir: &[Scalar]) -> SparsePoly {
        let mut out = Self::zero(&self.vars);
        for (i, c) in dir.iter().enumerate() {
            if !c.is_zero() {
                out.add_assign_scaled(&self.partial(i), c);
            }
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(images.len(), self.nvars(), "need one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<SparsePoly>> = images.iter().map(|p| vec![SparsePoly::one(&p.vars), p.clone()]).collect();
        let mut out = SparsePoly::zero(&target);
        for (m, c) in &self.terms {
            let mut acc = SparsePoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            out = &out + &acc;
        }
        out
    }

    /// Moves the polynomial into a larger ring: variable `i` becomes `target` variable `map[i]`.
    pub fn embed(&self, target: &Arc<VarTable>, map: &[usize]) -> SparsePoly {
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn homogeneous_part(&self, deg: u32) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with `NotDivisible` when a remainder survives.
    pub fn divide_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(divisor);
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::NotDivisible("division by zero polynomial".into()))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible(format!(
                    "leading monomial {} not divisible by {}",
                    fmt_monomial(&self.vars, m),
                    fmt_monomial(&self.vars, &lm)
                )));
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rem.add_assign_scaled(&divisor.mul_monomial(&qm, &Scalar::one()), &(-qc.clone()));
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.vars.iter().map(|v| v.name.clone()).collect(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exp: m.0.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<SparsePoly> {
        let vars = VarTable::from_names(&j.vars);
        let mut p = SparsePoly::zero(&vars);
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(Error::Parse("exponent length does not match vars".into()));
            }
            let c = parse_scalar(&format!("{}/{}", t.num, t.den))?;
            p.add_term(Monomial(t.exp.clone()), c);
        }
        Ok(p)
    }

    /// Parses the canonical text form produced by `Display`, e.g. `3/2*u1^2*u2 - u2 + 1`.
    pub fn parse(vars: &Arc<VarTable>, text: &str) -> Result<SparsePoly> {
        let mut p = SparsePoly::zero(vars);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" || compact.is_empty() {
            return Ok(p);
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > 0 && !compact[..idx].ends_with('^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut coeff = Scalar::one();
            let mut exps = vec![0u32; vars.len()];
            for factor in chunk.split('*') {
                let starts_numeric = factor.chars().next().is_some_and(|c| c.is_ascii_digit());
                if starts_numeric {
                    coeff *= parse_scalar(factor)?;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?),
                        None => (factor, 1),
                    };
                    let i = vars.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    exps[i] += e;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub(crate) fn fmt_monomial(vars: &VarTable, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars.name(i).to_string() } else { format!("{}^{}", vars.name(i), e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Writes `sum c*mono` in descending term order using `+`/`-` separators.
pub(crate) fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if mono == "1" {
            write!(f, "{}", fmt_scalar(&a))?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{}", fmt_scalar(&a), mono)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().rev().map(|(m, c)| (fmt_monomial(&self.vars, m), c)))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_same(rhs);
        let mut out = SparsePoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};
    use proptest::prelude::*;

    fn uw() -> Arc<VarTable> {
        VarTable::from_names(&["u", "w"])
    }

    #[test]
    fn difference_of_squares() {
        let v = uw();
        let u = SparsePoly::var(&v, 0);
        let w = SparsePoly::var(&v, 1);
        let p = &(&u * &u) - &(&w * &w);
        let d = &u - &w;
        assert_eq!(p.divide_exact(&d).unwrap(), &u + &w);
    }

    #[test]
    fn zero_dividend() {
        let v = uw();
        let u = SparsePoly::var(&v, 0);
        assert!(SparsePoly::zero(&v).divide_exact(&u).unwrap().is_zero());
    }

    #[test]
    fn not_divisible() {
        let v = uw();
        let u = SparsePoly::var(&v, 0);
        let w = SparsePoly::var(&v, 1);
        let p = &(&u * &u) + &w;
        assert!(matches!(p.divide_exact(&u), Err(Error::NotDivisible(_))));
        assert!(matches!(p.divide_exact(&SparsePoly::zero(&v)), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn reflection_difference_divides() {
        // f = u1^2 u2, reflection u -> u - 2 (v.u) v over the joint ring in (u, v).
        let t = VarTable::from_names(&["u1", "u2", "v1", "v2"]);
        let u: Vec<SparsePoly> = (0..2).map(|i| SparsePoly::var(&t, i)).collect();
        let v: Vec<SparsePoly> = (2..4).map(|i| SparsePoly::var(&t, i)).collect();
        let vu = &(&v[0] * &u[0]) + &(&v[1] * &u[1]);
        let refl: Vec<SparsePoly> = (0..2).map(|i| &u[i] - &(&vu * &v[i]).scale(&qi(2))).collect();
        let f = &(&u[0] * &u[0]) * &u[1];
        let fs = &(&refl[0] * &refl[0]) * &refl[1];
        let diff = &f - &fs;
        let quot = diff.divide_exact(&vu).unwrap();
        assert_eq!(&quot * &vu, diff);
    }

    #[test]
    fn text_roundtrip() {
        let v = uw();
        let p = SparsePoly::parse(&v, "3/2*u^2*w - w + 1").unwrap();
        assert_eq!(p.to_string(), "3/2*u^2*w - w + 1");
        assert_eq!(SparsePoly::parse(&v, &p.to_string()).unwrap(), p);
        assert_eq!(SparsePoly::parse(&v, "-u - 1/3").unwrap().to_string(), "-u - 1/3");
        assert_eq!(SparsePoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let v = uw();
        let p = SparsePoly::parse(&v, "-7/3*u*w^2 + 2*u").unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(j, r#"{"vars":["u","w"],"terms":[{"exp":[1,2],"num":"-7","den":"3"},{"exp":[1,0],"num":"2","den":"1"}]}"#);
        let back = SparsePoly::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn derivative_and_substitution() {
        let v = uw();
        let p = SparsePoly::parse(&v, "u^3*w + w").unwrap();
        assert_eq!(p.partial(0).to_string(), "3*u^2*w");
        let imgs = vec![SparsePoly::parse(&v, "u + w").unwrap(), SparsePoly::parse(&v, "u").unwrap()];
        let s = p.substitute(&imgs);
        assert_eq!(s.eval(&[qi(1), qi(2)]), p.eval(&[qi(3), qi(1)]));
        assert_eq!(p.eval(&[q(1, 2), qi(2)]), q(1, 4) + qi(2));
    }

    fn small_poly() -> impl Strategy<Value = SparsePoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..5).prop_map(|ts| {
            let v = VarTable::from_names(&["a", "b", "c"]);
            let mut p = SparsePoly::zero(&v);
            for ((i, j, k), c) in ts {
                p.add_term(Monomial(vec![i, j, k]), qi(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn exact_division_recovers_factor(qq in small_poly(), r in small_poly()) {
            prop_assume!(!qq.is_zero());
            let p = &qq * &r;
            prop_assert_eq!(p.divide_exact(&qq).unwrap(), r);
        }

        #[test]
        fn text_reparses(a in small_poly()) {
            prop_assert_eq!(SparsePoly::parse(a.vars(), &a.to_string()).unwrap(), a);
        }
    }
}
