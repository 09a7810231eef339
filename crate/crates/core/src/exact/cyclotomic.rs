use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_scalar, Scalar};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn upoly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b` for monic-or-not `b`.
fn upoly_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![Scalar::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        quot[shift] = c;
        r = trim(r);
    }
    (trim(quot), r)
}

/// Cyclotomic polynomial Φ_n, built by exact division of `x^n - 1`.
pub fn cyclotomic_poly(n: usize) -> Vec<Scalar> {
    assert!(n >= 1);
    let mut p = vec![Scalar::zero(); n + 1];
    p[0] = -Scalar::one();
    p[n] = Scalar::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (quot, rem) = upoly_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(rem.is_empty());
            p = quot;
        }
    }
    p
}

/// Element of ℚ(ζ_N), stored reduced modulo Φ_N.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclotomic {
    n: usize,
    #[serde(with = "super::scalar_vec")]
    coeffs: Vec<Scalar>,
}

impl Cyclotomic {
    fn reduce(n: usize, v: Vec<Scalar>) -> Self {
        let (_, r) = upoly_divrem(&v, &cyclotomic_poly(n));
        Cyclotomic { n, coeffs: r }
    }

    pub fn zero(n: usize) -> Self {
        Cyclotomic { n, coeffs: Vec::new() }
    }

    pub fn from_rational(n: usize, c: Scalar) -> Self {
        Self::reduce(n, vec![c])
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Scalar::zero(); e + 1];
        v[e] = Scalar::one();
        Self::reduce(n, v)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_rational(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Coefficients on `1, ζ, ζ², …` after reduction.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            out = &out + &Self::zeta_pow(self.n, -(i as i64)).scale(c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Cyclotomic { n: self.n, coeffs: trim(self.coeffs.iter().map(|x| x * c).collect()) }
    }

    /// Re-expresses the element inside ℚ(ζ_M) for a multiple `M` of `N`.
    pub fn lift(&self, m: usize) -> Self {
        assert!(m.is_multiple_of(self.n), "can only lift to a multiple of the conductor");
        let step = (m / self.n) as i64;
        let mut out = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            out = &out + &Self::zeta_pow(m, i as i64 * step).scale(c);
        }
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cyclotomic fields differ");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let z = Scalar::zero();
        let v = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Cyclotomic { n: self.n, coeffs: trim(v) }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic::reduce(self.n, upoly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_scalar(c),
                1 => format!("{}*z{}", fmt_scalar(c), self.n),
                _ => format!("{}*z{}^{}", fmt_scalar(c), self.n, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn phi_small() {
        assert_eq!(cyclotomic_poly(1), vec![qi(-1), qi(1)]);
        assert_eq!(cyclotomic_poly(4), vec![qi(1), qi(0), qi(1)]);
        assert_eq!(cyclotomic_poly(6), vec![qi(1), qi(-1), qi(1)]);
        assert_eq!(cyclotomic_poly(12).len(), 5);
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..=12 {
            let z = Cyclotomic::zeta_pow(n, 1);
            let mut p = Cyclotomic::from_rational(n, qi(1));
            let mut sum = Cyclotomic::zero(n);
            for _ in 0..n {
                sum = &sum + &p;
                p = &p * &z;
            }
            assert_eq!(p, Cyclotomic::from_rational(n, qi(1)));
            let expected = if n == 1 { qi(1) } else { qi(0) };
            assert_eq!(sum.to_rational(), Some(expected));
            assert_eq!(&z * &z.conj(), Cyclotomic::from_rational(n, qi(1)));
        }
    }

    #[test]
    fn lift_preserves_value() {
        let a = Cyclotomic::zeta_pow(4, 1);
        let b = a.lift(8);
        assert_eq!(b, Cyclotomic::zeta_pow(8, 2));
    }
}
