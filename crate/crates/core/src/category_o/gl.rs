//! The GL(h) singular-vector criterion `c_{S^N h*} - c_ℂ = N` through
//! pairings of class distributions with characters on the reflection-class
//! line `s_λ = diag(λ, 1, …, 1)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, fmt_scalar, scalar_str, Matrix, Scalar};

/// Laurent polynomial in `λ`: exponent to coefficient.
pub type Laurent = BTreeMap<i64, Scalar>;

/// `coeff · f^{(order)}(at)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionPoint {
    #[serde(with = "scalar_str")]
    pub at: Scalar,
    #[serde(default)]
    pub order: u32,
    #[serde(with = "scalar_str")]
    pub coeff: Scalar,
}

/// A finitely supported class distribution: a sum of evaluation and
/// derivative functionals.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DistributionData {
    pub points: Vec<DistributionPoint>,
}

impl DistributionData {
    pub fn point(at: Scalar, order: u32, coeff: Scalar) -> Self {
        DistributionData { points: vec![DistributionPoint { at, order, coeff }] }
    }

    /// Exact pairing with a Laurent polynomial.
    pub fn pair(&self, f: &Laurent) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for p in &self.points {
            for (&e, a) in f {
                if e < 0 && p.at.is_zero() {
                    return Err(Error::Invalid("distribution supported at λ = 0 paired with λ^-1".into()));
                }
                // d^k/dλ^k λ^e = e(e-1)…(e-k+1) λ^{e-k}
                let falling = (0..p.order as i64).fold(Scalar::one(), |acc, r| acc * Scalar::from_integer((e - r).into()));
                if falling.is_zero() {
                    continue;
                }
                let pw = power(&p.at, e - p.order as i64);
                total += &p.coeff * a * falling * pw;
            }
        }
        Ok(total)
    }
}

fn power(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `χ_{S^N h*}(s_λ) = sum_{j=0}^N binom(N-j+n-2, n-2) λ^{-j}`.
pub fn symmetric_power_character(n: usize, big_n: usize) -> Laurent {
    let mut out = Laurent::new();
    if n == 1 {
        out.insert(-(big_n as i64), Scalar::one());
        return out;
    }
    for j in 0..=big_n as i64 {
        out.insert(-j, binomial(big_n as i64 - j + n as i64 - 2, n as i64 - 2));
    }
    out
}

/// Scalar by which `c` acts on an irreducible `Y`: the pairing with its
/// character on the class line, divided by `dim Y` (so `δ_1` acts by 1).
pub fn scalar_action(c: &DistributionData, chi: &Laurent, dim: &Scalar) -> Result<Scalar> {
    Ok(c.pair(chi)? / dim)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub holds: bool,
    pub lhs: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
}

/// `c_{S^N h*} - c_ℂ` for `h = ℂ^n`, and whether it equals `N`.
pub fn gl_criterion(c: &DistributionData, n: usize, big_n: usize) -> Result<(bool, Scalar)> {
    if n == 0 || big_n == 0 {
        return Err(Error::Invalid("gl criterion needs n ≥ 1 and N ≥ 1".into()));
    }
    let dim = binomial((big_n + n - 1) as i64, (n - 1) as i64);
    let c_sym = scalar_action(c, &symmetric_power_character(n, big_n), &dim)?;
    let c_triv = scalar_action(c, &symmetric_power_character(n, 0), &Scalar::one())?;
    let lhs = c_sym - c_triv;
    Ok((lhs == Scalar::from_integer((big_n as i64).into()), lhs))
}

pub fn gl_criterion_report(c: &DistributionData, n: usize, big_n: usize) -> Result<CriterionReport> {
    let (holds, lhs) = gl_criterion(c, n, big_n)?;
    Ok(CriterionReport { holds, lhs: fmt_scalar(&lhs), n, big_n })
}

/// Distribution supported at `λ = 1` whose pairing reproduces the Euler
/// eigenvalue of `H_β(gl_n)` at `t = 1` on `S^N h*`.
///
/// `c = -n δ_1' + sum_m β_m binom(m+n, n-1) c_m`, where `c_m` is supported at
/// 1 with derivative orders `1..=m+1` and pairs with `λ^{-N}` to
/// `(-1)^{m+1}(m+1) sum_{j<N} j^m`; its coefficients are found by exact
/// interpolation at `N = 1..=m+1`.
pub fn beta_to_distribution(beta: &[Scalar], n: usize) -> DistributionData {
    let mut coeff = vec![Scalar::zero(); beta.len() + 2];
    coeff[1] = -Scalar::from_integer((n as i64).into());
    for (m, b) in beta.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let scale = b * binomial((m + n) as i64, (n - 1) as i64);
        for (k, a) in rank_one_coefficients(m).into_iter().enumerate() {
            coeff[k + 1] += &scale * a;
        }
    }
    let points = coeff
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| DistributionPoint { at: Scalar::one(), order: k as u32, coeff: v })
        .collect();
    DistributionData { points }
}

/// Coefficients `a_1..a_{m+1}` of `c_m = sum_k a_k δ_1^{(k)}`.
fn rank_one_coefficients(m: usize) -> Vec<Scalar> {
    let size = m + 1;
    // d^k/dλ^k λ^{-N} at 1 = (-1)^k N(N+1)…(N+k-1)
    let rows = (1..=size as i64)
        .map(|big_n| {
            (1..=size as i64)
                .map(|k| sign(k as usize) * (0..k).fold(Scalar::one(), |acc, r| acc * Scalar::from_integer((big_n + r).into())))
                .collect()
        })
        .collect();
    let rhs: Vec<Scalar> = (1..=size as i64)
        .map(|big_n| {
            let s: Scalar = (0..big_n).map(|j| Scalar::from_integer(num_traits::pow(num_bigint::BigInt::from(j), m))).sum();
            sign(m + 1) * Scalar::from_integer(((m + 1) as i64).into()) * s
        })
        .collect();
    Matrix::from_rows(rows).solve(&rhs).expect("rising factorials are independent")
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn zero_distribution_never_holds() {
        for big_n in 1..4 {
            let (holds, lhs) = gl_criterion(&DistributionData::default(), 2, big_n).unwrap();
            assert!(!holds);
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn rank_one_evaluation_at_minus_one() {
        for (alpha, big_n) in [(q(-1, 2), 1), (qi(3), 1), (q(-1, 2), 2), (q(5, 3), 3)] {
            let c = DistributionData::point(qi(-1), 0, alpha.clone());
            let (holds, lhs) = gl_criterion(&c, 1, big_n).unwrap();
            let sgn = if big_n % 2 == 0 { qi(1) } else { qi(-1) };
            assert_eq!(lhs, &alpha * (sgn - qi(1)));
            assert_eq!(holds, big_n == 1 && alpha == q(-1, 2));
        }
    }

    #[test]
    fn derivative_pairing_matches_symbolic_derivative() {
        // n = 2: χ_{S^N}(λ) = sum_j λ^{-j}, derivative at 1 is -N(N+1)/2
        for big_n in 1..6i64 {
            let c = DistributionData::point(qi(1), 1, qi(1));
            let got = c.pair(&symmetric_power_character(2, big_n as usize)).unwrap();
            let oracle: Scalar = (0..=big_n).map(|j| qi(-j)).sum();
            assert_eq!(got, oracle);
            assert_eq!(got, q(-big_n * (big_n + 1), 2));
        }
    }

    #[test]
    fn rank_one_rows() {
        assert_eq!(rank_one_coefficients(0), vec![qi(1)]);
        assert_eq!(rank_one_coefficients(1), vec![qi(2), qi(1)]);
        assert_eq!(rank_one_coefficients(2), vec![qi(3), q(9, 2), qi(1)]);
        assert_eq!(rank_one_coefficients(3), vec![qi(4), qi(14), qi(8), qi(1)]);
    }

    #[test]
    fn undeformed_gl_has_all_criteria() {
        // β = 0 at t = 1: c_{S^N} - c_ℂ = N for every N
        for n in 1..4 {
            let c = beta_to_distribution(&[], n);
            for big_n in 1..5 {
                assert!(gl_criterion(&c, n, big_n).unwrap().0);
            }
        }
    }

    #[test]
    fn delta_acts_by_one() {
        let c = DistributionData::point(qi(1), 0, qi(1));
        for big_n in 0..4 {
            let chi = symmetric_power_character(3, big_n);
            let dim = binomial(big_n as i64 + 2, 2);
            assert_eq!(scalar_action(&c, &chi, &dim).unwrap(), qi(1));
        }
    }
}
