use num_traits::{One, Zero};
use serde::Serialize;

use crate::dunkl::degree_basis;
use crate::exact::{fmt_scalar, Scalar};

/// `χ_{M(Y)}(g) = t^{offset} · sum_n coeffs[n] t^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSeries {
    /// `c_Y + d/2`.
    pub offset: Scalar,
    pub coeffs: Vec<Scalar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterJson {
    pub offset: String,
    pub coeffs: Vec<String>,
}

impl CharacterSeries {
    pub fn to_json(&self) -> CharacterJson {
        CharacterJson { offset: fmt_scalar(&self.offset), coeffs: self.coeffs.iter().map(fmt_scalar).collect() }
    }
}

/// Expands `t^{c_Y + d/2} χ_Y(g) / det_{h*}(1 - g t)` through `t^order`, where
/// `eigenvalues` are those of `g` on `h*`.
///
/// The reciprocal determinant is built as a product of geometric series.
pub fn character_series(eigenvalues: &[Scalar], chi_y: &Scalar, c_y: &Scalar, order: usize) -> CharacterSeries {
    let d = eigenvalues.len();
    let mut coeffs = vec![Scalar::zero(); order + 1];
    coeffs[0] = Scalar::one();
    for lam in eigenvalues {
        // multiply by 1/(1 - λt): running sum a_n += λ a_{n-1}
        for n in 1..=order {
            let prev = &coeffs[n - 1] * lam;
            coeffs[n] += prev;
        }
    }
    CharacterSeries {
        offset: c_y + Scalar::new((d as i64).into(), 2.into()),
        coeffs: coeffs.into_iter().map(|a| a * chi_y).collect(),
    }
}

/// `h_n(λ_1, …, λ_d)` as a sum over all monomials of degree `n`.
pub fn complete_homogeneous(eigenvalues: &[Scalar], n: u32) -> Scalar {
    degree_basis(eigenvalues.len(), n)
        .into_iter()
        .map(|m| {
            m.0.iter().zip(eigenvalues).fold(Scalar::one(), |acc, (&e, l)| acc * num_traits::pow(l.clone(), e as usize))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn identity_counts_monomials() {
        let s = character_series(&[qi(1), qi(1)], &qi(1), &qi(0), 5);
        assert_eq!(s.coeffs, (1..=6).map(qi).collect::<Vec<_>>());
        assert_eq!(s.offset, qi(1));
    }

    #[test]
    fn torus_point_matches_h_n() {
        let lam = [q(2, 3), qi(-5), q(1, 7)];
        let s = character_series(&lam, &qi(3), &q(1, 2), 6);
        for n in 0..=6 {
            assert_eq!(s.coeffs[n as usize], complete_homogeneous(&lam, n) * qi(3));
        }
    }
}
