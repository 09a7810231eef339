use std::fmt;
use std::sync::Arc;


use super::{Scalar, SparsePoly, VarTable};
use crate::error::{Error, Result};

/// Power series in a distinguished variable τ, truncated after τ^M, with
/// polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<SparsePoly>,
}

impl TruncatedSeries {
    pub fn zero(vars: &Arc<VarTable>, order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![SparsePoly::zero(vars); order + 1] }
    }

    pub fn one(vars: &Arc<VarTable>, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        s.coeffs[0] = SparsePoly::one(vars);
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(vars: &Arc<VarTable>, order: usize, coeffs: Vec<SparsePoly>) -> Self {
        let mut s = Self::zero(vars, order);
        for (i, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.coeffs[0].vars()
    }

    pub fn coeff(&self, m: usize) -> &SparsePoly {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, p: SparsePoly) {
        self.coeffs[m] = p;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(format!("orders {} and {}", self.order, other.order)));
        }
        if self.vars() != other.vars() {
            return Err(Error::OrderMismatch("variable tables differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.vars(), self.order);
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.order - i {
                if !other.coeffs[j].is_zero() {
                    let p = &self.coeffs[i] * &other.coeffs[j];
                    out.coeffs[i + j] = &out.coeffs[i + j] + &p;
                }
            }
        }
        Ok(out)
    }

    /// `exp(s)` through order M. Uses `E' = s' E`, so
    /// `m E_m = sum_{k=1..m} k s_k E_{m-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let vars = self.vars().clone();
        let mut e = vec![SparsePoly::one(&vars)];
        for m in 1..=self.order {
            let mut acc = SparsePoly::zero(&vars);
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    let t = &self.coeffs[k] * &e[m - k];
                    acc.add_assign_scaled(&t, &Scalar::from_integer((k as i64).into()));
                }
            }
            e.push(acc.scale(&Scalar::new(1.into(), (m as i64).into())));
        }
        Ok(TruncatedSeries { order: self.order, coeffs: e })
    }

    /// `log(s)` for a series with constant term 1: the inverse of `exp`.
    /// `m L_m = m s_m - sum_{k=1..m-1} k L_k s_{m-k}`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != SparsePoly::one(self.vars()) {
            return Err(Error::Invalid("log needs constant term 1".into()));
        }
        let vars = self.vars().clone();
        let mut l = vec![SparsePoly::zero(&vars)];
        for m in 1..=self.order {
            let mut acc = self.coeffs[m].scale(&Scalar::from_integer((m as i64).into()));
            for k in 1..m {
                let t = &l[k] * &self.coeffs[m - k];
                acc.add_assign_scaled(&t, &-Scalar::from_integer((k as i64).into()));
            }
            l.push(acc.scale(&Scalar::new(1.into(), (m as i64).into())));
        }
        Ok(TruncatedSeries { order: self.order, coeffs: l })
    }

    /// Drops the truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries { order, coeffs: self.coeffs.iter().take(order + 1).cloned().collect() }
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.exp()
}

/// Logarithm of a unit series: the expansion inverse to `series_exp`.
pub fn series_log_inverse(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.log()
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*tau^{m}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(tau^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

impl TruncatedSeries {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coefficient_constants(&self) -> Option<Vec<Scalar>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, SparsePoly, VarTable};
    use proptest::prelude::*;

    fn a_vars() -> Arc<VarTable> {
        VarTable::from_names(&["a"])
    }

    fn lin(v: &Arc<VarTable>, s: &str) -> SparsePoly {
        SparsePoly::parse(v, s).unwrap()
    }

    #[test]
    fn mul_examples() {
        let v = a_vars();
        let p = TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "1"), lin(&v, "1")]);
        let m = TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "1"), lin(&v, "-1")]);
        let r = p.mul(&m).unwrap();
        assert_eq!(r, TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "1"), lin(&v, "0"), lin(&v, "-1")]));

        let g = TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "1"), lin(&v, "a"), lin(&v, "a^2")]);
        let sq = g.mul(&g).unwrap();
        assert_eq!(sq, TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "1"), lin(&v, "2*a"), lin(&v, "3*a^2")]));
        assert_eq!(TruncatedSeries::one(&v, 2).mul(&g).unwrap(), g);
    }

    #[test]
    fn mismatch() {
        let v = a_vars();
        let a = TruncatedSeries::one(&v, 2);
        let b = TruncatedSeries::one(&v, 3);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn exp_examples() {
        let v = a_vars();
        assert_eq!(TruncatedSeries::zero(&v, 3).exp().unwrap(), TruncatedSeries::one(&v, 3));
        let s = TruncatedSeries::from_coeffs(&v, 2, vec![lin(&v, "0"), lin(&v, "a")]);
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(2), &lin(&v, "1/2*a^2"));
        let bad = TruncatedSeries::one(&v, 2);
        assert_eq!(bad.exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn geometric_log() {
        // log(1/(1 - a tau)) = sum a^k tau^k / k
        let v = a_vars();
        let geo = TruncatedSeries::from_coeffs(&v, 5, (0..=5).map(|k| SparsePoly::var(&v, 0).pow(k)).collect());
        let l = geo.log().unwrap();
        for k in 1..=5u32 {
            assert_eq!(l.coeff(k as usize), &SparsePoly::var(&v, 0).pow(k).scale(&Scalar::new(1.into(), (k as i64).into())));
        }
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(cs in proptest::collection::vec(-3i64..4, 1..5)) {
            let v = a_vars();
            let a = SparsePoly::var(&v, 0);
            let mut coeffs = vec![SparsePoly::zero(&v)];
            for (i, c) in cs.iter().enumerate() {
                coeffs.push(a.pow(i as u32).scale(&qi(*c)));
            }
            let s = TruncatedSeries::from_coeffs(&v, 4, coeffs);
            let e = series_exp(&s).unwrap();
            prop_assert_eq!(series_log_inverse(&e).unwrap(), s.clone());
            let back = series_exp(&series_log_inverse(&e).unwrap()).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
