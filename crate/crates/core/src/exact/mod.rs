//! Exact scalar arithmetic, sparse multivariate polynomials, truncated
//! power series, dense rational matrices and cyclotomic numbers.

pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::Cyclotomic;
pub use matrix::Matrix;
pub use poly::{Monomial, SparsePoly, VarRole, VarTable, Variable};
pub use series::TruncatedSeries;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"-0.25"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Scalar::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
    Ok(Scalar::from_integer(n))
}

/// Canonical `"p/q"` form; integers print without a denominator.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 || n < 0 || k > n {
        return Scalar::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(n-1)!!` style double factorial of `n`; `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod scalar_str {
    use super::{fmt_scalar, parse_scalar, Scalar};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_scalar(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) => parse_scalar(&n.to_string()).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected rational, got {other}"))),
        }
    }
}

pub mod scalar_vec {
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::scalar_str")] Scalar);

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Wrap> = xs.iter().cloned().map(Wrap).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let v: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

pub mod scalar_mat {
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "super::scalar_vec")] Vec<Scalar>);

    pub fn serialize<S: Serializer>(xs: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Row> = xs.iter().cloned().map(Row).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
        let v: Vec<Row> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_scalar("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_scalar(" 7 ").unwrap(), qi(7));
        assert_eq!(fmt_scalar(&q(-3, 6)), "-1/2");
        assert_eq!(fmt_scalar(&qi(5)), "5");
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), qi(10));
        assert_eq!(binomial(3, 5), qi(0));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
