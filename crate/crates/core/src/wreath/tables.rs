//! Character tables of finite subgroups `Γ ⊂ SL_2` with values in ℚ(ζ_N).

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Cyclotomic, Scalar};

/// Rows are irreducible characters, columns conjugacy classes; class 0 is
/// the identity. `l_char` is the character of the tautological `L = ℂ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub name: String,
    pub conductor: usize,
    pub class_sizes: Vec<usize>,
    pub irreps: Vec<String>,
    pub chars: Vec<Vec<Cyclotomic>>,
    pub l_char: Vec<Cyclotomic>,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn dim(&self, i: usize) -> Scalar {
        self.chars[i][0].to_rational().expect("degrees are rational")
    }

    fn rat(&self, c: Scalar) -> Cyclotomic {
        Cyclotomic::from_rational(self.conductor, c)
    }

    /// `(1/|Γ|) sum_g f(g) conj(h(g))`.
    pub fn inner(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Cyclotomic {
        let mut s = Cyclotomic::zero(self.conductor);
        for (c, size) in self.class_sizes.iter().enumerate() {
            s = &s + &(&f[c] * &h[c].conj()).scale(&Scalar::from_integer((*size as i64).into()));
        }
        s.scale(&Scalar::new(1.into(), (self.order() as i64).into()))
    }

    /// `det(1 - g|_L) = 2 - χ_L(g)` for `g ∈ SL_2`.
    pub fn det_one_minus(&self, class: usize) -> Cyclotomic {
        &self.rat(Scalar::from_integer(2.into())) - &self.l_char[class]
    }

    /// Orthonormality of the rows and `dim L = 2`.
    pub fn validate(&self) -> Result<()> {
        let k = self.num_classes();
        if k == 0 || self.class_sizes[0] != 1 {
            return Err(Error::Invalid("class 0 must be the identity".into()));
        }
        if self.chars.len() != k || self.chars.iter().any(|r| r.len() != k) || self.l_char.len() != k {
            return Err(Error::Invalid("character table must be square with one L value per class".into()));
        }
        let all = self.chars.iter().flatten().chain(&self.l_char);
        if all.clone().any(|v| v.order() != self.conductor) {
            return Err(Error::Invalid("all values must lie in the same cyclotomic field".into()));
        }
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if self.inner(&self.chars[i], &self.chars[j]) != self.rat(want) {
                    return Err(Error::Invalid(format!("characters {i} and {j} are not orthonormal")));
                }
            }
        }
        if self.l_char[0] != self.rat(Scalar::from_integer(2.into())) {
            return Err(Error::Invalid("L must be two-dimensional".into()));
        }
        Ok(())
    }
}

/// `ℤ/ℓ` acting on `L` by `diag(ζ, ζ⁻¹)`; `Y_j(ζ^m) = ζ^{jm}`.
pub fn cyclic(l: usize) -> Result<CharacterTable> {
    if l == 0 {
        return Err(Error::Invalid("cyclic group needs ℓ ≥ 1".into()));
    }
    let chars = (0..l).map(|j| (0..l).map(|m| Cyclotomic::zeta_pow(l, (j * m) as i64)).collect()).collect();
    let l_char = (0..l).map(|m| &Cyclotomic::zeta_pow(l, m as i64) + &Cyclotomic::zeta_pow(l, -(m as i64))).collect();
    Ok(CharacterTable {
        name: format!("Z/{l}"),
        conductor: l,
        class_sizes: vec![1; l],
        irreps: (0..l).map(|j| format!("Y{j}")).collect(),
        chars,
        l_char,
    })
}

/// Binary dihedral group of order `4m` (`m ≥ 2`), generated by
/// `a = diag(ζ_{2m}, ζ_{2m}⁻¹)` and `b` with `b² = a^m = -1`, `bab⁻¹ = a⁻¹`.
///
/// Classes: `1`, `a^m`, `{a^k, a^-k}` for `0 < k < m`, `b`, `ba`.
pub fn binary_dihedral(m: usize) -> Result<CharacterTable> {
    if m < 2 {
        return Err(Error::Invalid("binary dihedral needs m ≥ 2".into()));
    }
    let n = (2 * m).lcm(&4);
    let z = |e: i64| Cyclotomic::zeta_pow(n, e * (n / (2 * m)) as i64);
    let i_unit = |e: i64| Cyclotomic::zeta_pow(n, e * (n / 4) as i64);
    let rat = |v: i64| Cyclotomic::from_rational(n, Scalar::from_integer(v.into()));
    // class representatives as (power of a, whether b is present)
    let mut reps: Vec<(i64, bool)> = vec![(0, false), (m as i64, false)];
    reps.extend((1..m as i64).map(|k| (k, false)));
    reps.push((0, true));
    reps.push((1, true));
    let mut class_sizes = vec![1, 1];
    class_sizes.extend(std::iter::repeat_n(2, m - 1));
    class_sizes.extend([m, m]);

    let mut irreps = Vec::new();
    let mut chars: Vec<Vec<Cyclotomic>> = Vec::new();
    // one-dimensional: a ↦ ε1, b ↦ ε2 with ε2² = ε1^m
    for eps1 in [1i64, -1] {
        let b_vals: Vec<Cyclotomic> = if eps1 == 1 || m.is_multiple_of(2) {
            vec![rat(1), rat(-1)]
        } else {
            vec![i_unit(1), i_unit(3)]
        };
        for (bi, bv) in b_vals.into_iter().enumerate() {
            irreps.push(format!("chi[{eps1},{bi}]"));
            chars.push(
                reps.iter()
                    .map(|&(k, has_b)| {
                        let a_part = rat(eps1.pow(k as u32));
                        if has_b {
                            &bv * &a_part
                        } else {
                            a_part
                        }
                    })
                    .collect(),
            );
        }
    }
    for h in 1..m as i64 {
        irreps.push(format!("rho{h}"));
        chars.push(reps.iter().map(|&(k, has_b)| if has_b { rat(0) } else { &z(h * k) + &z(-h * k) }).collect());
    }
    let l_char = chars[4].clone();
    Ok(CharacterTable { name: format!("BD{}", 4 * m), conductor: n, class_sizes, irreps, chars, l_char })
}

/// A character value: a rational string, or coefficients on `1, ζ, ζ², …`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueJson {
    Rational(String),
    Powers(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(default)]
    pub name: Option<String>,
    pub conductor: usize,
    pub class_sizes: Vec<usize>,
    #[serde(default)]
    pub irreps: Option<Vec<String>>,
    pub characters: Vec<Vec<ValueJson>>,
    pub l_character: Vec<ValueJson>,
}

fn parse_value(n: usize, v: &ValueJson) -> Result<Cyclotomic> {
    match v {
        ValueJson::Rational(s) => Ok(Cyclotomic::from_rational(n, parse_scalar(s)?)),
        ValueJson::Powers(ps) => {
            let mut out = Cyclotomic::zero(n);
            for (e, s) in ps.iter().enumerate() {
                out = &out + &Cyclotomic::zeta_pow(n, e as i64).scale(&parse_scalar(s)?);
            }
            Ok(out)
        }
    }
}

impl CharacterTable {
    pub fn from_json(t: &TableJson) -> Result<Self> {
        if t.conductor == 0 {
            return Err(Error::Invalid("conductor must be positive".into()));
        }
        let n = t.conductor;
        let chars =
            t.characters.iter().map(|r| r.iter().map(|v| parse_value(n, v)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            name: t.name.clone().unwrap_or_else(|| "user".into()),
            conductor: n,
            class_sizes: t.class_sizes.clone(),
            irreps: t.irreps.clone().unwrap_or_else(|| (0..chars.len()).map(|j| format!("Y{j}")).collect()),
            l_char: t.l_character.iter().map(|v| parse_value(n, v)).collect::<Result<Vec<_>>>()?,
            chars,
        };
        if table.irreps.len() != table.chars.len() {
            return Err(Error::Invalid("one label per irreducible character".into()));
        }
        table.validate()?;
        Ok(table)
    }
}
