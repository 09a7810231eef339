use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// A finite matrix group, closed from generators, with its multiplication table.
///
/// Element `0` is the identity. `mats_h` is present for groups given on `h`;
/// `mats_v` is always the action on `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    mats_h: Option<Vec<Matrix>>,
    mats_v: Vec<Matrix>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

const MAX_ORDER: usize = 20_000;

fn close(gens: &[Matrix]) -> Result<Vec<Matrix>> {
    let n = gens.first().map_or(0, Matrix::rows);
    for g in gens {
        if !g.is_square() || g.rows() != n || g.determinant().is_zero() {
            return Err(Error::Invalid("generators must be invertible square matrices of equal size".into()));
        }
    }
    let mut elems = vec![Matrix::identity(n)];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(Matrix::identity(n), 0)]);
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let p = &cur * g;
            if !index.contains_key(&p) {
                if elems.len() >= MAX_ORDER {
                    return Err(Error::Invalid(format!("group order exceeds {MAX_ORDER}; is it finite?")));
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
    }
    Ok(elems)
}

fn build_table(mats: &[Matrix]) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    let index: HashMap<&Matrix, usize> = mats.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut table = vec![vec![0; mats.len()]; mats.len()];
    for (i, a) in mats.iter().enumerate() {
        for (j, b) in mats.iter().enumerate() {
            table[i][j] = *index.get(&(a * b)).ok_or_else(|| Error::Invalid("element set is not closed".into()))?;
        }
    }
    let inverse = (0..mats.len())
        .map(|i| table[i].iter().position(|&k| k == 0).ok_or_else(|| Error::Invalid("missing inverse".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((table, inverse))
}

impl FiniteGroup {
    /// Group generated by matrices acting on `h`; `V = h* ⊕ h` with
    /// `g` acting on `h*` by `ρ(g^{-1})^T`.
    pub fn on_h(gens: &[Matrix]) -> Result<Self> {
        let mats = close(gens)?;
        let (table, inverse) = build_table(&mats)?;
        let mats_v = (0..mats.len()).map(|g| dual_sum(&mats[inverse[g]], &mats[g])).collect();
        Ok(FiniteGroup { mats_h: Some(mats), mats_v, table, inverse })
    }

    /// Group generated by matrices acting on `V` directly.
    pub fn on_v(gens: &[Matrix]) -> Result<Self> {
        let mats = close(gens)?;
        let (table, inverse) = build_table(&mats)?;
        Ok(FiniteGroup { mats_h: None, mats_v: mats, table, inverse })
    }

    /// Group from an explicit multiplication table and its matrices on `V`.
    ///
    /// Checks identity at index 0, associativity, inverses, and that the
    /// matrices respect the table.
    pub fn from_table(table: Vec<Vec<usize>>, mats_v: Vec<Matrix>) -> Result<Self> {
        let n = table.len();
        if n == 0 || mats_v.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(Error::Invalid("table must be square with entries in range".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Invalid("element 0 must be the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("table not associative at ({a}, {b}, {c})")));
                    }
                }
                if &mats_v[a] * &mats_v[b] != mats_v[table[a][b]] {
                    return Err(Error::Invalid(format!("matrices do not respect the table at ({a}, {b})")));
                }
            }
        }
        let inverse = (0..n)
            .map(|i| table[i].iter().position(|&k| k == 0).ok_or_else(|| Error::Invalid("missing inverse".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { mats_h: None, mats_v, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn mat_v(&self, g: usize) -> &Matrix {
        &self.mats_v[g]
    }

    pub fn mat_h(&self, g: usize) -> Option<&Matrix> {
        self.mats_h.as_ref().map(|m| &m[g])
    }

    pub fn has_h(&self) -> bool {
        self.mats_h.is_some()
    }

    pub fn dim_v(&self) -> usize {
        self.mats_v[0].rows()
    }

    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let mut cls: Vec<usize> = (0..self.order()).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
        cls.sort_unstable();
        cls.dedup();
        cls
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if !seen[g] {
                let c = self.conjugacy_class(g);
                for &h in &c {
                    seen[h] = true;
                }
                out.push(c);
            }
        }
        out
    }

    /// Elements with `rank(1 - g|_h) = 1` (complex reflections), or with
    /// `rank(1 - g|_V) = 2` when no `h` is given.
    pub fn reflections(&self) -> Vec<usize> {
        (1..self.order())
            .filter(|&g| match self.mat_h(g) {
                Some(m) => (&Matrix::identity(m.rows()) - m).rank() == 1,
                None => (&Matrix::identity(self.dim_v()) - self.mat_v(g)).rank() == 2,
            })
            .collect()
    }
}

/// `blockdiag(inv^T, g)`: action on `h* ⊕ h`.
fn dual_sum(inv: &Matrix, g: &Matrix) -> Matrix {
    let d = g.rows();
    let it = inv.transpose();
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = it[(i, j)].clone();
            m[(d + i, d + j)] = g[(i, j)].clone();
        }
    }
    m
}

/// Rational reflection representation of `S_3` (dihedral of order 6) on
/// `h = span(e1-e2, e2-e3)`, generated by the simple transpositions.
pub fn dihedral6_on_h() -> Vec<Matrix> {
    vec![Matrix::from_i64(&[&[-1, 1], &[0, 1]]), Matrix::from_i64(&[&[1, 0], &[1, -1]])]
}

/// `Z/2` acting on a one-dimensional `h` by `-1`.
pub fn z2_on_h() -> Vec<Matrix> {
    vec![Matrix::from_rows(vec![vec![-Scalar::one()]])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::on_h(&dihedral6_on_h()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.reflections().len(), 3);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mat_v(a) * g.mat_v(g.inv(a)), Matrix::identity(4));
        }
    }

    #[test]
    fn bad_table_rejected() {
        let m = vec![Matrix::identity(1), Matrix::identity(1)];
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], m).is_err());
    }

    #[test]
    fn z2() {
        let g = FiniteGroup::on_h(&z2_on_h()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.reflections(), vec![1]);
        assert_eq!(g.mat_v(1), &Matrix::from_i64(&[&[-1, 0], &[0, -1]]));
    }
}
