use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{double_factorial, Scalar};

/// Environment variable naming a directory where moment tables persist.
pub const MOMENT_CACHE_ENV: &str = "HECKE_MOMENT_CACHE";

/// `∫_{S^{d-1}} v^α dσ` for the rotation-invariant probability measure `σ`:
/// `∏(α_i - 1)!! / ∏_{j < |α|/2} (d + 2j)` when every `α_i` is even, else 0.
pub fn sphere_moment(alpha: &[u32], d: usize) -> Scalar {
    assert!(d >= 1, "sphere dimension needs d >= 1");
    if alpha.iter().any(|a| a % 2 == 1) {
        return Scalar::zero();
    }
    let num = alpha.iter().fold(BigInt::from(1), |acc, &a| acc * double_factorial(a as i64 - 1));
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let den = (0..half).fold(BigInt::from(1), |acc, j| acc * BigInt::from(d as u64 + 2 * j as u64));
    Scalar::new(num, den)
}

/// Read-mostly cache of sphere moments for one dimension `d`.
///
/// `overrides` replace selected entries; they exist to corrupt the table on
/// purpose in mutation tests.
#[derive(Debug)]
pub struct MomentTable {
    d: usize,
    cache: RwLock<HashMap<Vec<u32>, Scalar>>,
    overrides: HashMap<Vec<u32>, Scalar>,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    d: usize,
    entries: BTreeMap<String, String>,
}

impl MomentTable {
    pub fn new(d: usize) -> Self {
        MomentTable { d, cache: RwLock::new(HashMap::new()), overrides: HashMap::new() }
    }

    pub fn with_override(mut self, alpha: Vec<u32>, value: Scalar) -> Self {
        self.overrides.insert(alpha, value);
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, alpha: &[u32]) -> Scalar {
        if let Some(v) = self.overrides.get(alpha) {
            return v.clone();
        }
        if let Some(v) = self.cache.read().expect("moment lock").get(alpha) {
            return v.clone();
        }
        let v = sphere_moment(alpha, self.d);
        self.cache.write().expect("moment lock").entry(alpha.to_vec()).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("moment lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn path(dir: &Path, d: usize) -> PathBuf {
        dir.join(format!("sphere_moments_d{d}.json"))
    }

    /// Loads cached entries from `dir`, recomputing and checking each one.
    pub fn load(dir: &Path, d: usize) -> Result<Self> {
        let t = Self::new(d);
        let p = Self::path(dir, d);
        if !p.exists() {
            return Ok(t);
        }
        let text = std::fs::read_to_string(&p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
        let stored: Stored = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        if stored.d != d {
            return Err(Error::Invalid(format!("{} holds d = {}", p.display(), stored.d)));
        }
        let mut cache = t.cache.write().expect("moment lock");
        for (k, v) in stored.entries {
            let alpha: Vec<u32> = serde_json::from_str(&k).map_err(|e| Error::Parse(e.to_string()))?;
            let value = crate::exact::parse_scalar(&v)?;
            if value != sphere_moment(&alpha, d) {
                return Err(Error::Invalid(format!("stale moment cache entry {k}")));
            }
            cache.insert(alpha, value);
        }
        drop(cache);
        Ok(t)
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(e.to_string()))?;
        let entries = self
            .cache
            .read()
            .expect("moment lock")
            .iter()
            .map(|(k, v)| (serde_json::to_string(k).expect("vec"), crate::exact::fmt_scalar(v)))
            .collect();
        let text = serde_json::to_string_pretty(&Stored { d: self.d, entries }).expect("serializable");
        std::fs::write(Self::path(dir, self.d), text).map_err(|e| Error::Invalid(e.to_string()))
    }

    /// Table backed by the directory in `HECKE_MOMENT_CACHE`, if set.
    pub fn from_env(d: usize) -> Result<Self> {
        match std::env::var_os(MOMENT_CACHE_ENV) {
            Some(dir) => Self::load(Path::new(&dir), d),
            None => Ok(Self::new(d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn small_moments() {
        assert_eq!(sphere_moment(&[2, 0, 0], 3), q(1, 3));
        assert_eq!(sphere_moment(&[4, 0], 2), q(3, 8));
        assert_eq!(sphere_moment(&[1, 1], 2), qi(0));
        assert_eq!(sphere_moment(&[0, 0, 0], 3), qi(1));
        assert_eq!(sphere_moment(&[6], 1), qi(1));
    }

    #[test]
    fn persist_roundtrip() {
        let dir = std::env::temp_dir().join(format!("hecke-moments-{}", std::process::id()));
        let t = MomentTable::new(3);
        t.get(&[2, 2, 0]);
        t.get(&[4, 0, 2]);
        t.save(&dir).unwrap();
        let back = MomentTable::load(&dir, 3).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back.get(&[2, 2, 0]), q(1, 15));
        std::fs::remove_dir_all(dir).ok();
    }
}
