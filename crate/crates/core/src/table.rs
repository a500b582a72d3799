//! Sparse coefficient tables: ordered maps from output indices to complex numbers.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Serialised as a flat list `[{<key fields>, re, im}]` in key order.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable<K: Ord> {
    entries: BTreeMap<K, Complex64>,
}

impl<K: Ord> Default for CoefficientTable<K> {
    fn default() -> Self {
        CoefficientTable { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> CoefficientTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: K, value: Complex64) {
        self.entries.insert(key, value);
    }

    /// Accumulates into an existing entry.
    pub fn add(&mut self, key: K, value: Complex64) {
        *self.entries.entry(key).or_default() += value;
    }

    /// Zero for absent keys.
    pub fn get(&self, key: &K) -> Complex64 {
        self.entries.get(key).copied().unwrap_or_default()
    }

    pub fn contains(&self, key: &K) -> bool {
        self.entries.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Complex64)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// ℓ² norm of the coefficient vector.
    pub fn l2_norm(&self) -> f64 {
        self.entries.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Drops entries with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        let entries = self.entries.iter().filter(|(_, v)| v.norm() > tol).map(|(k, v)| (k.clone(), *v)).collect();
        CoefficientTable { entries }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        CoefficientTable { entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// self + c·other
    pub fn axpy(&mut self, c: Complex64, other: &Self) {
        for (k, v) in &other.entries {
            self.add(k.clone(), c * v);
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> CoefficientTable<K2> {
        let mut out = CoefficientTable::new();
        for (k, v) in &self.entries {
            out.add(f(k), *v);
        }
        out
    }
}

impl<K: Ord> FromIterator<(K, Complex64)> for CoefficientTable<K> {
    fn from_iter<I: IntoIterator<Item = (K, Complex64)>>(iter: I) -> Self {
        CoefficientTable { entries: iter.into_iter().collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<K> {
    #[serde(flatten)]
    key: K,
    re: f64,
    im: f64,
}

impl<K: Ord + Serialize> Serialize for CoefficientTable<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|(key, v)| Entry { key, re: v.re, im: v.im }))
    }
}

impl<'de, K: Ord + DeserializeOwned> Deserialize<'de> for CoefficientTable<K> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<Entry<K>>::deserialize(d)?;
        Ok(list.into_iter().map(|e| (e.key, Complex64::new(e.re, e.im))).collect())
    }
}
