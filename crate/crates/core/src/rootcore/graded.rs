use std::collections::BTreeMap;

use crate::linalg::{frac, is_zero, Vector, Q};

/// Dimensions of joint eigenspaces, keyed by eigenvalue class in `[0, 1)` and finite weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedTable {
    pub entries: BTreeMap<(Q, Vector), i64>,
}

impl GradedTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, class: Q, weight: Vector, dim: i64) {
        let key = (frac(class), weight);
        let e = self.entries.entry(key.clone()).or_insert(0);
        *e += dim;
        if *e == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn total_dim(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn class_dim(&self, class: Q) -> i64 {
        let c = frac(class);
        self.entries.iter().filter(|((j, _), _)| *j == c).map(|(_, d)| d).sum()
    }

    pub fn classes(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.entries.keys().map(|(j, _)| *j).collect();
        v.dedup();
        v
    }

    pub fn dim_of(&self, class: Q, weight: &[Q]) -> i64 {
        self.entries.get(&(frac(class), weight.to_vec())).copied().unwrap_or(0)
    }

    /// Zero-weight dimension of a class.
    pub fn zero_dim(&self, class: Q) -> i64 {
        let c = frac(class);
        self.entries
            .iter()
            .filter(|((j, w), _)| *j == c && is_zero(w))
            .map(|(_, d)| d)
            .sum()
    }

    /// Nonzero weights of a class.
    pub fn weights(&self, class: Q) -> Vec<(Vector, i64)> {
        let c = frac(class);
        self.entries
            .iter()
            .filter(|((j, w), _)| *j == c && !is_zero(w))
            .map(|((_, w), d)| (w.clone(), *d))
            .collect()
    }

    pub fn map_weights(&self, f: impl Fn(&[Q]) -> Vector) -> GradedTable {
        let mut out = GradedTable::new();
        for ((j, w), d) in &self.entries {
            out.add(*j, f(w), *d);
        }
        out
    }

    pub fn has_negative(&self) -> bool {
        self.entries.values().any(|&d| d < 0)
    }
}
