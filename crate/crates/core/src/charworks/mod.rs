//! Truncated formal characters graded by depth below a top degree.

mod freudenthal;
mod weylkac;

pub use freudenthal::freudenthal_character;
pub use weylkac::{heisenberg_character, weyl_kac_character};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{add, fmt_q, fmt_vec, qi, Vector, Q};
use crate::twistaff::Weight;

/// `sum c e^{fin + levels + (top - depth) delta}` for `0 <= depth <= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    pub levels: Vec<Q>,
    pub top: Q,
    pub cutoff: Q,
    pub terms: BTreeMap<(Q, Vector), i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub depth: Q,
    pub fin: Vector,
    pub lhs: i64,
    pub rhs: i64,
}

impl Discrepancy {
    pub fn display(&self) -> String {
        format!("depth {} weight {}: {} vs {}", fmt_q(&self.depth), fmt_vec(&self.fin), self.lhs, self.rhs)
    }
}

impl GradedCharacter {
    pub fn zero(levels: Vec<Q>, top: Q, cutoff: Q) -> Self {
        GradedCharacter { levels, top, cutoff, terms: BTreeMap::new() }
    }

    /// `e^w`, known up to `cutoff` below `w`.
    pub fn monomial(w: &Weight, cutoff: Q) -> Self {
        let mut c = Self::zero(w.levels.clone(), w.delta, cutoff);
        c.insert(qi(0), w.fin.clone(), 1);
        c
    }

    pub fn insert(&mut self, depth: Q, fin: Vector, coeff: i64) {
        if depth < qi(0) || depth > self.cutoff || coeff == 0 {
            return;
        }
        let key = (depth, fin);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.terms.get(&(self.top - w.delta, w.fin.clone())).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total dimension of each depth slice.
    pub fn slice_dims(&self) -> BTreeMap<Q, i64> {
        let mut out = BTreeMap::new();
        for ((d, _), c) in &self.terms {
            *out.entry(*d).or_insert(0) += c;
        }
        out
    }

    pub fn truncate(&self, cutoff: Q) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let terms = self.terms.iter().filter(|((d, _), _)| *d <= cutoff).map(|(k, v)| (k.clone(), *v)).collect();
        GradedCharacter { levels: self.levels.clone(), top: self.top, cutoff, terms }
    }

    /// Same series written below a higher top.
    pub fn raise_top(&self, top: Q) -> Self {
        let s = top - self.top;
        assert!(s >= qi(0), "cannot lower the top of a character");
        let terms = self.terms.iter().map(|((d, f), c)| ((*d + s, f.clone()), *c)).collect();
        GradedCharacter { levels: self.levels.clone(), top, cutoff: self.cutoff + s, terms }
    }

    fn check_levels(&self, o: &Self) -> Result<()> {
        if self.levels != o.levels {
            return Err(Error::Invalid("characters live at different levels".into()));
        }
        Ok(())
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().filter(|_| c != 0).map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_levels(o)?;
        let top = self.top.max(o.top);
        let (a, b) = (self.raise_top(top), o.raise_top(top));
        let mut out = Self::zero(self.levels.clone(), top, a.cutoff.min(b.cutoff));
        for ((d, f), c) in a.terms.iter().chain(&b.terms) {
            out.insert(*d, f.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let levels = self.levels.iter().zip(&o.levels).map(|(a, b)| a + b).collect();
        let mut out = Self::zero(levels, self.top + o.top, self.cutoff.min(o.cutoff));
        for ((d1, f1), c1) in &self.terms {
            for ((d2, f2), c2) in &o.terms {
                out.insert(*d1 + *d2, add(f1, f2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `e^w` for a level-zero `w`.
    pub fn shift(&self, fin: &[Q], delta: Q) -> Self {
        let terms = self.terms.iter().map(|((d, f), c)| ((*d, add(f, fin)), *c)).collect();
        GradedCharacter { levels: self.levels.clone(), top: self.top + delta, cutoff: self.cutoff, terms }
    }
}

/// Sum of characters, aligned on the highest top.
pub fn sum(chars: &[GradedCharacter]) -> Result<Option<GradedCharacter>> {
    let mut it = chars.iter();
    let Some(first) = it.next() else { return Ok(None) };
    let mut acc = first.clone();
    for c in it {
        acc = acc.add(c)?;
    }
    Ok(Some(acc))
}

/// Every `(depth, weight)` where the two sides differ, below the common cutoff `d` measured
/// from the higher top.
pub fn restrict_and_compare(lhs: &GradedCharacter, rhs: &GradedCharacter, d: Q) -> Result<Vec<Discrepancy>> {
    lhs.check_levels(rhs)?;
    let top = lhs.top.max(rhs.top);
    let (a, b) = (lhs.raise_top(top), rhs.raise_top(top));
    if a.cutoff < d || b.cutoff < d {
        return Err(Error::Invalid(format!(
            "comparison cutoff {} exceeds the known range ({} and {})",
            fmt_q(&d),
            fmt_q(&a.cutoff),
            fmt_q(&b.cutoff)
        )));
    }
    let mut keys: Vec<&(Q, Vector)> = a.terms.keys().chain(b.terms.keys()).filter(|(x, _)| *x <= d).collect();
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter_map(|k| {
            let (x, y) = (a.terms.get(k).copied().unwrap_or(0), b.terms.get(k).copied().unwrap_or(0));
            (x != y).then(|| Discrepancy { depth: k.0, fin: k.1.clone(), lhs: x, rhs: y })
        })
        .collect())
}
