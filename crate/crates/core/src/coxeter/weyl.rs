use std::collections::HashSet;

use crate::coxeter::affweyl::AffWeylElt;
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::twistaff::{AffRoot, AffineRootDatum, Weight};

pub fn simple_reflection(d: &AffineRootDatum, i: usize) -> AffWeylElt {
    AffWeylElt::reflection(&d.form, &d.simple[i]).with_word(vec![i])
}

pub fn from_word(d: &AffineRootDatum, word: &[usize]) -> AffWeylElt {
    word.iter().fold(AffWeylElt::identity(d.dim()), |w, &i| w.compose(&simple_reflection(d, i)))
}

/// Translation `t_alpha`; `alpha` must lie in the real span of the roots.
pub fn translation(d: &AffineRootDatum, alpha: &[crate::linalg::Q]) -> Result<AffWeylElt> {
    let fins: Vec<Vector> = d.simple.iter().map(|a| a.fin.clone()).collect();
    if !Subspace::span(&d.form, &fins).contains(alpha) {
        return Err(Error::Invalid("translation vector is outside the root span".into()));
    }
    let mut t = AffWeylElt::identity(d.dim());
    t.trans = alpha.to_vec();
    Ok(t)
}

/// `N(w)` read off a reduced word: `alpha_{i1}, s_{i1} alpha_{i2}, ...`.
pub fn inversion_set(d: &AffineRootDatum, w: &AffWeylElt) -> Vec<AffRoot> {
    let mut out = Vec::with_capacity(w.word.len());
    let mut prefix = AffWeylElt::identity(d.dim());
    for &i in &w.word {
        out.push(prefix.act_root(&d.form, &d.simple[i]));
        prefix = prefix.compose(&simple_reflection(d, i));
    }
    out
}

/// `rho_hat - w(rho_hat)` for a single-level datum.
pub fn rho_shift(d: &AffineRootDatum, w: &AffWeylElt) -> Weight {
    d.rho_hat.sub(&w.act(&d.form, &d.rho_hat))
}

/// Elements of length at most `max_len`, breadth first, each with a reduced word.
pub fn enumerate(d: &AffineRootDatum, max_len: usize) -> Vec<AffWeylElt> {
    enumerate_group(d.dim(), &(0..d.simple.len()).map(|i| simple_reflection(d, i)).collect::<Vec<_>>(), max_len)
}

/// Breadth-first enumeration of the group generated by `gens` by right multiplication.
pub fn enumerate_group(dim: usize, gens: &[AffWeylElt], max_len: usize) -> Vec<AffWeylElt> {
    let id = AffWeylElt::identity(dim);
    let mut seen: HashSet<AffWeylElt> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut frontier = 0;
    for _ in 0..max_len {
        let end = out.len();
        for k in frontier..end {
            for g in gens {
                let n = out[k].compose(g);
                if seen.insert(n.clone()) {
                    out.push(n);
                }
            }
        }
        frontier = end;
    }
    out
}
