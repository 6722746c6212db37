use std::collections::HashMap;

use crate::coxeter::affweyl::AffWeylElt;
use crate::coxeter::restricted::{Red, RestrictedSystem};
use crate::error::{Error, Result};
use crate::twistaff::AffRoot;

/// `Red` of each simple root of the subalgebra, dropping isotropic ones.
pub fn reduced_simple_roots(sys: &RestrictedSystem, simple_a: &[AffRoot]) -> Result<Vec<AffRoot>> {
    let mut out = Vec::new();
    for a in simple_a {
        match sys.red(a)? {
            Red::Root(r) => out.push(r),
            Red::Isotropic => {}
        }
    }
    Ok(out)
}

/// Whether `w^{-1}` maps every root in `red_a` into `Sigma^+`.
pub fn is_minimal_rep(sys: &RestrictedSystem, red_a: &[AffRoot], w: &AffWeylElt) -> bool {
    let inv = w.inverse();
    red_a.iter().all(|r| sys.is_positive(&inv.act_root(&sys.form, r)))
}

/// Minimal right coset representatives of length at most `max_len`.
pub fn minimal_coset_reps(sys: &RestrictedSystem, red_a: &[AffRoot], max_len: usize) -> Vec<AffWeylElt> {
    sys.enumerate(max_len).into_iter().filter(|w| is_minimal_rep(sys, red_a, w)).collect()
}

/// Compares the positivity criterion with brute-force coset minima among elements of length at
/// most `max_len`, using a ball of radius `max_len + margin` to connect cosets.
pub fn check_against_brute_force(
    sys: &RestrictedSystem,
    red_a: &[AffRoot],
    max_len: usize,
    margin: usize,
) -> Result<usize> {
    let ball = sys.enumerate(max_len + margin);
    let index: HashMap<AffWeylElt, usize> = ball.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let refl: Vec<AffWeylElt> = red_a.iter().map(|r| AffWeylElt::reflection(&sys.form, r)).collect();
    let mut parent: Vec<usize> = (0..ball.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for (i, w) in ball.iter().enumerate() {
        for s in &refl {
            if let Some(&j) = index.get(&s.compose(w)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut min_len: HashMap<usize, usize> = HashMap::new();
    for (i, w) in ball.iter().enumerate() {
        let c = find(&mut parent, i);
        let e = min_len.entry(c).or_insert(usize::MAX);
        *e = (*e).min(w.length());
    }
    let mut reps_per_class: HashMap<usize, usize> = HashMap::new();
    let mut count = 0;
    for (i, w) in ball.iter().enumerate() {
        if w.length() > max_len {
            continue;
        }
        let c = find(&mut parent, i);
        let minimal = w.length() == min_len[&c];
        if minimal != is_minimal_rep(sys, red_a, w) {
            return Err(Error::Internal(format!(
                "coset criterion disagrees with brute force at word {:?}",
                w.word
            )));
        }
        if minimal {
            *reps_per_class.entry(c).or_default() += 1;
            count += 1;
        }
    }
    if reps_per_class.values().any(|&n| n != 1) {
        return Err(Error::Internal("coset has more than one minimal element".into()));
    }
    Ok(count)
}
