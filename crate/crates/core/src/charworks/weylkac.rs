use std::collections::{BTreeMap, HashSet};

use crate::charworks::GradedCharacter;
use crate::error::{Error, Result};
use crate::linalg::{add, qi, scale, sub, zero_vec, Vector, Q};
use crate::twistaff::{AffRoot, AffineRootDatum, Weight};

type Terms = BTreeMap<(Q, Vector), i64>;

fn bump(t: &mut Terms, key: (Q, Vector), c: i64) {
    if c == 0 {
        return;
    }
    let e = t.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        t.remove(&key);
    }
}

/// `sum_w (-1)^l(w) e^{w(x) - x}` over the orbit of the regular dominant `x`, down to depth `d`.
fn alternating_orbit(datum: &AffineRootDatum, x: &Weight, d: Q) -> Terms {
    let mut out = Terms::new();
    let mut seen: HashSet<Weight> = HashSet::new();
    seen.insert(x.clone());
    let mut layer = vec![x.clone()];
    let mut sign = 1i64;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for y in &layer {
            bump(&mut out, (x.delta - y.delta, sub(&y.fin, &x.fin)), sign);
            for a in &datum.simple {
                if datum.coroot_pair(y, a) <= qi(0) {
                    continue;
                }
                let z = datum.reflect(y, a);
                if x.delta - z.delta <= d && seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        layer = next;
        sign = -sign;
    }
    out
}

/// `t / (1 - e^{-a})` for `a` of positive degree, truncated at `d`.
fn divide_positive(t: &Terms, a: &AffRoot, d: Q) -> Terms {
    let mut out = Terms::new();
    // Y(depth, f) = X(depth, f) + Y(depth - a.delta, f + a.fin)
    let mut pending: BTreeMap<(Q, Vector), i64> = t.clone();
    while let Some(((depth, f), c)) = pending.pop_first() {
        if depth > d {
            break;
        }
        bump(&mut out, (depth, f.clone()), c);
        if c != 0 {
            let nd = depth + a.delta;
            if nd <= d {
                let key = (nd, sub(&f, &a.fin));
                let e = pending.entry(key.clone()).or_insert(0);
                *e += c;
            }
        }
    }
    out
}

/// `t / (1 - e^{-a})` for a degree-zero root, requiring every `a`-string to sum to zero.
fn divide_finite(t: &Terms, a: &[Q]) -> Result<Terms> {
    let pivot = a.iter().position(|x| *x != qi(0)).expect("nonzero root");
    let mut by_depth: BTreeMap<Q, Vec<(&Vector, i64)>> = BTreeMap::new();
    for ((depth, f), c) in t {
        by_depth.entry(*depth).or_default().push((f, *c));
    }
    let mut out = Terms::new();
    for (depth, entries) in by_depth {
        let mut used = vec![false; entries.len()];
        for i in 0..entries.len() {
            if used[i] {
                continue;
            }
            let base = entries[i].0;
            let mut string: BTreeMap<i64, i64> = BTreeMap::new();
            for (j, (g, c)) in entries.iter().enumerate() {
                let k = (g[pivot] - base[pivot]) / a[pivot];
                if !used[j] && k.is_integer() && sub(g, base) == scale(k, a) {
                    used[j] = true;
                    string.insert(k.to_integer(), *c);
                }
            }
            let (lo, hi) = (*string.keys().next().unwrap(), *string.keys().last().unwrap());
            let mut acc = 0;
            for k in (lo..=hi).rev() {
                acc += string.get(&k).copied().unwrap_or(0);
                if k > lo {
                    bump(&mut out, (depth, add(base, &scale(qi(k), a))), acc);
                }
            }
            if acc != 0 {
                return Err(Error::Internal("numerator is not divisible by the finite denominator".into()));
            }
        }
    }
    Ok(out)
}

/// Character of the irreducible module `L(lambda)` of the datum, to depth `d`.
pub fn weyl_kac_character(datum: &AffineRootDatum, lambda: &Weight, d: Q) -> Result<GradedCharacter> {
    if !datum.is_dominant_integral(lambda) {
        return Err(Error::Invalid(format!("{} is not dominant integral", lambda.display())));
    }
    if d < qi(0) {
        return Err(Error::Invalid("cutoff must be nonnegative".into()));
    }
    let x = lambda.add(&datum.rho_hat);
    let mut terms = alternating_orbit(datum, &x, d);
    let positive = datum.positive_roots(d);
    for (a, m) in positive.iter().filter(|(a, _)| a.delta > qi(0)) {
        for _ in 0..*m {
            terms = divide_positive(&terms, a, d);
        }
    }
    for (a, m) in positive.iter().filter(|(a, _)| a.delta == qi(0)) {
        for _ in 0..*m {
            terms = divide_finite(&terms, &a.fin)?;
        }
    }
    let mut out = GradedCharacter::zero(lambda.levels.clone(), lambda.delta, d);
    for ((depth, f), c) in terms {
        out.insert(depth, add(&lambda.fin, &f), c);
    }
    Ok(out)
}

/// `e^{lambda} prod_{j > 0, j in class + Z} (1 - e^{-j delta})^{-dim}` over `(class, dim)`.
pub fn heisenberg_character(lambda: &Weight, classes: &[(Q, i64)], d: Q) -> GradedCharacter {
    let n = lambda.fin.len();
    let mut terms = Terms::new();
    terms.insert((qi(0), zero_vec(n)), 1);
    for &(class, dim) in classes {
        let mut j = crate::linalg::frac(class);
        if j == qi(0) {
            j = qi(1);
        }
        while j <= d {
            let a = AffRoot::new(zero_vec(n), j);
            for _ in 0..dim {
                terms = divide_positive(&terms, &a, d);
            }
            j += qi(1);
        }
    }
    let mut out = GradedCharacter::zero(lambda.levels.clone(), lambda.delta, d);
    for ((depth, f), c) in terms {
        out.insert(depth, add(&lambda.fin, &f), c);
    }
    out
}
