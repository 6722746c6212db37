//! The pairs `(so(V + C u), so(V))` twisted by `Ad(T)` for an orthogonal `T` of finite order, and
//! the closed-form decompositions of `F^T(V)`.

use std::collections::BTreeMap;

use crate::charworks::{restrict_and_compare, Discrepancy};
use crate::dirac::{DiracSetup, FiniteIdeal, MultipletEntry, MultipletReport};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, frac, qi, qr, Q};
use crate::rootcore::{Block, Classical, MatrixAlgebra, MatrixAut};
use crate::twistaff::Weight;

/// Conjugacy data of `T` in `O(V)`: rotation angles on orthogonal planes, optionally one `-1`
/// eigenline, and the identity elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TClass {
    pub angles: Vec<Q>,
    pub reflect: bool,
}

impl TClass {
    pub fn identity() -> Self {
        TClass { angles: vec![], reflect: false }
    }

    pub fn minus_identity(n: usize) -> Self {
        TClass { angles: vec![qr(1, 2); n / 2], reflect: n % 2 == 1 }
    }

    pub fn det(&self) -> i32 {
        if self.reflect {
            -1
        } else {
            1
        }
    }

    pub fn tag(&self) -> String {
        let a: Vec<String> = self.angles.iter().map(fmt_q).collect();
        format!("rot[{}]{}", a.join(","), if self.reflect { "-refl" } else { "" })
    }
}

/// Which of the four closed forms applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoCase {
    /// Even `dim V`, `det T = 1`: two modules.
    EvenDetOne,
    /// Odd `dim V`, `det T = 1`: one module, twice.
    OddDetOne,
    /// Odd `dim V`, `det T = -1`: two modules.
    OddDetMinusOne,
    /// Even `dim V`, `det T = -1`: one module, twice.
    EvenDetMinusOne,
}

impl SoCase {
    pub fn of(n: usize, t: &TClass) -> Self {
        match (n % 2 == 0, t.reflect) {
            (true, false) => SoCase::EvenDetOne,
            (false, false) => SoCase::OddDetOne,
            (false, true) => SoCase::OddDetMinusOne,
            (true, true) => SoCase::EvenDetMinusOne,
        }
    }

    /// Value of the asymptotic dimension of `F^T(V)`.
    pub fn expected_asdim(self) -> f64 {
        match self {
            SoCase::EvenDetOne | SoCase::OddDetMinusOne => 1.0,
            _ => std::f64::consts::SQRT_2,
        }
    }
}

/// Matrix data `(so(n+1), Ad(T + 1), reflection in u)`.
pub fn so_pair_matrices(n: usize, t: &TClass) -> Result<(MatrixAlgebra, MatrixAut, MatrixAut)> {
    if n < 3 {
        return Err(Error::Invalid(format!("dim V = {n} is too small")));
    }
    let size = n + 1;
    let alg = MatrixAlgebra::new(vec![Block { kind: Classical::So, size }])?;
    let h = size / 2;
    let planes = if size % 2 == 1 { h } else { h - 1 };
    let free = planes - usize::from(t.reflect && size % 2 == 1);
    if t.angles.len() > free {
        return Err(Error::Invalid(format!("{} rotation planes do not fit in dim V = {n}", t.angles.len())));
    }
    let partner = |a: usize| size - 1 - a;
    let mut sigma = MatrixAut::identity(size);
    let mut mu = MatrixAut::identity(size);
    if size % 2 == 1 && t.reflect {
        // Ad(T + 1) = Ad(-(T + 1)), which lies in a torus; u sits in the first half-turn plane.
        let a = t.angles.len();
        for i in 0..h {
            let ang = t.angles.get(i).copied().unwrap_or(qi(0)) + qr(1, 2);
            sigma.phases[i] = frac(ang);
            sigma.phases[partner(i)] = frac(-ang);
        }
        mu.perm.swap(a, partner(a));
        return Ok((alg, sigma, mu));
    }
    for (i, &ang) in t.angles.iter().enumerate() {
        sigma.phases[i] = frac(ang);
        sigma.phases[partner(i)] = frac(-ang);
    }
    if size % 2 == 1 {
        mu.phases[h] = qr(1, 2);
    } else {
        let j = h - 1;
        mu.perm.swap(j, partner(j));
        if t.reflect {
            sigma.perm.swap(j, partner(j));
            sigma.phases[j] = qr(1, 2);
            sigma.phases[partner(j)] = qr(1, 2);
        }
    }
    Ok((alg, sigma, mu))
}

pub fn so_pair_setup(n: usize, t: &TClass) -> Result<DiracSetup> {
    let (alg, sigma, mu) = so_pair_matrices(n, t)?;
    let s = DiracSetup::from_matrix(&format!("so{}-so{}-{}", n + 1, n, t.tag()), &alg, &sigma, &mu)?;
    if s.finite_exact {
        return Ok(s);
    }
    // `a = so(n)`, with dual Coxeter number `n - 2` against `n - 1` for `so(n + 1)`.
    let casimir = s.dual_coxeter() * Q::new(n as i64 - 2, n as i64 - 1);
    let ideals = if n == 4 {
        vec![FiniteIdeal { dim: 3, rank: 1, casimir }; 2]
    } else {
        vec![FiniteIdeal { dim: (n * (n - 1) / 2) as i64, rank: n / 2, casimir }]
    };
    Ok(s.with_finite_data(ideals, 0))
}

fn entry(setup: &DiracSetup, xi: Weight, label: String) -> Result<MultipletEntry> {
    Ok(MultipletEntry {
        dirac_square: setup.dirac_square(&xi)?,
        dominant: setup.a.is_dominant_integral(&xi),
        depth: -xi.delta,
        length: 0,
        word: vec![],
        xi,
        label: Some(label),
    })
}

fn fundamental(setup: &DiracSetup, i: usize, delta: Q) -> Result<Weight> {
    let mut w = setup.a.fundamental_weight(i)?;
    if w.levels.iter().any(|l| *l != qi(1)) {
        return Err(Error::Internal(format!("node {i} does not have level one")));
    }
    w.delta = delta;
    Ok(w)
}

fn node_of(setup: &DiracSetup, r: &crate::twistaff::AffRoot) -> Result<usize> {
    setup
        .a
        .simple
        .iter()
        .position(|x| x == r)
        .ok_or_else(|| Error::Internal(format!("{} is not a simple root of a", r.display())))
}

/// Closed-form decomposition of `F^T(V)` read off the simple roots of the two data.
pub fn so_pair_decomposition(n: usize, t: &TClass) -> Result<(DiracSetup, MultipletReport)> {
    if n < 5 {
        return Err(Error::Unsupported(format!("dim V = {n}: the closed forms need dim V >= 5")));
    }
    let setup = so_pair_setup(n, t)?;
    let case = SoCase::of(n, t);
    let sys = &setup.sys;
    let mut entries = Vec::new();
    let power;
    match case {
        SoCase::EvenDetOne | SoCase::OddDetMinusOne => {
            let p: Vec<_> = (0..sys.rank()).map(|k| sys.simple(k).clone()).collect();
            let outside: Vec<_> = p.iter().filter(|b| !setup.a.is_root(b)).collect();
            let [beta] = outside[..] else {
                return Err(Error::Internal(format!("expected one simple root outside a, found {}", outside.len())));
            };
            let nbrs: Vec<_> = p.iter().filter(|x| *x != beta && setup.form.dot(&x.fin, &beta.fin) != qi(0)).collect();
            let [nu] = nbrs[..] else {
                return Err(Error::Internal("the extra simple root should have one neighbour".into()));
            };
            let gamma = setup.a.reflect_root(nu, beta);
            let (ig, inu) = (node_of(&setup, &gamma)?, node_of(&setup, nu)?);
            entries.push(entry(&setup, fundamental(&setup, ig, qi(0))?, format!("L~{ig}"))?);
            let s = beta.delta;
            entries.push(entry(&setup, fundamental(&setup, inu, -s)?, format!("L~{inu} - {}d", fmt_q(&s)))?);
            power = 0;
        }
        SoCase::OddDetOne | SoCase::EvenDetMinusOne => {
            let pairs: Vec<usize> = (0..sys.orbits.len()).filter(|&j| sys.orbits[j].len() == 2).collect();
            let [j] = pairs[..] else {
                return Err(Error::Internal(format!("expected one orbit of size two, found {}", pairs.len())));
            };
            let i = node_of(&setup, &sys.alpha[j])?;
            entries.push(entry(&setup, fundamental(&setup, i, qi(0))?, format!("L~{i}"))?);
            power = 1;
        }
    }
    let report = MultipletReport {
        setup: setup.name.clone(),
        entries,
        power,
        length_bound: 0,
        complete: true,
        cutoff: None,
    };
    Ok((setup, report))
}

/// Kac's numbering of the untwisted datum of `so(V)`: the affine node, the vector node and the
/// spin nodes (or the short node when `dim V` is odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacLabels {
    pub zero: usize,
    pub vector: usize,
    pub spin: Vec<usize>,
}

pub fn kac_labels(setup: &DiracSetup) -> Result<KacLabels> {
    let a = &setup.a;
    let zeros: Vec<usize> = (0..a.simple.len()).filter(|&i| a.simple[i].delta > qi(0)).collect();
    let [zero] = zeros[..] else {
        return Err(Error::Invalid("a is not untwisted".into()));
    };
    let top = setup
        .spec
        .table
        .entries
        .keys()
        .map(|(_, w)| w.clone())
        .max_by_key(|w| setup.form.dot(w, &a.positivity))
        .ok_or_else(|| Error::Invalid("empty p".into()))?;
    let top = Weight::new(top, vec![qi(0); a.num_slots], qi(0));
    let labels: Vec<Q> = a.simple.iter().map(|r| a.coroot_pair(&top, r)).collect();
    let ones: Vec<usize> = (0..labels.len()).filter(|&i| i != zero && labels[i] == qi(1)).collect();
    let [vector] = ones[..] else {
        return Err(Error::Internal("the vector representation is not fundamental".into()));
    };
    if labels.iter().enumerate().any(|(i, l)| i != vector && i != zero && *l != qi(0)) {
        return Err(Error::Internal("the vector representation is not fundamental".into()));
    }
    let norms: Vec<Q> = a.simple.iter().map(|r| setup.form.norm2(&r.fin)).collect();
    let min = norms.iter().min().copied().unwrap();
    let max = norms.iter().max().copied().unwrap();
    let spin: Vec<usize> = if min != max {
        (0..norms.len()).filter(|&i| norms[i] == min).collect()
    } else {
        (0..a.marks.len()).filter(|&i| a.marks[i] == 1 && i != zero && i != vector).collect()
    };
    Ok(KacLabels { zero, vector, spin })
}

/// Closed forms for `T = -I` and `T = I` in Kac's numbering, as a weight multiset.
pub fn corollary(n: usize, minus: bool) -> Result<(DiracSetup, BTreeMap<Weight, i64>)> {
    let t = if minus { TClass::minus_identity(n) } else { TClass::identity() };
    let setup = so_pair_setup(n, &t)?;
    let k = kac_labels(&setup)?;
    let mut out = BTreeMap::new();
    if minus {
        out.insert(fundamental(&setup, k.zero, qi(0))?, 1);
        *out.entry(fundamental(&setup, k.vector, qr(-1, 2))?).or_insert(0) += 1;
    } else if n % 2 == 0 {
        for &s in &k.spin {
            *out.entry(fundamental(&setup, s, qi(0))?).or_insert(0) += 1;
        }
    } else {
        let [s] = k.spin[..] else {
            return Err(Error::Internal("expected one short node".into()));
        };
        out.insert(fundamental(&setup, s, qi(0))?, 2);
    }
    Ok((setup, out))
}

/// Compares `ch F^T(V)` with the closed-form modules at depth `d`.
pub fn closed_form_character_check(n: usize, t: &TClass, d: Q) -> Result<Vec<Discrepancy>> {
    let (setup, report) = so_pair_decomposition(n, t)?;
    let lhs = setup.spec.graded_character(d).total;
    let rhs = setup.multiplet_character(&report, d, false)?;
    restrict_and_compare(&lhs, &rhs, d)
}

/// The four classes used for each `dim V`: `I`, `-I`, a rotation of order three and a
/// reflection composed with a rotation of order four.
pub fn catalog_classes(n: usize) -> Vec<TClass> {
    vec![
        TClass::identity(),
        TClass::minus_identity(n),
        TClass { angles: vec![qr(1, 3)], reflect: false },
        TClass { angles: vec![qr(1, 4)], reflect: true },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_pairs_build() {
        for n in 5..=8 {
            for t in catalog_classes(n) {
                let (s, r) = so_pair_decomposition(n, &t).unwrap_or_else(|e| panic!("{n} {t:?}: {e}"));
                s.check_hypotheses().unwrap();
                assert!(r.entries.iter().all(|e| e.dirac_square == qi(0) && e.dominant));
            }
        }
    }

    #[test]
    fn closed_forms_match_the_kernel() {
        for n in 5..=8 {
            for t in catalog_classes(n) {
                let (s, r) = so_pair_decomposition(n, &t).unwrap();
                let k = s.kernel_decomposition(8, None).unwrap();
                assert!(k.complete);
                assert_eq!(r.power, k.power);
                assert_eq!(r.weight_multiset(), k.weight_multiset(), "{n} {}", t.tag());
            }
        }
    }

    #[test]
    fn minus_identity_character() {
        let d = qi(2);
        assert!(closed_form_character_check(5, &TClass::minus_identity(5), d).unwrap().is_empty());
        assert!(closed_form_character_check(6, &catalog_classes(6)[3], d).unwrap().is_empty());
    }

    #[test]
    fn kac_numbering_forms() {
        for n in 5..=8 {
            for minus in [false, true] {
                let (_, expect) = corollary(n, minus).unwrap();
                let t = if minus { TClass::minus_identity(n) } else { TClass::identity() };
                let (_, r) = so_pair_decomposition(n, &t).unwrap();
                assert_eq!(r.weight_multiset(), expect, "{n} {minus}");
            }
        }
    }
}
