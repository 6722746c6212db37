use std::collections::{BTreeSet, HashSet};

use num::Signed;

use crate::coxeter::affweyl::AffWeylElt;
use crate::coxeter::weyl::{enumerate_group, simple_reflection};
use crate::error::{Error, Result};
use crate::linalg::{add, is_zero, qi, qr, scale, Form, Matrix, Subspace, Vector, Q};
use crate::twistaff::{AffRoot, AffineRootDatum};

/// Outcome of reducing a restricted root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Red {
    Root(AffRoot),
    Isotropic,
}

/// The folded group generated by reflections in the orbit averages `alpha_J` of `mu` on the
/// simple roots, together with its root system.
#[derive(Clone, Debug)]
pub struct RestrictedSystem {
    pub form: Form,
    /// `(h_0^mu)^*` inside the ambient space.
    pub fixed: Subspace,
    pub mu: Matrix,
    /// `mu` as a permutation of the simple roots.
    pub perm: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    pub alpha: Vec<AffRoot>,
    pub finite: Vec<bool>,
    /// Longest element of each finite-type orbit; identity otherwise.
    pub w0: Vec<AffWeylElt>,
    /// Orbit indices making up `P`.
    pub p: Vec<usize>,
    coords: Matrix,
}

fn stack(r: &AffRoot) -> Vector {
    let mut v = r.fin.clone();
    v.push(r.delta);
    v
}

impl RestrictedSystem {
    pub fn new(d: &AffineRootDatum, mu: &Matrix) -> Result<Self> {
        let n = d.simple.len();
        let mut perm = Vec::with_capacity(n);
        for a in &d.simple {
            let img = AffRoot::new(mu.mul_vec(&a.fin), a.delta);
            match d.simple.iter().position(|b| *b == img) {
                Some(j) => perm.push(j),
                None => return Err(Error::Hypothesis("mu does not permute the simple roots".into())),
            }
        }
        let comp_of = |i: usize| d.components.iter().position(|c| c.contains(&i)).unwrap();
        let nc = d.components.len();
        let mut reach = BTreeSet::new();
        let mut cur = 0;
        loop {
            if !reach.insert(cur) {
                break;
            }
            cur = comp_of(perm[d.components[cur][0]]);
        }
        if reach.len() != nc {
            return Err(Error::Unsupported("mu acts on the affine components with more than one orbit".into()));
        }

        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut o = vec![];
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                o.push(j);
                j = perm[j];
            }
            o.sort();
            orbits.push(o);
        }
        let form = d.form.clone();
        let dim = form.dim();
        let mut alpha = Vec::new();
        let mut finite = Vec::new();
        let mut w0 = Vec::new();
        for o in &orbits {
            let k = qr(1, o.len() as i64);
            let fin = o.iter().fold(vec![qi(0); dim], |acc, &i| add(&acc, &d.simple[i].fin));
            let delta: Q = o.iter().map(|&i| d.simple[i].delta).sum();
            let a = AffRoot::new(scale(k, &fin), delta * k);
            let fins: Vec<Vector> = o.iter().map(|&i| d.simple[i].fin.clone()).collect();
            let gram = form.gram_of(&fins);
            let fin_type = gram.rank() == o.len() && gram.det() > qi(0);
            if fin_type != (form.norm2(&a.fin) != qi(0)) {
                return Err(Error::Internal("orbit type and isotropy of its average disagree".into()));
            }
            w0.push(if fin_type { longest_element(d, o) } else { AffWeylElt::identity(dim) });
            alpha.push(a);
            finite.push(fin_type);
        }
        let p: Vec<usize> = (0..orbits.len()).filter(|&k| finite[k]).collect();
        let avg = crate::linalg::group_average(&[mu.clone()], dim);
        let fixed = d.space.fixed_by(&form, &avg);
        let coords = Matrix::from_cols(&alpha.iter().map(stack).collect::<Vec<_>>());
        if coords.rank() != alpha.len() {
            return Err(Error::Internal("orbit averages are linearly dependent".into()));
        }
        Ok(RestrictedSystem { form, fixed, mu: mu.clone(), perm, orbits, alpha, finite, w0, p, coords })
    }

    /// Restriction of an affine root to `h^mu`.
    pub fn restrict(&self, r: &AffRoot) -> AffRoot {
        AffRoot::new(self.fixed.project(&r.fin), r.delta)
    }

    /// Coordinates in the basis of all orbit averages.
    pub fn coordinates(&self, r: &AffRoot) -> Option<Vector> {
        let b = stack(r);
        let x = self.coords.solve(&b)?;
        (self.coords.mul_vec(&x) == b).then_some(x)
    }

    pub fn height(&self, r: &AffRoot) -> Option<Q> {
        self.coordinates(r).map(|c| c.iter().sum())
    }

    /// Sign of a nonzero element of the `alpha_J` lattice cone, if coherent.
    pub fn sign(&self, r: &AffRoot) -> Option<i32> {
        let c = self.coordinates(r)?;
        if c.iter().all(|x| *x >= qi(0)) && c.iter().any(|x| *x > qi(0)) {
            Some(1)
        } else if c.iter().all(|x| *x <= qi(0)) && c.iter().any(|x| *x < qi(0)) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_positive(&self, r: &AffRoot) -> bool {
        self.sign(r) == Some(1)
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    pub fn simple(&self, k: usize) -> &AffRoot {
        &self.alpha[self.p[k]]
    }

    /// Reflection in the `k`-th element of `P`.
    pub fn generator(&self, k: usize) -> AffWeylElt {
        AffWeylElt::reflection(&self.form, self.simple(k)).with_word(vec![k])
    }

    pub fn generators(&self) -> Vec<AffWeylElt> {
        (0..self.rank()).map(|k| self.generator(k)).collect()
    }

    pub fn enumerate(&self, max_len: usize) -> Vec<AffWeylElt> {
        enumerate_group(self.form.dim(), &self.generators(), max_len)
    }

    /// Element of the commuting subgroup obtained by replacing each letter by `(w_0)_J`.
    pub fn lift(&self, w: &AffWeylElt) -> AffWeylElt {
        let dim = self.form.dim();
        let mut out = AffWeylElt::identity(dim);
        for &k in &w.word {
            out = out.compose(&self.w0[self.p[k]]);
        }
        out.word = w.word.clone();
        out
    }

    /// Whether `w` agrees with `v` on `h^mu`.
    pub fn agrees_on_fixed(&self, w: &AffWeylElt, v: &AffWeylElt) -> bool {
        w.trans == v.trans && self.fixed.basis.iter().all(|x| w.lin.mul_vec(x) == v.lin.mul_vec(x))
    }

    pub fn commutes_with_mu(&self, w: &AffWeylElt) -> bool {
        self.mu.mul(&w.lin) == w.lin.mul(&self.mu) && self.mu.mul_vec(&w.trans) == w.trans
    }

    /// `Red(beta)` by induction on restricted height.
    pub fn red(&self, beta: &AffRoot) -> Result<Red> {
        if is_zero(&beta.fin) && beta.delta == qi(0) {
            return Err(Error::Invalid("zero is not a restricted root".into()));
        }
        match self.sign(beta) {
            Some(1) => self.red_positive(beta),
            Some(_) => Ok(match self.red_positive(&beta.neg())? {
                Red::Root(r) => Red::Root(r.neg()),
                Red::Isotropic => Red::Isotropic,
            }),
            None => Err(Error::Invalid("not the restriction of a root".into())),
        }
    }

    fn red_positive(&self, beta: &AffRoot) -> Result<Red> {
        let mut cur = beta.clone();
        let mut path: Vec<usize> = Vec::new();
        loop {
            let hit = self.p.iter().position(|&j| self.form.dot(&cur.fin, &self.alpha[j].fin) > qi(0));
            let Some(k) = hit else {
                if self.form.norm2(&cur.fin) != qi(0) {
                    return Err(Error::Internal("antidominant restricted root is not isotropic".into()));
                }
                return Ok(Red::Isotropic);
            };
            let a = self.simple(k);
            let next = self.generator(k).act_root(&self.form, &cur);
            if self.sign(&next) == Some(1) {
                path.push(k);
                cur = next;
                continue;
            }
            let c = self.coordinates(&cur).unwrap();
            let j = self.p[k];
            if c.iter().enumerate().any(|(i, x)| i != j && *x != qi(0)) {
                return Err(Error::Internal("restricted root leaves the cone without being a multiple".into()));
            }
            let mut r = a.clone();
            for &k in path.iter().rev() {
                r = self.generator(k).act_root(&self.form, &r);
            }
            return Ok(Red::Root(r));
        }
    }

    /// Elements of `Sigma` with restricted height at most `h`, up to sign.
    pub fn sigma_positive(&self, h: i64) -> Vec<AffRoot> {
        let mut seen: HashSet<AffRoot> = HashSet::new();
        let mut out = Vec::new();
        let mut queue: Vec<AffRoot> = (0..self.rank()).map(|k| self.simple(k).clone()).collect();
        while let Some(r) = queue.pop() {
            let ht = self.height(&r).unwrap();
            if ht > qi(h) || !seen.insert(r.clone()) {
                continue;
            }
            out.push(r.clone());
            for k in 0..self.rank() {
                let s = self.generator(k).act_root(&self.form, &r);
                if self.is_positive(&s) && !seen.contains(&s) {
                    queue.push(s);
                }
            }
        }
        out.sort_by_key(|r| self.height(r).unwrap());
        out
    }

    /// Checks the five root-system properties of `Sigma` up to height `h`.
    pub fn check_root_system(&self, h: i64) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("Sigma property failed: {m}")));
        let pos = self.sigma_positive(h);
        let set: HashSet<AffRoot> = pos.iter().cloned().chain(pos.iter().map(|r| r.neg())).collect();
        for r in &set {
            for k in 0..self.rank() {
                let s = self.generator(k).act_root(&self.form, r);
                if self.height(&s).unwrap().abs() <= qi(h) && !set.contains(&s) {
                    return fail("reflection does not preserve Sigma");
                }
            }
            if self.form.norm2(&r.fin) == qi(0) {
                return fail("isotropic element");
            }
            let c = self.coordinates(r).unwrap();
            if c.iter().any(|x| !x.is_integer()) || self.sign(r).is_none() {
                return fail("coordinates are not sign-coherent integers");
            }
        }
        let ps: Vec<Vector> = (0..self.rank()).map(|k| stack(self.simple(k))).collect();
        if !ps.is_empty() && Matrix::from_rows(&ps).rank() != ps.len() {
            return fail("P is linearly dependent");
        }
        for a in &pos {
            for b in &pos {
                if a == b {
                    continue;
                }
                let ca = self.coordinates(a).unwrap();
                let cb = self.coordinates(b).unwrap();
                let i = ca.iter().position(|x| *x != qi(0)).unwrap();
                let ratio = cb[i] / ca[i];
                if cb.iter().zip(&ca).all(|(y, x)| *y == ratio * x) {
                    return fail("non-trivial multiple in Sigma");
                }
            }
        }
        Ok(())
    }

    /// `(w_0)_J` restricts to `s_{alpha_J}` and commutes with `mu`, for every finite-type orbit.
    pub fn check_restriction(&self) -> Result<()> {
        for (k, &j) in self.p.iter().enumerate() {
            if !self.commutes_with_mu(&self.w0[j]) {
                return Err(Error::Internal("longest element does not commute with mu".into()));
            }
            if !self.agrees_on_fixed(&self.w0[j], &self.generator(k)) {
                return Err(Error::Internal("longest element does not restrict to the reflection".into()));
            }
        }
        Ok(())
    }
}

/// Longest element of the finite parabolic subgroup on the simple roots `nodes`.
pub fn longest_element(d: &AffineRootDatum, nodes: &[usize]) -> AffWeylElt {
    let mut w = AffWeylElt::identity(d.dim());
    loop {
        let step = nodes.iter().find(|&&i| d.is_positive(&w.act_root(&d.form, &d.simple[i])));
        match step {
            Some(&i) => w = w.compose(&simple_reflection(d, i)),
            None => return w,
        }
    }
}
