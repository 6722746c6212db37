//! Level-one decompositions for symmetric pairs `(g, k)`: the basic+vector module (`sigma = mu`)
//! and the spin module (`sigma = I`), computed from inversion sets rather than the generic
//! coset test.

use std::collections::HashSet;

use crate::coxeter::AffWeylElt;
use crate::dirac::{DiracSetup, MultipletEntry, MultipletReport};
use crate::error::{Error, Result};
use crate::linalg::{qi, Matrix, Q};
use crate::rootcore::{DiagramAut, FiniteRootSystem, Series};
use crate::twistaff::{AffRoot, TwistedAutomorphism, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelOneKind {
    BasicVector,
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinCase {
    /// `g` simple, `mu` inner.
    Inner,
    /// `g = s + s` with the flip.
    NotSimple,
    /// `g` of type `A_{2n+1}`, `D_n` or `E_6`, `mu` outer.
    Outer,
    /// `g` of type `A_{2n}`, `mu` outer.
    OuterEvenA,
}

impl SpinCase {
    pub fn classify(rs: &FiniteRootSystem, mu: &TwistedAutomorphism) -> Result<Self> {
        if mu.order(rs)? != 2 {
            return Err(Error::Unsupported("mu is not an involution".into()));
        }
        match rs.components.len() {
            1 => {}
            2 if rs.components[0] == rs.components[1] && mu.eta.orbits().iter().all(|o| o.len() == 2) => {
                let n = rs.components[0].rank;
                if mu.eta.perm.iter().enumerate().any(|(i, &j)| j != (i + n) % (2 * n)) {
                    return Err(Error::Unsupported("mu is not the flip of two copies".into()));
                }
                return Ok(SpinCase::NotSimple);
            }
            _ => return Err(Error::Unsupported("mu is not indecomposable".into())),
        }
        if mu.eta.is_identity() {
            return Ok(SpinCase::Inner);
        }
        let t = rs.components[0];
        Ok(if t.series == Series::A && t.rank % 2 == 0 { SpinCase::OuterEvenA } else { SpinCase::Outer })
    }
}

/// Setup for the pair with `sigma = mu` (basic+vector) or `sigma = I` (spin).
pub fn level_one_setup(name: &str, rs: &FiniteRootSystem, mu: &TwistedAutomorphism, kind: LevelOneKind) -> Result<DiracSetup> {
    let sigma = match kind {
        LevelOneKind::BasicVector => mu.clone(),
        LevelOneKind::Spin => TwistedAutomorphism::new(rs, DiagramAut::identity(rs.rank()), vec![qi(0); rs.rank()])?,
    };
    let s = DiracSetup::from_diagram(name, rs, &sigma, mu)?;
    if !s.symmetric {
        return Err(Error::Unsupported("level-one rules need a symmetric pair".into()));
    }
    s.check_hypotheses()?;
    Ok(s)
}

/// Elements of the folded group up to `length_bound` whose inversion set lies in `allowed`,
/// each paired with that inversion set. Prefixes of such elements have the same property.
fn admissible(
    s: &DiracSetup,
    length_bound: usize,
    allowed: impl Fn(&AffRoot) -> bool,
) -> (Vec<(AffWeylElt, Vec<AffRoot>)>, bool) {
    let sys = &s.sys;
    let gens = sys.generators();
    let id = AffWeylElt::identity(s.form.dim());
    let mut seen: HashSet<AffWeylElt> = HashSet::from([id.clone()]);
    let mut out = vec![(id, Vec::new())];
    let mut frontier = vec![0usize];
    for len in 0..=length_bound {
        let mut next = Vec::new();
        for &i in &frontier {
            let (w, inv) = out[i].clone();
            for (k, g) in gens.iter().enumerate() {
                let r = w.act_root(&s.form, sys.simple(k));
                if !sys.is_positive(&r) || !allowed(&r) {
                    continue;
                }
                let n = w.compose(g);
                if !seen.insert(n.clone()) {
                    continue;
                }
                if len == length_bound {
                    return (out, false);
                }
                let mut inv = inv.clone();
                inv.push(r);
                out.push((n, inv));
                next.push(out.len() - 1);
            }
        }
        if next.is_empty() {
            return (out, true);
        }
        frontier = next;
    }
    (out, false)
}

/// `rho'` with `beta(rho') = 1` on the simple roots of the folded group, as a weight.
pub fn rho_prime(s: &DiracSetup) -> Result<Weight> {
    let sys = &s.sys;
    let basis = &sys.fixed.basis;
    let rows: Vec<Vec<Q>> = (0..sys.rank())
        .map(|k| {
            let b = sys.simple(k);
            let mut row: Vec<Q> = basis.iter().map(|v| s.form.dot(v, &b.fin)).collect();
            row.push(b.delta);
            row
        })
        .collect();
    let m = Matrix::from_rows(&rows);
    let ones = vec![qi(1); rows.len()];
    let x = m.solve(&ones).filter(|x| m.mul_vec(x) == ones).ok_or_else(|| Error::Internal("no rho' for the folded group".into()))?;
    let mut fin = vec![qi(0); s.form.dim()];
    for (c, v) in x.iter().zip(basis) {
        for (f, e) in fin.iter_mut().zip(v) {
            *f += *c * *e;
        }
    }
    Ok(Weight::new(fin, vec![x[basis.len()]], qi(0)))
}

fn report(s: &DiracSetup, entries: Vec<MultipletEntry>, length_bound: usize, complete: bool) -> MultipletReport {
    MultipletReport { setup: s.name.clone(), entries, power: s.power(), length_bound, complete, cutoff: None }
}

fn make_entry(s: &DiracSetup, w: &AffWeylElt, xi: Weight) -> Result<MultipletEntry> {
    Ok(MultipletEntry {
        dirac_square: s.dirac_square(&xi)?,
        dominant: s.a.is_dominant_integral(&xi),
        depth: -xi.delta,
        length: w.length(),
        word: w.word.clone(),
        xi,
        label: None,
    })
}

/// Level-one decomposition by the rule of the matching case.
pub fn level_one_decomposition(
    name: &str,
    rs: &FiniteRootSystem,
    mu: &TwistedAutomorphism,
    kind: LevelOneKind,
    length_bound: usize,
) -> Result<(DiracSetup, MultipletReport)> {
    let case = SpinCase::classify(rs, mu)?;
    let s = level_one_setup(name, rs, mu, kind)?;
    let not_in_a = |r: &AffRoot| !s.a.is_root(r);
    let top = s.spec.top.clone();
    if kind == LevelOneKind::BasicVector || case == SpinCase::Inner {
        let (ws, complete) = admissible(&s, length_bound, not_in_a);
        let mut entries = Vec::new();
        for (w, inv) in &ws {
            let xi = inv.iter().fold(top.clone(), |x, r| x.add_root(qi(-1), r));
            entries.push(make_entry(&s, w, xi)?);
        }
        let rep = report(&s, entries, length_bound, complete);
        return Ok((s, rep));
    }
    if case == SpinCase::NotSimple {
        let id = AffWeylElt::identity(s.form.dim());
        let e = make_entry(&s, &id, s.a.rho_hat.clone())?;
        let rep = report(&s, vec![e], length_bound, true);
        return Ok((s, rep));
    }
    let x = rho_prime(&s)?;
    let a0 = s.form.norm2(&s.g.simple[0].fin) / qi(2);
    let rho = s.to_a(&s.g.rho_hat);
    if s.to_a(&x.scale(a0)) != rho {
        return Err(Error::Internal("rho_hat is not a_0 nu(rho')".into()));
    }
    let (ws, complete) = match case {
        SpinCase::Outer => admissible(&s, length_bound, not_in_a),
        _ => {
            let short = s.a.simple.iter().map(|r| s.form.norm2(&r.fin)).filter(|n| *n > qi(0)).min().unwrap_or(qi(0));
            admissible(&s, length_bound, |r: &AffRoot| {
                let half = AffRoot::new(r.fin.iter().map(|c| *c / qi(2)).collect(), qi(0));
                r.delta.is_integer()
                    && r.delta.to_integer() % 2 != 0
                    && s.a.is_root(&half)
                    && s.form.norm2(&half.fin) == short
            })
        }
    };
    let mut entries = Vec::new();
    for (w, _) in &ws {
        let xi = s.to_a(&w.act(&s.form, &x).scale(a0)).sub(&s.a.rho_hat);
        entries.push(make_entry(&s, w, xi)?);
    }
    let rep = report(&s, entries, length_bound, complete);
    Ok((s, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    fn rs(s: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
    }

    fn pairs() -> Vec<(&'static str, FiniteRootSystem, TwistedAutomorphism)> {
        let mut out = Vec::new();
        let a1 = rs("A1");
        out.push(("sl2-gl1", a1.clone(), TwistedAutomorphism::inner(&a1, vec![qr(1, 2)]).unwrap()));
        let a2 = rs("A2");
        out.push(("sl3-gl2", a2.clone(), TwistedAutomorphism::inner(&a2, vec![qr(1, 2), qi(0)]).unwrap()));
        let swap = DiagramAut::new(&a2, vec![1, 0]).unwrap();
        out.push(("sl3-so3", a2.clone(), TwistedAutomorphism::new(&a2, swap, vec![qi(0); 2]).unwrap()));
        let c2 = rs("C2");
        out.push(("sp4-gl2", c2.clone(), TwistedAutomorphism::inner(&c2, vec![qi(0), qr(1, 2)]).unwrap()));
        out.push(("sp4-sp2sp2", c2.clone(), TwistedAutomorphism::inner(&c2, vec![qr(1, 2), qi(0)]).unwrap()));
        let a3 = rs("A3");
        let swap = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        out.push(("sl4-sp4", a3.clone(), TwistedAutomorphism::new(&a3, swap, vec![qi(0); 3]).unwrap()));
        let d = rs("A1+A1");
        let flip = DiagramAut::new(&d, vec![1, 0]).unwrap();
        out.push(("sl2-diag", d.clone(), TwistedAutomorphism::new(&d, flip, vec![qi(0); 2]).unwrap()));
        out
    }

    #[test]
    fn matches_kernel() {
        for (name, r, mu) in pairs() {
            for kind in [LevelOneKind::BasicVector, LevelOneKind::Spin] {
                let (s, rep) = match level_one_decomposition(name, &r, &mu, kind, 6) {
                    Ok(x) => x,
                    Err(e) => panic!("{name} {kind:?}: {e}"),
                };
                let k = s.kernel_decomposition(6, None).unwrap();
                assert_eq!(rep.weight_multiset(), k.weight_multiset(), "{name} {kind:?}");
                assert!(rep.entries.iter().all(|e| e.dirac_square == qi(0) && e.dominant));
            }
        }
    }

    #[test]
    fn kernel_characters() {
        for (name, r, mu) in pairs() {
            for kind in [LevelOneKind::BasicVector, LevelOneKind::Spin] {
                let s = level_one_setup(name, &r, &mu, kind).unwrap();
                let bad = s.theorem_character_check(qi(2), 40).unwrap();
                assert!(bad.is_empty(), "{name} {kind:?}: {:?}", bad.first());
            }
        }
    }

    #[test]
    fn diagonal_pair() {
        let (_, r, mu) = pairs().pop().unwrap();
        let (s, rep) = level_one_decomposition("sl2-diag", &r, &mu, LevelOneKind::Spin, 6).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert_eq!(rep.entries[0].xi, s.a.rho_hat);
        assert_eq!(rep.multiplicity(), 2);
        assert_eq!(s.to_a(&s.g.rho_hat), s.a.rho_hat.scale(qi(2)));
    }
}
