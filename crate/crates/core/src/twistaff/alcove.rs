use crate::coxeter::affweyl::AffWeylElt;
use crate::error::{Error, Result};
use crate::linalg::{frac, qi, qr, Form, Vector, Q};
use crate::rootcore::{DiagramAut, FiniteRootSystem, FoldedDatum};
use crate::twistaff::datum::simple_order_key;
use crate::twistaff::weight::AffRoot;
use crate::twistaff::TwistedAutomorphism;

const WALK_LIMIT: usize = 100_000;

/// Simple roots of `L(g, eta)` for one folded piece: `delta / r - theta` first, then the folded
/// simple roots of the piece.
pub fn eta_simple_roots(fd: &FoldedDatum, piece: usize) -> Vec<AffRoot> {
    let p = &fd.pieces[piece];
    let mut out = vec![AffRoot::new(crate::linalg::neg(&p.theta), qr(1, p.order as i64))];
    out.extend(p.nodes.iter().map(|&k| AffRoot::new(fd.simple_roots[k].clone(), qi(0))));
    out
}

fn root_value(form: &Form, a: &AffRoot, x: &[Q]) -> Q {
    form.dot(&a.fin, x) + a.delta
}

/// Element `w` of the affine Weyl group of the piece with `w(x)` in the closed fundamental
/// alcove. Walls are tried in the order of `eta_simple_roots`.
pub fn alcove_reduce(form: &Form, fd: &FoldedDatum, piece: usize, x: &[Q]) -> Result<AffWeylElt> {
    let simple = eta_simple_roots(fd, piece);
    let mut w = AffWeylElt::identity(form.dim());
    let mut pt = x.to_vec();
    for _ in 0..WALK_LIMIT {
        match simple.iter().position(|a| root_value(form, a, &pt) < qi(0)) {
            None => return Ok(w),
            Some(i) => {
                let s = AffWeylElt::reflection(form, &simple[i]).with_word(vec![i]);
                pt = s.act_point(&pt);
                w = s.compose(&w);
            }
        }
    }
    Err(Error::Internal("alcove walk did not terminate".into()))
}

/// `alpha -> w^{-1}(alpha) + (w^{-1} alpha)(h) delta`.
pub fn transport(form: &Form, w: &AffWeylElt, x_h: &[Q], alpha: &AffRoot) -> AffRoot {
    let b = w.inverse().act_root(form, alpha);
    let shift = form.dot(&b.fin, x_h);
    AffRoot::new(b.fin, b.delta + shift)
}

#[derive(Clone, Debug)]
pub struct AlcoveReduction {
    pub w: AffWeylElt,
    /// `w(h)`, in the fundamental alcove.
    pub point: Vector,
    /// Degrees `s_i` of the transported simple roots.
    pub marks: Vec<Q>,
    pub roots: Vec<AffRoot>,
}

/// Simple roots of `L(g, sigma)` on one piece, transported from `L(g, eta)` by the alcove
/// element, then adjusted inside the degree-zero Weyl group until they are positive for `v`.
pub fn prop32(form: &Form, fd: &FoldedDatum, piece: usize, x_h: &[Q], v: &[Q]) -> Result<AlcoveReduction> {
    let simple = eta_simple_roots(fd, piece);
    let mut w = alcove_reduce(form, fd, piece, x_h)?;
    for _ in 0..WALK_LIMIT {
        let roots: Vec<AffRoot> = simple.iter().map(|a| transport(form, &w, x_h, a)).collect();
        let bad = roots.iter().position(|r| r.delta == qi(0) && form.dot(&r.fin, v) < qi(0));
        match bad {
            Some(i) => {
                let s = AffWeylElt::reflection(form, &simple[i]).with_word(vec![i]);
                w = s.compose(&w);
            }
            None => {
                let marks = roots.iter().map(|r| r.delta).collect();
                let point = w.act_point(x_h);
                return Ok(AlcoveReduction { w, point, marks, roots });
            }
        }
    }
    Err(Error::Internal("degree-zero adjustment did not terminate".into()))
}

/// All simple roots of `L(g, sigma)` obtained piecewise from the alcove construction, together
/// with the product of the per-piece Weyl elements.
pub fn twisted_simple_roots(
    rs: &FiniteRootSystem,
    sigma: &TwistedAutomorphism,
    v: &[Q],
) -> Result<(Vec<AffRoot>, AffWeylElt)> {
    let fd = sigma.folded(rs)?;
    let x_h = rs.dual_vector(&sigma.values);
    let mut all = Vec::new();
    let mut w = AffWeylElt::identity(rs.ambient_dim());
    for p in 0..fd.pieces.len() {
        let red = prop32(&rs.form, &fd, p, &x_h, v)?;
        all.extend(red.roots);
        w = w.compose(&red.w);
    }
    all.sort_by(|a, b| simple_order_key(a).cmp(&simple_order_key(b)));
    Ok((all, w))
}

/// Result of normalizing a commuting pair `(sigma, mu)`.
#[derive(Clone, Debug)]
pub struct NormalizedPair {
    pub sigma: TwistedAutomorphism,
    pub w: AffWeylElt,
}

/// Rewrites `sigma = eta exp(2 pi i ad h)` with `0 <= alpha_i(h) < 1`, checks `mu(h) = h`, and
/// checks that the alcove element commutes with `mu`.
pub fn normalize_sigma_mu(
    rs: &FiniteRootSystem,
    sigma: &TwistedAutomorphism,
    mu: &TwistedAutomorphism,
) -> Result<NormalizedPair> {
    let n = rs.rank();
    let pe = &sigma.eta.perm;
    let pm = &mu.eta.perm;
    if (0..n).any(|i| pe[pm[i]] != pm[pe[i]]) {
        return Err(Error::Hypothesis("diagram parts of sigma and mu do not commute".into()));
    }
    for i in 0..n {
        let d = sigma.values[pm[i]] - sigma.values[i] - (mu.values[pe[i]] - mu.values[i]);
        if !d.is_integer() {
            return Err(Error::Hypothesis("sigma and mu do not commute".into()));
        }
    }
    let values: Vec<Q> = sigma.values.iter().map(|&a| frac(a)).collect();
    if (0..n).any(|i| values[pm[i]] != values[i]) {
        return Err(Error::Hypothesis("mu does not fix the normalized element h".into()));
    }
    let normalized = TwistedAutomorphism::new(rs, sigma.eta.clone(), values)?;
    let (_, w) = twisted_simple_roots(rs, &normalized, &rs.rho)?;
    let t = DiagramAut { perm: pm.clone() }.ambient_matrix(rs);
    if t.mul(&w.lin) != w.lin.mul(&t) || t.mul_vec(&w.trans) != w.trans {
        return Err(Error::Hypothesis("alcove element does not commute with mu".into()));
    }
    Ok(NormalizedPair { sigma: normalized, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::standard_automorphism;

    fn rs(s: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
    }

    fn check(r: &FiniteRootSystem, sigma: &TwistedAutomorphism) {
        let d = sigma.datum(r).unwrap();
        let (alc, _) = twisted_simple_roots(r, sigma, &r.rho).unwrap();
        assert_eq!(alc, d.simple, "simple roots disagree for {:?}", sigma.values);
        assert!(d.rho_check().iter().all(|c| *c == qi(1)), "{:?}", d.rho_check());
    }

    #[test]
    fn alcove_path_matches_indecomposables() {
        let a2 = rs("A2");
        check(&a2, &TwistedAutomorphism::inner(&a2, vec![qi(0), qi(0)]).unwrap());
        check(&a2, &TwistedAutomorphism::inner(&a2, vec![qr(1, 3), qr(1, 3)]).unwrap());
        check(&a2, &TwistedAutomorphism::inner(&a2, vec![qr(5, 4), qr(-2, 3)]).unwrap());
        let flip = DiagramAut::new(&a2, vec![1, 0]).unwrap();
        check(&a2, &TwistedAutomorphism::new(&a2, flip.clone(), vec![qi(0), qi(0)]).unwrap());
        check(&a2, &TwistedAutomorphism::new(&a2, flip, vec![qr(1, 4), qr(1, 4)]).unwrap());
        let d4 = rs("D4");
        let tri = DiagramAut::new(&d4, standard_automorphism(d4.components[0], 3).unwrap()).unwrap();
        check(&d4, &TwistedAutomorphism::new(&d4, tri, vec![qi(0); 4]).unwrap());
        let b3 = rs("B3");
        check(&b3, &TwistedAutomorphism::inner(&b3, vec![qr(1, 2), qi(0), qr(1, 3)]).unwrap());
        let g2 = rs("G2");
        check(&g2, &TwistedAutomorphism::inner(&g2, vec![qr(-1, 2), qr(1, 5)]).unwrap());
        let e6 = rs("E6");
        let f = DiagramAut::new(&e6, standard_automorphism(e6.components[0], 2).unwrap()).unwrap();
        check(&e6, &TwistedAutomorphism::new(&e6, f, vec![qi(0); 6]).unwrap());
        let a4 = rs("A4");
        let f = DiagramAut::new(&a4, standard_automorphism(a4.components[0], 2).unwrap()).unwrap();
        check(&a4, &TwistedAutomorphism::new(&a4, f, vec![qr(1, 3), qi(0), qi(0), qr(1, 3)]).unwrap());
        let a1a1 = rs("A1+A1");
        let sw = DiagramAut::new(&a1a1, vec![1, 0]).unwrap();
        check(&a1a1, &TwistedAutomorphism::new(&a1a1, sw, vec![qr(1, 2), qr(1, 2)]).unwrap());
    }

    #[test]
    fn transport_is_a_bijection_on_windows() {
        let a3 = rs("A3");
        let flip = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        let sigma = TwistedAutomorphism::new(&a3, flip.clone(), vec![qr(1, 3), qr(2, 3), qr(1, 3)]).unwrap();
        let eta = TwistedAutomorphism::new(&a3, flip, vec![qi(0); 3]).unwrap();
        let ds = sigma.datum(&a3).unwrap();
        let de = eta.datum(&a3).unwrap();
        let x_h = a3.dual_vector(&sigma.values);
        let (_, w) = twisted_simple_roots(&a3, &sigma, &a3.rho).unwrap();
        for cand in [AffWeylElt::identity(a3.ambient_dim()), w] {
            let mut seen = 0;
            for ((class, fin), _) in &de.table.entries {
                for m in -3..3 {
                    let a = AffRoot::new(fin.clone(), *class + qi(m));
                    if a.is_imaginary() {
                        continue;
                    }
                    let b = transport(&a3.form, &cand, &x_h, &a);
                    assert_eq!(de.multiplicity(&a), ds.multiplicity(&b));
                    seen += 1;
                }
            }
            assert!(seen > 0);
        }
    }

    #[test]
    fn normalization_reduces_values() {
        let a3 = rs("A3");
        let flip = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        let sigma = TwistedAutomorphism::inner(&a3, vec![qr(3, 2), qi(-1), qr(3, 2)]).unwrap();
        let mu = TwistedAutomorphism::new(&a3, flip, vec![qi(0); 3]).unwrap();
        let p = normalize_sigma_mu(&a3, &sigma, &mu).unwrap();
        assert_eq!(p.sigma.values, vec![qr(1, 2), qi(0), qr(1, 2)]);
        let bad = TwistedAutomorphism::inner(&a3, vec![qr(1, 2), qi(0), qi(0)]).unwrap();
        assert!(normalize_sigma_mu(&a3, &bad, &mu).is_err());
    }
}
