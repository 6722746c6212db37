//! Asymptotic dimensions of integrable modules, conformal anomalies and the sum rules over
//! multiplets.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num::integer::Integer;

use crate::coxeter::AffWeylElt;
use crate::dirac::{DiracSetup, FiniteIdeal};
use crate::error::{Error, Result};
use crate::linalg::{add, is_zero, qi, scale, sub, to_f64, Form, Lattice, Matrix, Subspace, Vector, Q};
use crate::twistaff::{AffineRootDatum, Weight};

/// Data of one affine component needed to evaluate `a(lambda)`.
#[derive(Clone, Debug)]
pub struct ComponentAsdim {
    pub slot: usize,
    pub span: Subspace,
    /// Node whose removal leaves a finite Weyl group containing every real-root direction.
    pub special: usize,
    /// Point fixed by the reflections of the other nodes.
    pub vertex: Vector,
    /// Translation lattice.
    pub lattice: Lattice,
    pub dual_coxeter: Q,
    /// Positive roots of the system whose coroot lattice is `lattice`.
    pub positive: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct AsdimEngine {
    pub form: Form,
    pub components: Vec<ComponentAsdim>,
}

fn finite_closure(form: &Form, simple: &[Vector]) -> BTreeSet<Vector> {
    let mut roots: BTreeSet<Vector> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vector> = simple.to_vec();
    while let Some(r) = frontier.pop() {
        for s in simple {
            let x = form.reflect(s, &r);
            if roots.insert(x.clone()) {
                frontier.push(x);
            }
        }
    }
    roots.extend(roots.clone().into_iter().map(|r| crate::linalg::neg(&r)));
    roots
}

fn parallel(a: &[Q], b: &[Q]) -> bool {
    let Some(i) = b.iter().position(|x| *x != qi(0)) else { return false };
    let c = a[i] / b[i];
    c != qi(0) && scale(c, b) == a
}

/// Real-root directions in `span` and generators of the translation subgroup of the affine Weyl
/// group: `n a^v - m b^v` for parallel real roots `a + n delta`, `b + m delta`, and each `a^v`.
fn translation_data(d: &AffineRootDatum, span: &Subspace) -> (BTreeSet<Vector>, Vec<Vector>) {
    let form = &d.form;
    let mut lines: BTreeMap<Vector, Vec<Vector>> = BTreeMap::new();
    let mut dirs = BTreeSet::new();
    let mut gens = Vec::new();
    for (c, w) in d.table.entries.keys() {
        if is_zero(w) || !span.contains(w) {
            continue;
        }
        dirs.insert(w.clone());
        let lead = *w.iter().find(|x| **x != qi(0)).expect("nonzero");
        let (w, c) = if lead < qi(0) { (crate::linalg::neg(w), -*c) } else { (w.clone(), *c) };
        let co = scale(qi(2) / form.norm2(&w), &w);
        gens.push(co.clone());
        lines.entry(scale(qi(1) / if lead < qi(0) { -lead } else { lead }, &w)).or_default().push(scale(c, &co));
    }
    for vs in lines.values() {
        gens.extend(vs[1..].iter().map(|v| sub(v, &vs[0])));
    }
    (dirs, gens)
}

#[cfg(test)]
fn dual_basis(form: &Form, l: &Lattice) -> Result<Vec<Vector>> {
    let inv = l.gram(form).inverse().ok_or_else(|| Error::Internal("degenerate lattice".into()))?;
    Ok((0..l.rank())
        .map(|i| {
            let mut v = vec![qi(0); form.dim()];
            for (j, b) in l.basis.iter().enumerate() {
                v = add(&v, &scale(inv.get(i, j), b));
            }
            v
        })
        .collect())
}

#[cfg(test)]
/// Number of reflections in `simple` needed to bring `v` into the dominant chamber.
fn chamber_parity(form: &Form, simple: &[Vector], v: &[Q]) -> (Vector, usize) {
    let mut v = v.to_vec();
    let mut n = 0;
    while let Some(s) = simple.iter().find(|s| form.dot(&v, s) < qi(0)) {
        v = form.reflect(s, &v);
        n += 1;
    }
    (v, n)
}

impl ComponentAsdim {
    fn new(d: &AffineRootDatum, c: usize) -> Result<Self> {
        let form = &d.form;
        let nodes = &d.components[c];
        let span = d.component_spans[c].clone();
        let (dirs, gens) = translation_data(d, &span);
        let special = nodes
            .iter()
            .copied()
            .find(|&s| {
                let fin: Vec<Vector> = nodes.iter().filter(|&&i| i != s).map(|&i| d.simple[i].fin.clone()).collect();
                if Matrix::from_rows(&fin).rank() != span.dim() {
                    return false;
                }
                let roots = finite_closure(form, &fin);
                dirs.iter().all(|w| roots.iter().any(|r| parallel(w, r)))
            })
            .ok_or_else(|| Error::Unsupported(format!("component {c} has no special node")))?;
        let others: Vec<usize> = nodes.iter().copied().filter(|&i| i != special).collect();
        let rows: Vec<Vector> = others
            .iter()
            .map(|&i| span.basis.iter().map(|b| form.dot(b, &d.simple[i].fin)).collect())
            .collect();
        let rhs: Vector = others.iter().map(|&i| -d.simple[i].delta).collect();
        let m = Matrix::from_rows(&rows);
        let x = m.solve(&rhs).filter(|x| m.mul_vec(x) == rhs).ok_or_else(|| Error::Internal("no vertex".into()))?;
        let vertex = span.basis.iter().zip(&x).fold(vec![qi(0); form.dim()], |v, (b, c)| add(&v, &scale(*c, b)));
        let lattice = Lattice::generated_by(&gens, form.dim());
        if lattice.rank() != span.dim() {
            return Err(Error::Internal("translation lattice is not of full rank".into()));
        }
        let simple_fin: Vec<Vector> = others.iter().map(|&i| d.simple[i].fin.clone()).collect();
        let positive = positive_roots(form, &lattice, &finite_closure(form, &simple_fin))?;
        Ok(ComponentAsdim {
            slot: d.slot_of_component[c],
            span,
            special,
            vertex,
            lattice,
            dual_coxeter: d.casimir[d.slot_of_component[c]],
            positive,
        })
    }

    /// `|M*/kappa M|^{-1/2} prod_{alpha > 0} |2 sin(pi (lambda', alpha) / kappa)|`.
    fn s_value(&self, form: &Form, fin: &[Q], kappa: Q) -> f64 {
        let lp = sub(&self.span.project(fin), &scale(kappa, &self.vertex));
        let prod: f64 = self
            .positive
            .iter()
            .map(|a| (2.0 * (PI * to_f64(&(form.dot(&lp, a) / kappa).fract())).sin()).abs())
            .product();
        let r = self.span.dim() as i32;
        let index = to_f64(&kappa).powi(r) * to_f64(&self.lattice.discriminant(form));
        prod / index.sqrt()
    }
}

/// Positive roots `2c/|c|^2`, where `c` is the primitive lattice vector on each root line.
/// Fails unless these coroots generate the lattice and form a crystallographic system.
fn positive_roots(form: &Form, l: &Lattice, roots: &BTreeSet<Vector>) -> Result<Vec<Vector>> {
    let m = Matrix::from_cols(&l.basis);
    let mut coroots = Vec::new();
    for r in roots {
        if r.iter().find(|x| **x != qi(0)).is_none_or(|x| *x < qi(0)) {
            continue;
        }
        let x = m.solve(r).filter(|x| m.mul_vec(x) == *r).ok_or_else(|| Error::Internal("root outside the lattice span".into()))?;
        let den = x.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
        let g = x.iter().fold(0i64, |acc, c| acc.gcd(&(c.numer() * (den / c.denom()))));
        coroots.push(scale(Q::new(den, g), r));
    }
    let sub = Lattice::generated_by(&coroots, form.dim());
    if sub.rank() != l.rank() || sub.discriminant(form) != l.discriminant(form) {
        return Err(Error::Internal("coroots do not generate the translation lattice".into()));
    }
    let pos: Vec<Vector> = coroots.iter().map(|c| scale(qi(2) / form.norm2(c), c)).collect();
    if pos.iter().any(|a| coroots.iter().any(|c| !form.dot(a, c).is_integer())) {
        return Err(Error::Internal("root system is not crystallographic".into()));
    }
    Ok(pos)
}

#[cfg(test)]
fn minimal_regular(form: &Form, l: &Lattice, roots: &BTreeSet<Vector>, simple: &[Vector]) -> Result<Vec<(Vector, i32)>> {
    let dual = dual_basis(form, l)?;
    let gram = l.gram(form);
    let r = dual.len();
    let regular = |v: &Vector| roots.iter().all(|a| form.dot(a, v) != qi(0));
    let combos = |bounds: &[i64]| -> Vec<Vector> {
        let mut out = Vec::new();
        let mut c: Vec<i64> = bounds.iter().map(|b| -b).collect();
        loop {
            let v = c.iter().zip(&dual).fold(vec![qi(0); form.dim()], |v, (k, b)| add(&v, &scale(qi(*k), b)));
            out.push(v);
            let mut i = 0;
            loop {
                if i == r {
                    return out;
                }
                if c[i] < bounds[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = -bounds[i];
                i += 1;
            }
        }
    };
    let mut seed = None;
    for rad in 1..=6 {
        if let Some(v) = combos(&vec![rad; r]).into_iter().filter(|v| regular(v)).min_by_key(|v| form.norm2(v)) {
            seed = Some(form.norm2(&v));
            break;
        }
    }
    let n0 = seed.ok_or_else(|| Error::Internal("no regular vector in the dual lattice".into()))?;
    let bounds: Vec<i64> = (0..r).map(|i| (to_f64(&(n0 * gram.get(i, i))).sqrt() + 1e-9).floor() as i64).collect();
    let mins: Vec<Vector> = combos(&bounds).into_iter().filter(|v| regular(v) && form.norm2(v) == n0).collect();
    let mut out = Vec::new();
    let mut dominant: Option<Vector> = None;
    for v in mins {
        let (dv, n) = chamber_parity(form, simple, &v);
        match &dominant {
            None => dominant = Some(dv),
            Some(d) if *d != dv => return Err(Error::Internal("minimal regular vectors form several orbits".into())),
            _ => {}
        }
        out.push((v, if n % 2 == 0 { 1 } else { -1 }));
    }
    Ok(out)
}

impl AsdimEngine {
    pub fn new(d: &AffineRootDatum) -> Result<Self> {
        let components = (0..d.components.len()).map(|c| ComponentAsdim::new(d, c)).collect::<Result<_>>()?;
        Ok(AsdimEngine { form: d.form.clone(), components })
    }

    /// `a(lambda)` per affine component, for a dominant integral `lambda`.
    pub fn per_component(&self, d: &AffineRootDatum, lambda: &Weight) -> Result<Vec<f64>> {
        if !d.is_dominant_integral(lambda) {
            return Err(Error::Invalid(format!("{} is not integrable", lambda.display())));
        }
        let x = lambda.add(&d.rho_hat);
        Ok(self
            .components
            .iter()
            .map(|c| {
                let top = c.s_value(&self.form, &x.fin, x.levels[c.slot]);
                let bottom = c.s_value(&self.form, &d.rho_hat.fin, c.dual_coxeter);
                top / bottom
            })
            .collect())
    }

    /// Product over the affine components; the center contributes one.
    pub fn asymptotic_dimension(&self, d: &AffineRootDatum, lambda: &Weight) -> Result<f64> {
        Ok(self.per_component(d, lambda)?.iter().product())
    }
}

/// `k dim / (k + g)` for one simple ideal.
pub fn conformal_anomaly(dim: i64, dual_coxeter: Q, k: Q) -> Result<Q> {
    if k < qi(0) {
        return Err(Error::Invalid("negative level".into()));
    }
    if k + dual_coxeter == qi(0) {
        return Err(Error::Invalid("critical level".into()));
    }
    Ok(k * qi(dim) / (k + dual_coxeter))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralCharge {
    pub level: Q,
    pub c_g: Q,
    pub c_a: Q,
    pub half_dim_p: Q,
    pub value: Q,
    /// Whether `dim p / 2 = sum_S (1 - g_S / g) dim a_S`.
    pub balanced: bool,
    /// Whether the Dirac operator vanishes on the whole module.
    pub vanishes: bool,
}

fn finite_data(s: &DiracSetup) -> Result<()> {
    if s.finite_exact {
        Ok(())
    } else {
        Err(Error::Unsupported("the ideals of the finite subalgebra are not determined by the torus".into()))
    }
}

/// `C = C(g) - C(a) + dim p / 2` at level `k`.
pub fn central_charge(s: &DiracSetup, k: Q) -> Result<CentralCharge> {
    finite_data(s)?;
    let g = s.dual_coxeter();
    let dim_g = s.g.table.total_dim();
    let dim_a = s.a.table.total_dim();
    let c_g = conformal_anomaly(dim_g, g, k)?;
    let levels = |i: &FiniteIdeal| (qi(1) - i.casimir / (k + g)) * qi(i.dim);
    let c_a: Q = s.ideals.iter().map(levels).sum::<Q>() + qi(s.center_dim as i64);
    let half_dim_p = Q::new(dim_g - dim_a, 2);
    let balance: Q = s.ideals.iter().map(|i| (qi(1) - i.casimir / g) * qi(i.dim)).sum::<Q>() + qi(s.center_dim as i64);
    let value = c_g - c_a + half_dim_p;
    Ok(CentralCharge {
        level: k,
        c_g,
        c_a,
        half_dim_p,
        value,
        balanced: balance == half_dim_p,
        vanishes: k == qi(0) && s.symmetric && value == qi(0),
    })
}

/// Representatives of `T_{M_0} x W_a \ W`, keyed by linear part and translation modulo `M_0`.
#[derive(Clone, Debug)]
pub struct FiniteCosets {
    pub m0: Lattice,
    pub reps: Vec<AffWeylElt>,
    pub stable_from: usize,
}

fn reduce_mod(l: &Lattice, form: &Form, v: &[Q]) -> Vector {
    if l.rank() == 0 {
        return v.to_vec();
    }
    let span = Subspace::span(form, &l.basis);
    let p = span.project(v);
    let m = Matrix::from_cols(&l.basis);
    let c = m.solve(&p).expect("projection lies in the span");
    let shift = l.basis.iter().zip(&c).fold(vec![qi(0); v.len()], |acc, (b, x)| add(&acc, &scale(qi(x.floor().to_integer()), b)));
    sub(v, &shift)
}

/// Translation lattice of the whole datum.
pub fn translation_lattice(d: &AffineRootDatum) -> Lattice {
    Lattice::generated_by(&translation_data(d, &d.space).1, d.form.dim())
}

/// `M_0 = M ∩ a_0`, with `M` the translation lattice of `g`.
pub fn center_lattice(s: &DiracSetup) -> Lattice {
    translation_lattice(&s.g).intersect(&s.a.center)
}

/// Grows the length bound until the number of classes is unchanged for three steps.
pub fn finite_cosets(s: &DiracSetup, max_len: usize) -> Result<FiniteCosets> {
    let m0 = center_lattice(s);
    let mut last = 0;
    let mut same = 0;
    for len in 1..=max_len {
        let (reps, _) = s.coset_reps(len, None);
        let mut classes: BTreeMap<(Vec<Vec<Q>>, Vector), AffWeylElt> = BTreeMap::new();
        for w in reps {
            let key = (w.lin.row_vecs(), reduce_mod(&m0, &s.form, &w.trans));
            classes.entry(key).or_insert(w);
        }
        if classes.len() == last {
            same += 1;
            if same == 3 {
                let mut reps: Vec<AffWeylElt> = classes.into_values().collect();
                reps.sort_by_key(|w| (w.length(), w.word.clone()));
                return Ok(FiniteCosets { m0, reps, stable_from: len - 3 });
            }
        } else {
            same = 0;
            last = classes.len();
        }
    }
    Err(Error::Invalid(format!("coset classes did not stabilize within length {max_len}")))
}

#[derive(Clone, Debug)]
pub struct SumReport {
    pub terms: Vec<(Vec<usize>, i32, f64)>,
    pub total: f64,
}

/// `sum_{W'_fin} (-1)^l(w) asdim V(xi_w)` for an equal-rank setup whose center is spanned by `M_0`.
pub fn signed_asdim_sum(s: &DiracSetup, max_len: usize) -> Result<SumReport> {
    if !s.is_equal_rank() {
        return Err(Error::Unsupported("the signed sum needs an equal-rank pair".into()));
    }
    let cos = finite_cosets(s, max_len)?;
    if cos.m0.rank() != s.a.center.dim() {
        return Err(Error::Hypothesis("the center of a is not spanned by M_0".into()));
    }
    let eng = AsdimEngine::new(&s.a)?;
    let mut terms = Vec::new();
    for w in &cos.reps {
        let a = eng.asymptotic_dimension(&s.a, &s.xi(w))?;
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        terms.push((w.word.clone(), sign, a));
    }
    let total = terms.iter().map(|(_, e, a)| *e as f64 * a).sum();
    Ok(SumReport { terms, total })
}

#[derive(Clone, Debug)]
pub struct MultipletSum {
    pub lhs: f64,
    pub rhs: f64,
    pub index: Q,
    pub chi: u32,
    pub rank_gap: usize,
    pub center_dim: usize,
    pub classes: usize,
}

/// Both sides of the multiplet sum rule for `Lambda = 0` on a symmetric pair.
pub fn multiplet_asdim_sum(s: &DiracSetup, max_len: usize) -> Result<MultipletSum> {
    if !s.symmetric {
        return Err(Error::Unsupported("the sum rule needs a symmetric pair".into()));
    }
    if s.level() != qi(0) || !is_zero(&s.lambda.fin) {
        return Err(Error::Unsupported("the sum rule needs Lambda = 0".into()));
    }
    finite_data(s)?;
    let cos = finite_cosets(s, max_len)?;
    let eng = AsdimEngine::new(&s.a)?;
    let mut lhs = 0.0;
    for w in &cos.reps {
        lhs += eng.asymptotic_dimension(&s.a, &s.xi(w))?;
    }
    let g = s.dual_coxeter();
    let r0 = cos.m0.rank() as i32;
    let index = num::pow(g, r0 as usize) * cos.m0.discriminant(&s.form);
    let chi = u32::from(s.center_dim != s.a.center.dim());
    let gap = s.spec.zero_modes();
    let rhs = (to_f64(&index) / 2f64.powi(gap as i32 - chi as i32)).sqrt();
    Ok(MultipletSum { lhs, rhs, index, chi, rank_gap: gap, center_dim: s.center_dim, classes: cos.reps.len() })
}

/// `2^power sum_w asdim V(xi_w)` over a complete report.
pub fn module_asdim(s: &DiracSetup, report: &crate::dirac::MultipletReport) -> Result<f64> {
    if !report.complete {
        return Err(Error::Invalid("the multiplet is not complete".into()));
    }
    let eng = AsdimEngine::new(&s.a)?;
    let mut t = 0.0;
    for e in &report.entries {
        t += eng.asymptotic_dimension(&s.a, &e.xi)?;
    }
    Ok(t * report.multiplicity() as f64)
}


#[cfg(test)]
mod sum_rules {
    use super::*;
    use crate::dirac::sopairs::{catalog_classes, so_pair_decomposition, SoCase};

    #[test]
    fn fock_asdim_table() {
        for n in 5..=8 {
            for t in catalog_classes(n) {
                let (s, rep) = so_pair_decomposition(n, &t).unwrap();
                let a = module_asdim(&s, &rep).unwrap();
                let want = SoCase::of(n, &t).expected_asdim();
                assert!((a - want).abs() < 1e-9, "{n} {}: {a} vs {want}", t.tag());
            }
        }
    }
}

#[cfg(test)]
mod pair_sums {
    use super::*;
    use crate::dirac::levelone::{level_one_setup, LevelOneKind};
    use crate::dirac::sopairs::{catalog_classes, so_pair_setup};
    use crate::linalg::qr;
    use crate::rootcore::{DiagramAut, FiniteRootSystem};
    use crate::twistaff::TwistedAutomorphism;

    fn rs(s: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
    }

    fn level_one_pairs() -> Vec<DiracSetup> {
        let (a1, a2, c2, a3) = (rs("A1"), rs("A2"), rs("C2"), rs("A3"));
        let pairs = vec![
            ("sl2-gl1", a1.clone(), TwistedAutomorphism::inner(&a1, vec![qr(1, 2)]).unwrap()),
            ("sl3-gl2", a2.clone(), TwistedAutomorphism::inner(&a2, vec![qr(1, 2), qi(0)]).unwrap()),
            ("sl3-so3", a2.clone(), TwistedAutomorphism::new(&a2, DiagramAut::new(&a2, vec![1, 0]).unwrap(), vec![qi(0); 2]).unwrap()),
            ("sp4-gl2", c2.clone(), TwistedAutomorphism::inner(&c2, vec![qi(0), qr(1, 2)]).unwrap()),
            ("sp4-sp2sp2", c2.clone(), TwistedAutomorphism::inner(&c2, vec![qr(1, 2), qi(0)]).unwrap()),
            ("sl4-sp4", a3.clone(), TwistedAutomorphism::new(&a3, DiagramAut::new(&a3, vec![2, 1, 0]).unwrap(), vec![qi(0); 3]).unwrap()),
        ];
        let mut out = Vec::new();
        for (name, r, mu) in pairs {
            for kind in [LevelOneKind::BasicVector, LevelOneKind::Spin] {
                out.push(level_one_setup(name, &r, &mu, kind).unwrap());
            }
        }
        out
    }

    fn symmetric_pairs() -> Vec<DiracSetup> {
        let mut out = level_one_pairs();
        for n in 5..=7 {
            out.extend(catalog_classes(n).iter().map(|t| so_pair_setup(n, t).unwrap()));
        }
        out
    }

    #[test]
    fn multiplet_sum_rule() {
        for s in symmetric_pairs() {
            let m = multiplet_asdim_sum(&s, 14).unwrap();
            assert!((m.lhs - m.rhs).abs() < 1e-9, "{}: {} vs {}", s.name, m.lhs, m.rhs);
        }
    }

    #[test]
    fn signed_sums_vanish() {
        let mut seen = 0;
        for s in level_one_pairs() {
            if s.is_equal_rank() {
                let r = signed_asdim_sum(&s, 14).unwrap();
                assert!(r.total.abs() < 1e-9, "{}: {}", s.name, r.total);
                assert!(r.terms.iter().all(|t| t.2 > 0.0));
                seen += 1;
            }
        }
        assert!(seen >= 8);
        for s in level_one_pairs().into_iter().filter(|s| s.is_equal_rank()).step_by(2) {
            let n = s.g.simple.len();
            for i in 0..n {
                let mut labels = vec![qi(0); n];
                labels[i] = qi(1);
                labels[(i + 1) % n] += qi(1);
                let s = s.clone().with_lambda(&labels).unwrap();
                let r = signed_asdim_sum(&s, 14).unwrap();
                assert!(r.total.abs() < 1e-9, "{} {labels:?}: {}", s.name, r.total);
            }
        }
    }

    #[test]
    fn central_charge_vanishing() {
        for s in symmetric_pairs() {
            let c = central_charge(&s, qi(0)).unwrap();
            assert!(c.vanishes && c.balanced, "{}: {c:?}", s.name);
            assert!(!central_charge(&s, qi(1)).unwrap().vanishes);
        }
        let a2 = rs("A2");
        let torus = DiracSetup::root_subsystem("sl3-h", &a2, &TwistedAutomorphism::inner(&a2, vec![qi(0); 2]).unwrap(), &[]).unwrap();
        let c = central_charge(&torus, qi(0)).unwrap();
        assert_eq!(c.value, qi(1));
        assert!(!c.vanishes);
    }

    #[test]
    fn inexact_finite_data_is_refused() {
        let (alg, sigma, mu) = crate::dirac::sopairs::so_pair_matrices(6, &catalog_classes(6)[3]).unwrap();
        let s = DiracSetup::from_matrix("raw", &alg, &sigma, &mu).unwrap();
        assert!(!s.finite_exact);
        assert!(matches!(central_charge(&s, qi(0)), Err(Error::Unsupported(_))));
    }
}
