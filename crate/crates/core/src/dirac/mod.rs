//! Multiplets in the kernel of the affine Dirac operator and the character identities they obey.

pub mod levelone;
pub mod sopairs;

use std::collections::{BTreeMap, HashSet};

use crate::charworks::{restrict_and_compare, sum, weyl_kac_character, Discrepancy, GradedCharacter};
use crate::coxeter::{is_minimal_rep, reduced_simple_roots, AffWeylElt, RestrictedSystem};
use crate::error::{Error, Result};
use crate::fock::{build_spec, CliffordModuleSpec};
use crate::linalg::{add, frac, is_zero, neg, qi, scale, Form, Matrix, Subspace, Vector, Q};
use crate::rootcore::{FiniteRootSystem, GradedTable, MatrixAlgebra, MatrixAut};
use crate::twistaff::{fixed_subalgebra_table, AffRoot, AffineRootDatum, Slots, TwistedAutomorphism, Weight};

/// Simple or abelian ideal of the finite subalgebra `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIdeal {
    pub dim: i64,
    pub rank: usize,
    /// Half the Casimir eigenvalue on the ideal, for the form of `g`.
    pub casimir: Q,
}

/// A pair `(g, a)` with commuting twists `sigma`, `mu` and a dominant weight `Lambda`.
#[derive(Clone, Debug)]
pub struct DiracSetup {
    pub name: String,
    pub form: Form,
    pub g: AffineRootDatum,
    pub sys: RestrictedSystem,
    pub a: AffineRootDatum,
    /// `Red` of the simple roots of `a`.
    pub red_a: Vec<AffRoot>,
    pub spec: CliffordModuleSpec,
    pub lambda: Weight,
    pub symmetric: bool,
    pub ideals: Vec<FiniteIdeal>,
    /// Dimension of the center of the finite subalgebra `a`.
    pub center_dim: usize,
    /// False when the `mu`-fixed torus is not a Cartan subalgebra of `a`; then `ideals` and
    /// `center_dim` are not determined by the root data.
    pub finite_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipletEntry {
    pub xi: Weight,
    pub word: Vec<usize>,
    pub length: usize,
    /// Drop of the degree of `w(Lambda + rho_hat)` below `Lambda + rho_hat`.
    pub depth: Q,
    pub dirac_square: Q,
    pub dominant: bool,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipletReport {
    pub setup: String,
    pub entries: Vec<MultipletEntry>,
    pub power: usize,
    pub length_bound: usize,
    /// Whether every representative within the requested depth was found.
    pub complete: bool,
    pub cutoff: Option<Q>,
}

impl MultipletReport {
    pub fn multiplicity(&self) -> i64 {
        1 << self.power
    }

    /// Highest weights with their multiplicities, ignoring provenance.
    pub fn weight_multiset(&self) -> BTreeMap<Weight, i64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.xi.clone()).or_insert(0) += self.multiplicity();
        }
        out
    }
}

fn regular_vector(form: &Form, space: &Subspace, avoid: &[Vector]) -> Result<Vector> {
    let n = form.dim();
    for seed in 0..40i64 {
        let mut v = vec![qi(0); n];
        let mut c = qi(1);
        for b in &space.basis {
            v = add(&v, &scale(c, b));
            c = c * qi(3 + seed) + qi(1);
        }
        if avoid.iter().all(|w| form.dot(w, &v) != qi(0)) {
            return Ok(v);
        }
    }
    Err(Error::Internal("no regular element found".into()))
}

/// Splits a set of roots into simple ideals and returns them with the center dimension.
pub fn finite_ideals(form: &Form, roots: &[Vector], rank: usize) -> (Vec<FiniteIdeal>, usize) {
    let mut comp: Vec<usize> = (0..roots.len()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for i in 0..roots.len() {
        for j in 0..i {
            if form.dot(&roots[i], &roots[j]) != qi(0) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
    for i in 0..roots.len() {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(roots[i].clone());
    }
    let mut out = Vec::new();
    let mut used = 0;
    for rs in groups.values() {
        let r = Subspace::span(form, rs).dim();
        let x = &rs[0];
        let s: Q = rs.iter().map(|b| form.dot(b, x) * form.dot(b, x)).sum();
        out.push(FiniteIdeal { dim: (rs.len() + r) as i64, rank: r, casimir: s / (qi(2) * form.norm2(x)) });
        used += r;
    }
    out.sort_by(|a, b| (b.dim, b.casimir).cmp(&(a.dim, a.casimir)));
    (out, rank - used)
}

impl DiracSetup {
    fn assemble(
        name: &str,
        g: AffineRootDatum,
        mu: &Matrix,
        a_table: GradedTable,
        fixed_roots: &[Vector],
        fixed_rank: usize,
        symmetric: bool,
    ) -> Result<Self> {
        let form = g.form.clone();
        let sys = RestrictedSystem::new(&g, mu)?;
        let a = AffineRootDatum::for_subalgebra(form.clone(), sys.fixed.clone(), a_table, g.positivity.clone())?;
        let red_a = reduced_simple_roots(&sys, &a.simple)?;
        let spec = build_spec(&g, &a)?;
        let (ideals, center_dim) = finite_ideals(&form, fixed_roots, fixed_rank);
        let lambda = Weight::zero(form.dim(), 1);
        Ok(DiracSetup {
            name: name.to_string(),
            form,
            g,
            sys,
            a,
            red_a,
            spec,
            lambda,
            symmetric,
            ideals,
            center_dim,
            finite_exact: true,
        })
    }

    /// Setup from a matrix realization with `a` the fixed points of `mu`.
    pub fn from_matrix(name: &str, alg: &MatrixAlgebra, sigma: &MatrixAut, mu: &MatrixAut) -> Result<Self> {
        let form = alg.form();
        let h0 = alg.fixed_subspace(&[sigma]);
        let fixed = alg.fixed_subspace(&[sigma, mu]);
        let joint = alg.joint_grade(&[sigma, mu], &fixed, None)?;
        let g_table = alg.eigengrade(sigma)?;
        let deg0: Vec<Vector> = g_table.weights(qi(0)).into_iter().map(|(w, _)| w).collect();
        let v = regular_vector(&form, &fixed, &deg0)?;
        let g = AffineRootDatum::from_table(form.clone(), h0, g_table, v, Slots::Single)?;
        let mut a_table = GradedTable::new();
        for ((c, w), d) in joint {
            if c[1] == qi(0) {
                a_table.add(c[0], w, d);
            }
        }
        let mu_table = alg.eigengrade(mu)?;
        let roots: Vec<Vector> = mu_table.weights(qi(0)).into_iter().map(|(w, _)| w).collect();
        let rank = mu_table.zero_dim(qi(0)) as usize;
        let order = alg.line_map(mu)?.order();
        let mut s = Self::assemble(name, g, &alg.torus_matrix(mu), a_table, &roots, rank, order <= 2)?;
        s.finite_exact = rank == alg.fixed_subspace(&[mu]).dim();
        Ok(s)
    }

    /// Replaces the simple ideals and center of the finite `a`.
    pub fn with_finite_data(mut self, ideals: Vec<FiniteIdeal>, center_dim: usize) -> Self {
        self.ideals = ideals;
        self.center_dim = center_dim;
        self.finite_exact = true;
        self
    }

    /// Setup from diagram data with `a` the fixed points of `mu`.
    pub fn from_diagram(
        name: &str,
        rs: &FiniteRootSystem,
        sigma: &TwistedAutomorphism,
        mu: &TwistedAutomorphism,
    ) -> Result<Self> {
        let g = sigma.datum(rs)?;
        let a_table = fixed_subalgebra_table(rs, sigma, mu)?;
        let mu_table = mu.table(rs)?;
        let roots: Vec<Vector> = mu_table.weights(qi(0)).into_iter().map(|(w, _)| w).collect();
        let rank = mu_table.zero_dim(qi(0)) as usize;
        let symmetric = mu.order(rs)? <= 2;
        Self::assemble(name, g, &mu.ambient(rs), a_table, &roots, rank, symmetric)
    }

    /// Equal-rank setup with `a` spanned by the Cartan and the roots generated by `gens`.
    pub fn root_subsystem(
        name: &str,
        rs: &FiniteRootSystem,
        sigma: &TwistedAutomorphism,
        gens: &[Vector],
    ) -> Result<Self> {
        if !sigma.eta.is_identity() {
            return Err(Error::Unsupported("root subsystems need an inner sigma".into()));
        }
        let sub = rs.closed_subsystem(gens)?;
        let g = sigma.datum(rs)?;
        let mut a_table = GradedTable::new();
        for ((c, w), d) in &g.table.entries {
            if is_zero(w) || sub.contains(w) {
                a_table.add(*c, w.clone(), *d);
            }
        }
        let roots: Vec<Vector> = sub.iter().cloned().collect();
        Self::assemble(name, g, &Matrix::identity(rs.ambient_dim()), a_table, &roots, rs.rank(), false)
    }

    /// Sets `Lambda` from its labels on the simple roots of `g`, at degree zero.
    pub fn with_lambda(mut self, labels: &[Q]) -> Result<Self> {
        let l = self.g.weight_from_labels(labels, qi(0))?;
        if !self.g.is_dominant_integral(&l) {
            return Err(Error::Invalid(format!("{} is not dominant integral", l.display())));
        }
        self.lambda = l;
        Ok(self)
    }

    pub fn level(&self) -> Q {
        self.lambda.level()
    }

    /// Dual Coxeter number of `g` for its form.
    pub fn dual_coxeter(&self) -> Q {
        self.g.casimir[0]
    }

    pub fn is_equal_rank(&self) -> bool {
        self.spec.zero_modes() == 0
    }

    pub fn power(&self) -> usize {
        self.spec.free_zero_modes()
    }

    pub fn check_hypotheses(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Hypothesis(m.to_string()));
        if self.g.table.zero_dim(qi(0)) != self.g.space.dim() as i64 {
            return fail("h_0 is not a Cartan subalgebra of g^0");
        }
        if self.a.table.zero_dim(qi(0)) != self.a.space.dim() as i64 {
            return fail("h_0^mu is not a Cartan subalgebra of a^0");
        }
        for ((c, w), d) in &self.a.table.entries {
            if self.a.table.dim_of(frac(-*c), &neg(w)) != *d {
                return fail("the form is degenerate on a");
            }
        }
        let x = add(&self.lambda.fin, &self.g.rho_sigma());
        if !self.a.space.contains(&x) {
            return fail("Lambda + rho_sigma does not vanish on h_0 and p");
        }
        Ok(())
    }

    /// `Lambda + rho_hat_sigma`.
    pub fn shifted_lambda(&self) -> Weight {
        self.lambda.add(&self.g.rho_hat)
    }

    /// `phi_a^*`: copies the level into every slot of `a`.
    pub fn to_a(&self, x: &Weight) -> Weight {
        Weight::new(self.a.space.project(&x.fin), vec![x.level(); self.a.num_slots], x.delta)
    }

    /// Inverse of `phi_a^*` on its image.
    pub fn from_a(&self, y: &Weight) -> Result<Weight> {
        if y.levels.iter().any(|l| *l != y.levels[0]) {
            return Err(Error::Invalid(format!("{} is not in the image of phi_a", y.display())));
        }
        Ok(Weight::new(y.fin.clone(), vec![y.levels[0]], y.delta))
    }

    pub fn xi(&self, w: &AffWeylElt) -> Weight {
        self.to_a(&w.act(&self.form, &self.shifted_lambda())).sub(&self.a.rho_hat)
    }

    /// `|Lambda + rho_hat|^2 - |(phi_a^*)^{-1}(xi + rho_hat_a)|^2`.
    pub fn dirac_square(&self, xi: &Weight) -> Result<Q> {
        let pre = self.from_a(&xi.add(&self.a.rho_hat))?;
        Ok(self.shifted_lambda().norm2(&self.form) - pre.norm2(&self.form))
    }

    fn drop_of(&self, w: &AffWeylElt) -> Q {
        let x = self.shifted_lambda();
        x.delta - w.act(&self.form, &x).delta
    }

    /// Minimal coset representatives by length, pruned by `max_drop` when given.
    pub fn coset_reps(&self, length_bound: usize, max_drop: Option<Q>) -> (Vec<AffWeylElt>, bool) {
        let dim = self.form.dim();
        let gens = self.sys.generators();
        let mut seen: HashSet<AffWeylElt> = HashSet::new();
        let id = AffWeylElt::identity(dim);
        seen.insert(id.clone());
        let mut out = vec![id.clone()];
        let mut frontier = vec![id];
        let mut len = 0;
        loop {
            let mut next = Vec::new();
            for w in &frontier {
                for (k, s) in gens.iter().enumerate() {
                    if !self.sys.is_positive(&w.act_root(&self.form, self.sys.simple(k))) {
                        continue;
                    }
                    let n = w.compose(s);
                    if seen.contains(&n) || !is_minimal_rep(&self.sys, &self.red_a, &n) {
                        continue;
                    }
                    if max_drop.is_some_and(|d| self.drop_of(&n) > d) {
                        continue;
                    }
                    seen.insert(n.clone());
                    next.push(n);
                }
            }
            if next.is_empty() {
                return (out, true);
            }
            if len == length_bound {
                return (out, false);
            }
            len += 1;
            out.extend(next.iter().cloned());
            frontier = next;
        }
    }

    /// Kernel multiplets from representatives of length at most `length_bound` and, if
    /// given, depth at most `cutoff`.
    pub fn kernel_decomposition(&self, length_bound: usize, cutoff: Option<Q>) -> Result<MultipletReport> {
        self.check_hypotheses()?;
        let (reps, complete) = self.coset_reps(length_bound, cutoff);
        let mut entries = Vec::new();
        for w in reps {
            let xi = self.xi(&w);
            entries.push(MultipletEntry {
                dirac_square: self.dirac_square(&xi)?,
                dominant: self.a.is_dominant_integral(&xi),
                depth: self.drop_of(&w),
                length: w.length(),
                word: w.word.clone(),
                xi,
                label: None,
            });
        }
        Ok(MultipletReport {
            setup: self.name.clone(),
            entries,
            power: self.power(),
            length_bound,
            complete,
            cutoff,
        })
    }

    /// `sum_w c_w ch V(xi_w)` over the entries, known to depth `d` below degree zero.
    pub fn multiplet_character(&self, report: &MultipletReport, d: Q, signed: bool) -> Result<GradedCharacter> {
        let mut parts = Vec::new();
        for e in report.entries.iter().filter(|e| e.depth <= d) {
            let ch = weyl_kac_character(&self.a, &e.xi, d - e.depth)?;
            let sign = if signed && e.length % 2 == 1 { -1 } else { 1 };
            parts.push(ch.scale(sign * report.multiplicity()));
        }
        let zero = GradedCharacter::zero(self.spec.top.levels.iter().map(|l| l + self.level()).collect(), qi(0), d);
        parts.push(zero);
        Ok(sum(&parts)?.expect("nonempty"))
    }

    /// Compares `ch F^sigma(p)` with the multiplet sum; valid for `Lambda = 0` and symmetric pairs.
    pub fn theorem_character_check(&self, d: Q, length_bound: usize) -> Result<Vec<Discrepancy>> {
        if !self.symmetric || self.lambda.levels[0] != qi(0) || !is_zero(&self.lambda.fin) {
            return Err(Error::Unsupported("the kernel is only known for Lambda = 0 on symmetric pairs".into()));
        }
        let report = self.kernel_decomposition(length_bound, Some(d))?;
        if !report.complete {
            return Err(Error::Invalid("length bound too small for the requested cutoff".into()));
        }
        let lhs = self.spec.graded_character(d).total;
        let rhs = self.multiplet_character(&report, d, false)?;
        restrict_and_compare(&lhs, &rhs, d)
    }

    /// Both sides of `ch L(Lambda) (ch^+ - ch^-) = sum_w (-1)^l(w) ch V(xi_w)` for equal rank.
    pub fn signed_identity_sides(&self, d: Q, length_bound: usize) -> Result<(GradedCharacter, GradedCharacter)> {
        if !self.is_equal_rank() {
            return Err(Error::Unsupported("the signed identity needs an equal-rank pair".into()));
        }
        let report = self.kernel_decomposition(length_bound, Some(d))?;
        if !report.complete {
            return Err(Error::Invalid("length bound too small for the requested cutoff".into()));
        }
        let l = weyl_kac_character(&self.g, &self.lambda, d)?;
        let mut la = GradedCharacter::zero(vec![self.level(); self.a.num_slots], l.top, d);
        for ((depth, f), c) in &l.terms {
            la.insert(*depth, self.a.space.project(f), *c);
        }
        let lhs = la.mul(&self.spec.graded_character(d).super_character());
        let rhs = self.multiplet_character(&report, d, true)?;
        Ok((lhs, rhs))
    }

    pub fn signed_character_identity(&self, d: Q, length_bound: usize) -> Result<Vec<Discrepancy>> {
        let (lhs, rhs) = self.signed_identity_sides(d, length_bound)?;
        restrict_and_compare(&lhs, &rhs, d)
    }

    /// `N(w)` for the lift of `w`, with multiplicities, scanned among positive roots.
    pub fn inversion_roots(&self, w: &AffWeylElt) -> Vec<(AffRoot, i64)> {
        let lift = self.sys.lift(w);
        let inv = lift.inverse();
        let drop = self.g.rho_hat.delta - lift.act(&self.form, &self.g.rho_hat).delta;
        self.g
            .positive_roots(drop)
            .into_iter()
            .filter(|(r, _)| !r.is_imaginary() && !self.g.is_positive(&inv.act_root(&self.form, r)))
            .collect()
    }

    /// Checks `sum N(w) = rho_hat - w(rho_hat)` and that each root space of `N(w)` meets `p`.
    pub fn check_inversion_identity(&self, w: &AffWeylElt) -> Result<()> {
        let lift = self.sys.lift(w);
        let n = self.inversion_roots(w);
        let total = n.iter().fold(Weight::zero(self.form.dim(), 1), |acc, (r, m)| acc.add_root(qi(*m), r));
        let expect = self.g.rho_hat.sub(&lift.act(&self.form, &self.g.rho_hat));
        if total != expect {
            return Err(Error::Internal(format!("inversion sum {} differs from {}", total.display(), expect.display())));
        }
        for (r, _) in &n {
            let rr = self.sys.restrict(r);
            let in_a = self.a.multiplicity(&rr);
            let in_g = self.g.table.map_weights(|x| self.a.space.project(x)).dim_of(r.delta, &rr.fin);
            if in_g <= in_a {
                return Err(Error::Internal(format!("root {} of N(w) lies in a", r.display())));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    fn rs(s: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
    }

    #[test]
    fn ideals_of_gl2_in_sl3() {
        let r = rs("A2");
        let roots = vec![r.simple_roots[0].clone(), neg(&r.simple_roots[0])];
        let (ideals, center) = finite_ideals(&r.form, &roots, 2);
        assert_eq!(ideals, vec![FiniteIdeal { dim: 3, rank: 1, casimir: qi(2) }]);
        assert_eq!(center, 1);
    }

    #[test]
    fn abelian_subalgebra_of_sl2() {
        let r = rs("A1");
        let s = DiracSetup::from_diagram(
            "sl2-gl1",
            &r,
            &TwistedAutomorphism::inner(&r, vec![qi(0)]).unwrap(),
            &TwistedAutomorphism::inner(&r, vec![qr(1, 2)]).unwrap(),
        )
        .unwrap();
        s.check_hypotheses().unwrap();
        assert!(s.is_equal_rank());
        let rep = s.kernel_decomposition(4, None).unwrap();
        assert!(!rep.complete);
        assert_eq!(rep.entries.len(), 9);
        assert!(rep.entries.iter().all(|e| e.dirac_square == qi(0) && e.dominant));
    }
}
