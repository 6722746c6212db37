use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{
    add, frac, is_zero, qi, qr, scale, zero_vec, Form, Matrix, Subspace, Vector, Q,
};
use crate::rootcore::GradedTable;
use crate::twistaff::weight::{AffRoot, Weight};

/// How levels are attached to affine components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slots {
    /// One level shared by every component.
    Single,
    /// One level per affine component, plus one for a nonzero center.
    PerComponent { center: bool },
}

/// Affine root datum of a twisted loop algebra, built from the eigenvalue table of the twist.
#[derive(Clone, Debug)]
pub struct AffineRootDatum {
    pub form: Form,
    /// Finite part of the Cartan dual, inside the ambient space.
    pub space: Subspace,
    pub table: GradedTable,
    /// Regular element defining the positive degree-zero roots.
    pub positivity: Vector,
    pub simple: Vec<AffRoot>,
    pub components: Vec<Vec<usize>>,
    pub component_spans: Vec<Subspace>,
    pub slot_of_component: Vec<usize>,
    pub num_slots: usize,
    /// Casimir eigenvalue `g_i` for each slot; zero on the center slot.
    pub casimir: Vec<Q>,
    /// Primitive positive null vector coefficients, indexed like `simple`.
    pub marks: Vec<i64>,
    pub center: Subspace,
    pub rho_hat: Weight,
}

impl AffineRootDatum {
    pub fn from_table(
        form: Form,
        space: Subspace,
        table: GradedTable,
        positivity: Vector,
        slots: Slots,
    ) -> Result<Self> {
        let deg0: Vec<Vector> = table.weights(qi(0)).into_iter().map(|(w, _)| w).collect();
        if deg0.iter().any(|w| form.dot(w, &positivity) == qi(0)) {
            return Err(Error::Hypothesis("positivity element is not regular".into()));
        }
        let mut d = AffineRootDatum {
            form,
            space,
            table,
            positivity,
            simple: vec![],
            components: vec![],
            component_spans: vec![],
            slot_of_component: vec![],
            num_slots: 0,
            casimir: vec![],
            marks: vec![],
            center: Subspace { basis: vec![], projector: Matrix::zeros(0, 0) },
            rho_hat: Weight::zero(0, 0),
        };
        d.simple = d.indecomposables();
        d.split_components()?;
        let nc = d.components.len();
        let roots: Vec<Vector> = d.table.entries.keys().filter(|(_, w)| !is_zero(w)).map(|(_, w)| w.clone()).collect();
        let root_span = Subspace::span(&d.form, &roots);
        d.center = root_span.complement_in(&d.form, &d.space);
        match slots {
            Slots::Single => {
                d.slot_of_component = vec![0; nc];
                d.num_slots = 1;
                let g = d.casimir_on(&root_span)?;
                d.casimir = vec![g];
            }
            Slots::PerComponent { center } => {
                d.slot_of_component = (0..nc).collect();
                d.num_slots = nc + usize::from(center);
                d.casimir = d
                    .component_spans
                    .clone()
                    .iter()
                    .map(|s| d.casimir_on(s))
                    .collect::<Result<_>>()?;
                if center {
                    d.casimir.push(qi(0));
                }
            }
        }
        d.rho_hat = d.compute_rho_hat();
        Ok(d)
    }

    /// Datum of a reductive subalgebra: one level per affine component, plus one for the center.
    pub fn for_subalgebra(form: Form, space: Subspace, table: GradedTable, positivity: Vector) -> Result<Self> {
        let roots: Vec<Vector> = table.entries.keys().filter(|(_, w)| !is_zero(w)).map(|(_, w)| w.clone()).collect();
        let center = Subspace::span(&form, &roots).dim() < space.dim();
        Self::from_table(form, space, table, positivity, Slots::PerComponent { center })
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn is_root(&self, r: &AffRoot) -> bool {
        if is_zero(&r.fin) {
            r.delta != qi(0) && self.table.zero_dim(r.delta) > 0
        } else {
            self.table.dim_of(r.delta, &r.fin) > 0
        }
    }

    pub fn multiplicity(&self, r: &AffRoot) -> i64 {
        if is_zero(&r.fin) {
            if r.delta == qi(0) {
                0
            } else {
                self.table.zero_dim(r.delta)
            }
        } else {
            self.table.dim_of(r.delta, &r.fin)
        }
    }

    pub fn is_positive(&self, r: &AffRoot) -> bool {
        r.delta > qi(0) || (r.delta == qi(0) && self.form.dot(&r.fin, &self.positivity) > qi(0))
    }

    /// Positive roots of degree at most `d`, with multiplicities.
    pub fn positive_roots(&self, d: Q) -> Vec<(AffRoot, i64)> {
        let mut out = Vec::new();
        for ((class, w), &m) in &self.table.entries {
            let mut j = *class;
            while j <= d {
                let r = AffRoot::new(w.clone(), j);
                if is_zero(w) {
                    if j > qi(0) {
                        out.push((r, m));
                    }
                } else if self.is_positive(&r) {
                    out.push((r, m));
                }
                j += qi(1);
            }
        }
        out.sort();
        out
    }

    fn indecomposables(&self) -> Vec<AffRoot> {
        let cands: Vec<AffRoot> = self.positive_roots(qi(1)).into_iter().map(|(r, _)| r).collect();
        let set: BTreeSet<AffRoot> = cands.iter().cloned().collect();
        let mut simple: Vec<AffRoot> = cands
            .iter()
            .filter(|a| !a.is_imaginary())
            .filter(|a| {
                !cands.iter().any(|b| {
                    let c = a.sub(b);
                    b.delta <= a.delta && set.contains(&c)
                })
            })
            .cloned()
            .collect();
        simple.sort_by(|a, b| simple_order_key(a).cmp(&simple_order_key(b)));
        simple
    }

    fn split_components(&mut self) -> Result<()> {
        let n = self.simple.len();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut list = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < list.len() {
                let i = list[k];
                for j in 0..n {
                    if comp[j] == usize::MAX && self.form.dot(&self.simple[i].fin, &self.simple[j].fin) != qi(0) {
                        comp[j] = id;
                        list.push(j);
                    }
                }
                k += 1;
            }
            list.sort();
            comps.push(list);
        }
        let mut marks = vec![0i64; n];
        let mut spans = Vec::new();
        for c in &comps {
            let fins: Vec<Vector> = c.iter().map(|&i| self.simple[i].fin.clone()).collect();
            let m = Matrix::from_cols(&fins);
            if m.rank() + 1 != c.len() {
                return Err(Error::Internal("affine component is not of corank one".into()));
            }
            for skip in 0..c.len() {
                let sub: Vec<Vector> =
                    fins.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, v)| v.clone()).collect();
                if !sub.is_empty() && Matrix::from_rows(&sub).rank() != sub.len() {
                    return Err(Error::Internal("proper subdiagram is not of finite type".into()));
                }
            }
            let kernel = crate::linalg::integer_kernel(&m);
            let mut k = kernel[0].clone();
            if k.iter().any(|&x| x < 0) {
                k.iter_mut().for_each(|x| *x = -*x);
            }
            if k.iter().any(|&x| x <= 0) {
                return Err(Error::Internal("null vector is not positive".into()));
            }
            for (idx, &i) in c.iter().enumerate() {
                marks[i] = k[idx];
            }
            spans.push(Subspace::span(&self.form, &fins));
        }
        self.components = comps;
        self.component_spans = spans;
        self.marks = marks;
        Ok(())
    }

    /// Scalar `g` with `sum_beta dim (beta, x)(beta, y) = 2 g (x, y)` on `s`.
    fn casimir_on(&self, s: &Subspace) -> Result<Q> {
        let basis = &s.basis;
        if basis.is_empty() {
            return Ok(qi(0));
        }
        let mut g = None;
        for x in basis {
            for y in basis {
                let q: Q = self
                    .table
                    .entries
                    .iter()
                    .map(|((_, w), d)| qi(*d) * self.form.dot(w, x) * self.form.dot(w, y))
                    .sum();
                let f = self.form.dot(x, y);
                if f == qi(0) {
                    if q != qi(0) {
                        return Err(Error::Hypothesis("trace form is not proportional to the invariant form".into()));
                    }
                    continue;
                }
                let v = q / (qi(2) * f);
                match g {
                    None => g = Some(v),
                    Some(h) if h != v => {
                        return Err(Error::Hypothesis(
                            "Casimir eigenvalue is not constant on an ideal".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(g.unwrap_or(qi(0)))
    }

    /// `rho_sigma = sum_{0 <= j < 1/2} (1 - 2j) rho_j`.
    pub fn rho_sigma(&self) -> Vector {
        let n = self.dim();
        let mut rho = zero_vec(n);
        for ((class, w), &d) in &self.table.entries {
            if *class >= qr(1, 2) || is_zero(w) {
                continue;
            }
            if *class == qi(0) && self.form.dot(w, &self.positivity) < qi(0) {
                continue;
            }
            let c = (qi(1) - qi(2) * class) * qi(d) / qi(2);
            rho = add(&rho, &scale(c, w));
        }
        rho
    }

    fn compute_rho_hat(&self) -> Weight {
        Weight::new(self.rho_sigma(), self.casimir.clone(), qi(0))
    }

    pub fn slot_of(&self, fin: &[Q]) -> usize {
        for (c, s) in self.component_spans.iter().enumerate() {
            if !is_zero(&s.project(fin)) {
                return self.slot_of_component[c];
            }
        }
        0
    }

    pub fn simple_slot(&self, i: usize) -> usize {
        let c = self.components.iter().position(|c| c.contains(&i)).unwrap();
        self.slot_of_component[c]
    }

    pub fn pair(&self, w: &Weight, r: &AffRoot) -> Q {
        self.form.dot(&w.fin, &r.fin) + r.delta * w.levels[self.slot_of(&r.fin)]
    }

    /// `<w, r^vee>` for a real root.
    pub fn coroot_pair(&self, w: &Weight, r: &AffRoot) -> Q {
        qi(2) * self.pair(w, r) / self.form.norm2(&r.fin)
    }

    pub fn reflect(&self, w: &Weight, r: &AffRoot) -> Weight {
        let n = self.coroot_pair(w, r);
        w.add_root(-n, r)
    }

    pub fn reflect_root(&self, x: &AffRoot, r: &AffRoot) -> AffRoot {
        let n = qi(2) * self.form.dot(&x.fin, &r.fin) / self.form.norm2(&r.fin);
        x.sub(&r.scale(n))
    }

    /// Generalized Cartan matrix `a_ij = <alpha_i^vee, alpha_j>`.
    pub fn gcm(&self) -> Vec<Vec<i64>> {
        let n = self.simple.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = qi(2) * self.form.dot(&self.simple[i].fin, &self.simple[j].fin)
                            / self.form.norm2(&self.simple[i].fin);
                        *v.numer() / *v.denom()
                    })
                    .collect()
            })
            .collect()
    }

    /// Degree of the primitive null root of each component.
    pub fn null_degree(&self, comp: usize) -> Q {
        self.components[comp].iter().map(|&i| qi(self.marks[i]) * self.simple[i].delta).sum()
    }

    /// Values `<rho_hat, alpha_i^vee>`; all equal to one for a correct `rho_hat`.
    pub fn rho_check(&self) -> Vec<Q> {
        self.simple.iter().map(|a| self.coroot_pair(&self.rho_hat, a)).collect()
    }

    /// Weight with prescribed labels `<w, alpha_i^vee>` and degree; levels are derived from the
    /// marks and must be consistent within each slot.
    pub fn weight_from_labels(&self, labels: &[Q], delta: Q) -> Result<Weight> {
        let n = self.simple.len();
        if labels.len() != n {
            return Err(Error::Invalid(format!("expected {n} labels, got {}", labels.len())));
        }
        let dim = self.dim();
        // unknowns: fin coordinates in the space basis, then one level per slot
        let basis = &self.space.basis;
        let nb = basis.len();
        let cols = nb + self.num_slots;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (i, a) in self.simple.iter().enumerate() {
            let norm = self.form.norm2(&a.fin);
            let mut row = vec![qi(0); cols];
            for (k, b) in basis.iter().enumerate() {
                row[k] = qi(2) * self.form.dot(b, &a.fin) / norm;
            }
            row[nb + self.simple_slot(i)] = qi(2) * a.delta / norm;
            rows.push(row);
            rhs.push(labels[i]);
        }
        // pin the center part of fin to zero
        for c in &self.center.basis {
            let mut row = vec![qi(0); cols];
            for (k, b) in basis.iter().enumerate() {
                row[k] = self.form.dot(b, c);
            }
            rows.push(row);
            rhs.push(qi(0));
        }
        let m = Matrix::from_rows(&rows);
        let sol = m.solve(&rhs).ok_or_else(|| Error::Invalid("labels are inconsistent with the marks".into()))?;
        if m.mul_vec(&sol) != rhs {
            return Err(Error::Invalid("labels are inconsistent with the marks".into()));
        }
        let mut fin = zero_vec(dim);
        for (k, b) in basis.iter().enumerate() {
            fin = add(&fin, &scale(sol[k], b));
        }
        Ok(Weight::new(fin, sol[nb..].to_vec(), delta))
    }

    /// Fundamental weight dual to simple root `i`, with degree zero and zero center part.
    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        let mut labels = vec![qi(0); self.simple.len()];
        labels[i] = qi(1);
        let c = self.components.iter().position(|c| c.contains(&i)).unwrap();
        let same_slot: Vec<usize> = (0..self.components.len())
            .filter(|&k| self.slot_of_component[k] == self.slot_of_component[c])
            .collect();
        if same_slot.len() > 1 {
            return Err(Error::Invalid("fundamental weight needs one component per level".into()));
        }
        self.weight_from_labels(&labels, qi(0))
    }

    /// Whether `w` is integral dominant.
    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        self.simple.iter().all(|a| {
            let c = self.coroot_pair(w, a);
            c.is_integer() && c >= qi(0)
        })
    }

    /// Degree classes present in the table.
    pub fn classes(&self) -> Vec<Q> {
        self.table.classes()
    }

    pub fn frac_class(q: Q) -> Q {
        frac(q)
    }
}

/// Ordering of simple roots: larger degree first, then by leading coordinate position.
pub fn simple_order_key(a: &AffRoot) -> (Q, usize, Vector) {
    let first = a.fin.iter().position(|x| *x != qi(0)).unwrap_or(usize::MAX);
    (-a.delta, first, a.fin.clone())
}
