//! Block-diagonal matrix realizations of classical Lie algebras and of automorphisms that
//! normalize the diagonal Cartan subalgebra. Used as an independent oracle for eigenspace data.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{
    frac, neg, qi, qr, sub, unit_vec, zero_vec, Form, Matrix, Subspace, Vector, Q,
};
use crate::rootcore::diagram::DiagramAut;
use crate::rootcore::graded::GradedTable;
use crate::rootcore::rootsys::FiniteRootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classical {
    Sl,
    So,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: Classical,
    /// Size of the defining matrices.
    pub size: usize,
}

impl Block {
    pub fn half(&self) -> usize {
        self.size / 2
    }

    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            Classical::Sl => self.size,
            _ => self.half(),
        }
    }

    pub fn partner(&self, a: usize) -> usize {
        self.size - 1 - a
    }

    /// Sign of the defining form on `(e_a, e_a')`: `+1` for orthogonal blocks, `+1/-1` on the
    /// two halves of a symplectic block.
    fn form_sign(&self, a: usize) -> i64 {
        if self.kind == Classical::Sp && a >= self.half() {
            -1
        } else {
            1
        }
    }
}

/// Monomial automorphism `Ad(M)`, optionally precomposed with `X -> -J X^T J^-1`.
///
/// `M e_b = exp(2 pi i phases[b]) e_{perm[b]}` on the concatenated basis of all blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAut {
    pub perm: Vec<usize>,
    pub phases: Vec<Q>,
    pub outer: bool,
}

impl MatrixAut {
    pub fn identity(n: usize) -> Self {
        MatrixAut { perm: (0..n).collect(), phases: vec![qi(0); n], outer: false }
    }

    pub fn diagonal(phases: Vec<Q>) -> Self {
        MatrixAut { perm: (0..phases.len()).collect(), phases, outer: false }
    }
}

/// A line of the Lie algebra spanned by `E_ab + kappa E_{b'a'}` (or `E_ab` alone).
#[derive(Clone, Debug)]
pub struct Line {
    pub block: usize,
    pub a: usize,
    pub b: usize,
    /// Phase of the coefficient `kappa`, `None` for single matrix units.
    pub kappa: Option<Q>,
    pub weight: Vector,
}

/// Action of an automorphism on a family of lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineMap {
    pub target: Vec<usize>,
    pub phase: Vec<Q>,
}

impl LineMap {
    pub fn apply(&self, line: usize, phase: Q) -> (usize, Q) {
        (self.target[line], frac(phase + self.phase[line]))
    }

    pub fn commutes_with(&self, other: &LineMap) -> bool {
        (0..self.target.len()).all(|l| {
            let (x, p) = self.apply(l, qi(0));
            let (x, p) = other.apply(x, p);
            let (y, q) = other.apply(l, qi(0));
            let (y, q) = self.apply(y, q);
            x == y && p == q
        })
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        loop {
            let ok = (0..self.target.len()).all(|l| {
                let (mut x, mut p) = (l, qi(0));
                for _ in 0..k {
                    (x, p) = self.apply(x, p);
                }
                x == l && p == qi(0)
            });
            if ok {
                return k;
            }
            k += 1;
            assert!(k < 10_000, "automorphism of unbounded order");
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub blocks: Vec<Block>,
    offsets: Vec<usize>,
    amb_offsets: Vec<usize>,
    lines: Vec<Line>,
    line_index: BTreeMap<(usize, usize, usize), usize>,
}

impl MatrixAlgebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return invalid("empty algebra");
        }
        for b in &blocks {
            let ok = match b.kind {
                Classical::Sl => b.size >= 2,
                Classical::So => b.size >= 4,
                Classical::Sp => b.size >= 2 && b.size % 2 == 0,
            };
            if !ok {
                return invalid(format!("unsupported block {:?} of size {}", b.kind, b.size));
            }
        }
        let mut offsets = vec![0];
        let mut amb_offsets = vec![0];
        for b in &blocks {
            offsets.push(offsets.last().unwrap() + b.size);
            amb_offsets.push(amb_offsets.last().unwrap() + b.ambient_dim());
        }
        let mut alg = MatrixAlgebra {
            blocks,
            offsets,
            amb_offsets,
            lines: vec![],
            line_index: BTreeMap::new(),
        };
        alg.build_lines();
        Ok(alg)
    }

    pub fn basis_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        *self.amb_offsets.last().unwrap()
    }

    pub fn block_of(&self, g: usize) -> (usize, usize) {
        let k = self.offsets.iter().rposition(|&o| o <= g).unwrap();
        (k, g - self.offsets[k])
    }

    pub fn global(&self, block: usize, local: usize) -> usize {
        self.offsets[block] + local
    }

    pub fn all_sl(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == Classical::Sl)
    }

    /// Weight of the basis vector `e_local` of a block in ambient coordinates.
    pub fn eps(&self, block: usize, local: usize) -> Vector {
        let b = self.blocks[block];
        let n = self.ambient_dim();
        let off = self.amb_offsets[block];
        match b.kind {
            Classical::Sl => unit_vec(n, off + local),
            _ => {
                let h = b.half();
                if local < h {
                    unit_vec(n, off + local)
                } else if local >= b.size - h {
                    neg(&unit_vec(n, off + b.partner(local)))
                } else {
                    zero_vec(n)
                }
            }
        }
    }

    /// Invariant form normalized so that long roots have squared length 2.
    pub fn form(&self) -> Form {
        let mut d = Vec::new();
        for b in &self.blocks {
            let v = if b.kind == Classical::Sp { qr(1, 2) } else { qi(1) };
            d.extend(std::iter::repeat(v).take(b.ambient_dim()));
        }
        Form::new(Matrix::diagonal(&d))
    }

    pub fn simple_roots(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            let e = |i: usize| self.eps(k, i);
            match b.kind {
                Classical::Sl => {
                    for i in 0..b.size - 1 {
                        out.push(sub(&e(i), &e(i + 1)));
                    }
                }
                Classical::So | Classical::Sp => {
                    let h = b.half();
                    for i in 0..h - 1 {
                        out.push(sub(&e(i), &e(i + 1)));
                    }
                    let last = e(h - 1);
                    out.push(match (b.kind, b.size % 2) {
                        (Classical::Sp, _) => crate::linalg::scale(qi(2), &last),
                        (_, 1) => last,
                        _ => crate::linalg::add(&e(h - 2), &last),
                    });
                }
            }
        }
        out
    }

    pub fn root_system(&self) -> Result<FiniteRootSystem> {
        FiniteRootSystem::from_simple_roots(self.form(), self.simple_roots())
    }

    /// Root span inside the ambient space.
    pub fn root_span(&self) -> Subspace {
        Subspace::span(&self.form(), &self.simple_roots())
    }

    fn build_lines(&mut self) {
        for (k, b) in self.blocks.clone().iter().enumerate() {
            for a in 0..b.size {
                for c in 0..b.size {
                    let weight = sub(&self.eps(k, a), &self.eps(k, c));
                    match b.kind {
                        Classical::Sl => self.push_line(Line { block: k, a, b: c, kappa: None, weight }),
                        _ => {
                            let (pa, pc) = (b.partner(c), b.partner(a));
                            if (a, c) == (pa, pc) {
                                if b.kind == Classical::Sp {
                                    self.push_line(Line { block: k, a, b: c, kappa: None, weight });
                                }
                                continue;
                            }
                            if (a, c) > (pa, pc) {
                                continue;
                            }
                            let kappa = -(b.form_sign(a) * b.form_sign(c));
                            let kappa = if b.kind == Classical::So { -1 } else { kappa };
                            let phase = if kappa == 1 { qi(0) } else { qr(1, 2) };
                            self.push_line(Line { block: k, a, b: c, kappa: Some(phase), weight });
                        }
                    }
                }
            }
        }
    }

    fn push_line(&mut self, l: Line) {
        self.line_index.insert((l.block, l.a, l.b), self.lines.len());
        self.lines.push(l);
    }

    /// Lines of the algebra; for `sl` blocks these are the lines of `gl`, the identities being
    /// accounted for by [`MatrixAlgebra::identity_map`].
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Canonical line containing `E_ac`, with the phase of the coefficient of `E_ac` in it.
    fn locate(&self, block: usize, a: usize, c: usize) -> (usize, Q) {
        if let Some(&l) = self.line_index.get(&(block, a, c)) {
            return (l, qi(0));
        }
        let b = self.blocks[block];
        let l = self.line_index[&(block, b.partner(c), b.partner(a))];
        (l, self.lines[l].kappa.expect("paired line"))
    }

    fn validate(&self, aut: &MatrixAut) -> Result<()> {
        let n = self.basis_dim();
        if aut.perm.len() != n || aut.phases.len() != n {
            return invalid("automorphism size does not match the basis");
        }
        let mut seen = vec![false; n];
        for &p in &aut.perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return invalid("basis map is not a permutation");
            }
        }
        if aut.outer && !self.all_sl() {
            return Err(Error::Unsupported("transpose-type map on non-sl blocks".into()));
        }
        for k in 0..self.blocks.len() {
            let (t, _) = self.block_of(aut.perm[self.offsets[k]]);
            if self.blocks[t] != self.blocks[k] {
                return invalid("basis map does not send blocks to isomorphic blocks");
            }
            for l in 0..self.blocks[k].size {
                if self.block_of(aut.perm[self.offsets[k] + l]).0 != t {
                    return invalid("basis map splits a block");
                }
            }
        }
        Ok(())
    }

    /// Image of the matrix unit `E_ac` of block `k`: (block, row, col, phase).
    fn image_unit(&self, aut: &MatrixAut, k: usize, a: usize, c: usize) -> (usize, usize, usize, Q) {
        let size = self.blocks[k].size;
        let (src_a, src_c, mut phase) = if aut.outer {
            let (ab, cb) = (size - 1 - a, size - 1 - c);
            let sign = if (c + a) % 2 == 1 { qi(0) } else { qr(1, 2) };
            (cb, ab, sign)
        } else {
            (a, c, qi(0))
        };
        let ga = self.global(k, src_a);
        let gc = self.global(k, src_c);
        phase += aut.phases[ga] - aut.phases[gc];
        let (t, ra) = self.block_of(aut.perm[ga]);
        let (_, rc) = self.block_of(aut.perm[gc]);
        (t, ra, rc, frac(phase))
    }

    /// Action on lines. Fails when the map does not preserve the algebra.
    pub fn line_map(&self, aut: &MatrixAut) -> Result<LineMap> {
        self.validate(aut)?;
        let mut target = Vec::new();
        let mut phase = Vec::new();
        for l in &self.lines {
            let (t, ra, rc, p) = self.image_unit(aut, l.block, l.a, l.b);
            let (line, kp) = self.locate(t, ra, rc);
            let ph = frac(p - kp);
            if let Some(kappa) = l.kappa {
                let b = self.blocks[l.block];
                let (t2, ra2, rc2, p2) = self.image_unit(aut, l.block, b.partner(l.b), b.partner(l.a));
                let (line2, kp2) = self.locate(t2, ra2, rc2);
                if line2 != line || frac(p2 + kappa - kp2) != ph {
                    return invalid("automorphism does not preserve the defining form");
                }
            }
            target.push(line);
            phase.push(ph);
        }
        Ok(LineMap { target, phase })
    }

    /// Action on the block identities of the `sl` blocks.
    pub fn identity_map(&self, aut: &MatrixAut) -> LineMap {
        let sl: Vec<usize> =
            (0..self.blocks.len()).filter(|&k| self.blocks[k].kind == Classical::Sl).collect();
        let mut target = Vec::new();
        let mut phase = Vec::new();
        for &k in &sl {
            let (t, _) = self.block_of(aut.perm[self.offsets[k]]);
            target.push(sl.iter().position(|&s| s == t).unwrap());
            phase.push(if aut.outer { qr(1, 2) } else { qi(0) });
        }
        LineMap { target, phase }
    }

    /// Induced linear action on the ambient space of weights.
    pub fn torus_matrix(&self, aut: &MatrixAut) -> Matrix {
        let n = self.ambient_dim();
        let mut cols = vec![zero_vec(n); n];
        for (k, b) in self.blocks.iter().enumerate() {
            for i in 0..b.ambient_dim() {
                let src = if aut.outer { b.size - 1 - i } else { i };
                let (t, r) = self.block_of(aut.perm[self.global(k, src)]);
                let img = self.eps(t, r);
                cols[self.amb_offsets[k] + i] = if aut.outer { neg(&img) } else { img };
            }
        }
        Matrix::from_cols(&cols)
    }

    /// Fixed part of the root span under a group of automorphisms.
    pub fn fixed_subspace(&self, auts: &[&MatrixAut]) -> Subspace {
        let mats: Vec<Matrix> = auts.iter().map(|a| self.torus_matrix(a)).collect();
        let avg = crate::linalg::group_average(&mats, self.ambient_dim());
        self.root_span().fixed_by(&self.form(), &avg)
    }

    /// Eigenvalue classes of one automorphism with weights restricted to its fixed Cartan.
    pub fn eigengrade(&self, sigma: &MatrixAut) -> Result<GradedTable> {
        let fixed = self.fixed_subspace(&[sigma]);
        let joint = self.joint_grade(&[sigma], &fixed, None)?;
        let mut out = GradedTable::new();
        for ((c, w), d) in joint {
            out.add(c[0], w, d);
        }
        Ok(out)
    }

    /// Joint eigenvalue classes of commuting automorphisms, weights projected onto `onto`.
    /// `subset` restricts to a union of lines stable under the automorphisms; the block
    /// identities are then not subtracted.
    pub fn joint_grade(
        &self,
        auts: &[&MatrixAut],
        onto: &Subspace,
        subset: Option<&[usize]>,
    ) -> Result<BTreeMap<(Vec<Q>, Vector), i64>> {
        let maps: Vec<LineMap> = auts.iter().map(|a| self.line_map(a)).collect::<Result<_>>()?;
        for i in 0..maps.len() {
            for j in 0..i {
                if !maps[i].commutes_with(&maps[j]) {
                    return Err(Error::Hypothesis("automorphisms do not commute".into()));
                }
            }
        }
        let all: Vec<usize> = (0..self.lines.len()).collect();
        let lines = subset.unwrap_or(&all);
        let mut out: BTreeMap<(Vec<Q>, Vector), i64> = BTreeMap::new();
        for (chi, l) in decompose(&maps, lines)? {
            let w = onto.project(&self.lines[l].weight);
            *out.entry((chi, w)).or_insert(0) += 1;
        }
        if subset.is_none() {
            let id_maps: Vec<LineMap> = auts.iter().map(|a| self.identity_map(a)).collect();
            let ids: Vec<usize> = (0..id_maps[0].target.len()).collect();
            let orders: Vec<usize> = maps.iter().map(|m| m.order()).collect();
            for (chi, _) in decompose_with_orders(&id_maps, &ids, &orders)? {
                let key = (chi, zero_vec(self.ambient_dim()));
                let e = out.entry(key.clone()).or_insert(0);
                *e -= 1;
                if *e == 0 {
                    out.remove(&key);
                }
            }
        }
        Ok(out)
    }

    /// Index of the root line with the given weight.
    pub fn root_line(&self, weight: &[Q]) -> Option<usize> {
        self.lines.iter().position(|l| l.weight == weight && l.a != l.b)
    }

    /// Indices of the lines lying in the Cartan subalgebra.
    pub fn cartan_lines(&self) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.lines[l].a == self.lines[l].b).collect()
    }

    /// Matrix automorphism `eta * exp(2 pi i ad h)` for a diagram automorphism of the standard
    /// simple roots and node values `a_i(h)`.
    pub fn from_diagram(&self, eta: &DiagramAut, values: &[Q]) -> Result<MatrixAut> {
        let rs = self.root_system()?;
        if values.len() != rs.rank() {
            return invalid("node value count does not match rank");
        }
        let mut node_off = vec![0];
        for b in &self.blocks {
            let r = match b.kind {
                Classical::Sl => b.size - 1,
                _ => b.half(),
            };
            node_off.push(node_off.last().unwrap() + r);
        }
        let nb = self.blocks.len();
        let mut outer = None;
        let mut perm = vec![0; self.basis_dim()];
        for k in 0..nb {
            let rank = node_off[k + 1] - node_off[k];
            let tgt = (0..nb)
                .find(|&t| node_off[t] <= eta.perm[node_off[k]] && eta.perm[node_off[k]] < node_off[t + 1])
                .unwrap();
            let local: Vec<usize> = (0..rank).map(|i| eta.perm[node_off[k] + i] - node_off[tgt]).collect();
            let ident = local.iter().enumerate().all(|(i, &j)| i == j);
            let b = self.blocks[k];
            let mut lp: Vec<usize> = (0..b.size).collect();
            if !ident {
                let flip = local.iter().enumerate().all(|(i, &j)| j == rank - 1 - i);
                match b.kind {
                    Classical::Sl if flip => {
                        if outer == Some(false) {
                            return Err(Error::Unsupported("mixed transpose-type map".into()));
                        }
                        outer = Some(true);
                    }
                    Classical::So if b.size % 2 == 0 && rank >= 2 => {
                        let swap =
                            (0..rank - 2).all(|i| local[i] == i) && local[rank - 2] == rank - 1;
                        if !swap {
                            return Err(Error::Unsupported("diagram map on orthogonal block".into()));
                        }
                        lp.swap(b.half() - 1, b.half());
                    }
                    _ => return Err(Error::Unsupported("diagram map on this block".into())),
                }
            } else if b.kind == Classical::Sl {
                if outer == Some(true) {
                    return Err(Error::Unsupported("mixed transpose-type map".into()));
                }
                outer = Some(false);
            }
            for i in 0..b.size {
                perm[self.global(k, i)] = self.global(tgt, lp[i]);
            }
        }
        let outer = outer.unwrap_or(false);
        if outer && !self.all_sl() {
            return Err(Error::Unsupported("transpose-type map on non-sl blocks".into()));
        }
        let mut torus = vec![qi(0); self.basis_dim()];
        for (k, b) in self.blocks.iter().enumerate() {
            let a = &values[node_off[k]..node_off[k + 1]];
            let t = block_phases(b, a);
            for i in 0..b.size {
                torus[self.global(k, i)] = t[i];
            }
        }
        let phases = (0..self.basis_dim()).map(|g| frac(torus[perm[g]])).collect();
        let aut = MatrixAut { perm, phases, outer };
        self.line_map(&aut)?;
        Ok(aut)
    }

    /// Diagram form `(simple roots, eta, node values)` of an automorphism, relative to a
    /// positive system defined by a regular fixed vector.
    pub fn diagram_form(&self, aut: &MatrixAut) -> Result<(FiniteRootSystem, DiagramAut, Vec<Q>)> {
        let rs = self.root_system()?;
        let t = self.torus_matrix(aut);
        let avg = crate::linalg::group_average(&[t.clone()], self.ambient_dim());
        let roots = rs.all_roots();
        let v = regular_candidates(self.ambient_dim())
            .map(|w| avg.mul_vec(&w))
            .find(|v| roots.iter().all(|r| rs.form.dot(r, v) != qi(0)))
            .ok_or_else(|| Error::Hypothesis("no regular fixed element in the Cartan".into()))?;
        let pos: BTreeSet<Vector> =
            roots.iter().filter(|r| rs.form.dot(r, &v) > qi(0)).cloned().collect();
        let mut simple: Vec<Vector> = pos
            .iter()
            .filter(|a| !pos.iter().any(|b| pos.contains(&sub(a, b))))
            .cloned()
            .collect();
        simple.sort_by(|a, b| b.cmp(a));
        let rs2 = FiniteRootSystem::from_simple_roots(rs.form.clone(), simple.clone())?;
        let perm: Vec<usize> = simple
            .iter()
            .map(|s| {
                let img = t.mul_vec(s);
                simple.iter().position(|x| *x == img).expect("fixed positive system")
            })
            .collect();
        let eta = DiagramAut::new(&rs2, perm)?;
        let map = self.line_map(aut)?;
        let mut values = vec![qi(0); simple.len()];
        for orbit in eta.orbits() {
            let line = self.root_line(&simple[orbit[0]]).expect("root line");
            let (mut x, mut p) = (line, qi(0));
            for _ in 0..orbit.len() {
                (x, p) = map.apply(x, p);
            }
            debug_assert_eq!(x, line);
            for &i in &orbit {
                values[i] = p / qi(orbit.len() as i64);
            }
        }
        Ok((rs2, eta, values))
    }
}

/// Torus phases on the basis of one block realizing `exp(2 pi i ad h)` with `a_i(h) = a[i]`.
fn block_phases(b: &Block, a: &[Q]) -> Vec<Q> {
    match b.kind {
        Classical::Sl => {
            let mut d = vec![qi(0)];
            for x in a {
                let last = *d.last().unwrap();
                d.push(last - x);
            }
            d
        }
        _ => {
            let n = b.half();
            let mut t = vec![qi(0); n];
            match (b.kind, b.size % 2) {
                (Classical::Sp, _) => t[n - 1] = a[n - 1] / qi(2),
                (_, 1) => t[n - 1] = a[n - 1],
                _ => {
                    t[n - 1] = (a[n - 1] - a[n - 2]) / qi(2);
                    t[n - 2] = (a[n - 1] + a[n - 2]) / qi(2);
                }
            }
            let start = if b.kind == Classical::So && b.size % 2 == 0 { n - 2 } else { n - 1 };
            for i in (0..start).rev() {
                t[i] = t[i + 1] + a[i];
            }
            let mut out = vec![qi(0); b.size];
            for i in 0..n {
                out[i] = t[i];
                out[b.partner(i)] = -t[i];
            }
            out
        }
    }
}

fn regular_candidates(n: usize) -> impl Iterator<Item = Vector> {
    (1..200i64).map(move |k| {
        (0..n)
            .map(|i| {
                let x = (i as i64 + 1) * (k * 7 + 3) + (i as i64 * i as i64 * k) % 13;
                qi(x % 101 - 50)
            })
            .collect()
    })
}

/// Characters of the cover group `Z/o_1 x ... x Z/o_k` on the span of `lines`.
pub fn decompose(maps: &[LineMap], lines: &[usize]) -> Result<Vec<(Vec<Q>, usize)>> {
    let orders: Vec<usize> = maps.iter().map(|m| m.order()).collect();
    decompose_with_orders(maps, lines, &orders)
}

fn decompose_with_orders(
    maps: &[LineMap],
    lines: &[usize],
    orders: &[usize],
) -> Result<Vec<(Vec<Q>, usize)>> {
    let members: BTreeSet<usize> = lines.iter().copied().collect();
    let mut elems: Vec<Vec<usize>> = vec![vec![]];
    for &o in orders {
        elems = elems
            .into_iter()
            .flat_map(|e| (0..o).map(move |a| {
                let mut e = e.clone();
                e.push(a);
                e
            }))
            .collect();
    }
    let act = |line: usize, g: &[usize]| {
        let (mut x, mut p) = (line, qi(0));
        for (m, &a) in maps.iter().zip(g) {
            for _ in 0..a {
                (x, p) = m.apply(x, p);
            }
        }
        (x, p)
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &l in lines {
        if seen.contains(&l) {
            continue;
        }
        let mut stab = Vec::new();
        for g in &elems {
            let (x, p) = act(l, g);
            if !members.contains(&x) {
                return invalid("line subset is not stable");
            }
            seen.insert(x);
            if x == l {
                stab.push((g.clone(), p));
            }
        }
        let mut chars: Vec<Vec<Q>> = vec![vec![]];
        for &o in orders {
            chars = chars
                .into_iter()
                .flat_map(|c| (0..o).map(move |m| {
                    let mut c = c.clone();
                    c.push(qr(m as i64, o as i64));
                    c
                }))
                .collect();
        }
        for chi in chars {
            let ok = stab.iter().all(|(g, p)| {
                let v: Q = g.iter().zip(&chi).map(|(&a, x)| qi(a as i64) * x).sum();
                frac(v) == *p
            });
            if ok {
                out.push((chi, l));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(n: usize) -> Block {
        Block { kind: Classical::Sl, size: n }
    }

    #[test]
    fn sl2_inner_involution() {
        let alg = MatrixAlgebra::new(vec![sl(2)]).unwrap();
        let s = MatrixAut::diagonal(vec![qi(0), qr(1, 2)]);
        let t = alg.eigengrade(&s).unwrap();
        assert_eq!(t.class_dim(qi(0)), 1);
        assert_eq!(t.class_dim(qr(1, 2)), 2);
    }

    #[test]
    fn sl3_transpose_fixed_points() {
        let alg = MatrixAlgebra::new(vec![sl(3)]).unwrap();
        let mut s = MatrixAut::identity(3);
        s.outer = true;
        let t = alg.eigengrade(&s).unwrap();
        assert_eq!(t.class_dim(qi(0)), 3);
        assert_eq!(t.class_dim(qr(1, 2)), 5);
    }

    #[test]
    fn orthogonal_and_symplectic_dimensions() {
        for (kind, size, dim) in [(Classical::So, 7, 21), (Classical::So, 8, 28), (Classical::Sp, 6, 21)] {
            let alg = MatrixAlgebra::new(vec![Block { kind, size }]).unwrap();
            let t = alg.eigengrade(&MatrixAut::identity(size)).unwrap();
            assert_eq!(t.total_dim(), dim);
            assert_eq!(alg.root_system().unwrap().positive_roots.len() * 2 + size / 2, dim as usize);
        }
    }

    #[test]
    fn non_conformal_map_rejected() {
        let alg = MatrixAlgebra::new(vec![Block { kind: Classical::So, size: 5 }]).unwrap();
        let aut = MatrixAut { perm: vec![1, 0, 2, 3, 4], phases: vec![qi(0); 5], outer: false };
        assert!(alg.line_map(&aut).is_err());
    }

    fn check_oracle(alg: &MatrixAlgebra, aut: &MatrixAut) {
        let direct = alg.eigengrade(aut).unwrap();
        let (rs, eta, vals) = alg.diagram_form(aut).unwrap();
        let comb = crate::rootcore::combinatorial_table(&rs, &eta, &vals).unwrap();
        let fixed = alg.fixed_subspace(&[aut]);
        assert_eq!(direct, comb.map_weights(|w| fixed.project(w)), "{aut:?}");
    }

    #[test]
    fn matrix_and_combinatorial_tables_agree() {
        let cases: Vec<(Vec<Block>, Vec<usize>, Vec<Q>)> = vec![
            (vec![sl(3)], vec![0, 1], vec![qr(1, 3), qr(1, 3)]),
            (vec![sl(3)], vec![1, 0], vec![qi(0), qi(0)]),
            (vec![sl(4)], vec![2, 1, 0], vec![qr(1, 4), qr(1, 2), qr(1, 4)]),
            (vec![Block { kind: Classical::So, size: 8 }], vec![0, 1, 3, 2], vec![qr(1, 2), qi(0), qi(0), qi(0)]),
            (vec![Block { kind: Classical::So, size: 7 }], vec![0, 1, 2], vec![qi(0), qr(1, 3), qr(1, 2)]),
            (vec![Block { kind: Classical::Sp, size: 4 }], vec![0, 1], vec![qr(1, 2), qi(0)]),
            (vec![sl(2), sl(2)], vec![1, 0], vec![qi(0), qi(0)]),
        ];
        for (blocks, perm, vals) in cases {
            let alg = MatrixAlgebra::new(blocks).unwrap();
            let rs = alg.root_system().unwrap();
            let eta = DiagramAut::new(&rs, perm).unwrap();
            let aut = alg.from_diagram(&eta, &vals).unwrap();
            check_oracle(&alg, &aut);
            let direct = alg.eigengrade(&aut).unwrap();
            let comb = crate::rootcore::combinatorial_table(&rs, &eta, &vals).unwrap();
            let fixed = alg.fixed_subspace(&[&aut]);
            assert_eq!(direct, comb.map_weights(|w| fixed.project(w)));
        }
    }

    #[test]
    fn oracle_on_raw_monomial_maps() {
        let so8 = MatrixAlgebra::new(vec![Block { kind: Classical::So, size: 8 }]).unwrap();
        let mut perm: Vec<usize> = (0..8).collect();
        perm.swap(2, 5);
        let phases = vec![qr(1, 3), qi(0), qi(0), qr(1, 2), qr(1, 2), qi(0), qi(0), qr(2, 3)];
        check_oracle(&so8, &MatrixAut { perm, phases, outer: false });
        let sl4 = MatrixAlgebra::new(vec![sl(4)]).unwrap();
        check_oracle(&sl4, &MatrixAut { perm: vec![0, 1, 2, 3], phases: vec![qi(0), qr(1, 4), qr(1, 2), qi(0)], outer: true });
    }
}
