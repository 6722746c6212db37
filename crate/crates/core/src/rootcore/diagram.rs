use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Error, Result};
use crate::linalg::{
    add, frac, qi, qr, scale, zero_vec, Matrix, Subspace, Vector, Q,
};
use crate::rootcore::graded::GradedTable;
use crate::rootcore::rootsys::FiniteRootSystem;
use crate::rootcore::types::{Series, SimpleLieType};

/// Permutation of simple roots preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAut {
    pub perm: Vec<usize>,
}

impl DiagramAut {
    pub fn new(rs: &FiniteRootSystem, perm: Vec<usize>) -> Result<Self> {
        let n = rs.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return invalid("diagram automorphism is not a permutation of the nodes");
        }
        let c = rs.cartan_matrix();
        for i in 0..n {
            for j in 0..n {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return invalid("node permutation does not preserve the Cartan matrix");
                }
            }
        }
        Ok(DiagramAut { perm })
    }

    pub fn identity(n: usize) -> Self {
        DiagramAut { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn order(&self) -> usize {
        let n = self.perm.len();
        let mut lcm = 1;
        for i in 0..n {
            let mut k = 1;
            let mut j = self.perm[i];
            while j != i {
                j = self.perm[j];
                k += 1;
            }
            lcm = num::integer::lcm(lcm, k);
        }
        lcm
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut o = vec![i];
            seen[i] = true;
            let mut j = self.perm[i];
            while j != i {
                seen[j] = true;
                o.push(j);
                j = self.perm[j];
            }
            out.push(o);
        }
        out
    }

    pub fn power(&self, k: usize) -> DiagramAut {
        let mut p: Vec<usize> = (0..self.perm.len()).collect();
        for _ in 0..k {
            p = p.iter().map(|&i| self.perm[i]).collect();
        }
        DiagramAut { perm: p }
    }

    /// Linear map of the ambient space sending each simple root to its image, identity on the
    /// orthogonal complement of the root span.
    pub fn ambient_matrix(&self, rs: &FiniteRootSystem) -> Matrix {
        let span = Subspace::span(&rs.form, &rs.simple_roots);
        let comp = span.complement_in(&rs.form, &Subspace::whole(&rs.form));
        let mut basis = rs.simple_roots.clone();
        let mut images: Vec<Vector> = self.perm.iter().map(|&p| rs.simple_roots[p].clone()).collect();
        basis.extend(comp.basis.iter().cloned());
        images.extend(comp.basis.iter().cloned());
        let b = Matrix::from_cols(&basis);
        Matrix::from_cols(&images).mul(&b.inverse().expect("basis"))
    }
}

/// Standard diagram automorphism of a simple type: `order` 2 flips A, D and E6, `order` 3 is triality.
pub fn standard_automorphism(t: SimpleLieType, order: usize) -> Result<Vec<usize>> {
    let n = t.rank;
    let perm = match (t.series, order) {
        (_, 1) => (0..n).collect(),
        (Series::A, 2) if n >= 2 => (0..n).map(|i| n - 1 - i).collect(),
        (Series::D, 2) => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            p
        }
        (Series::D, 3) if n == 4 => vec![2, 1, 3, 0],
        (Series::E, 2) if n == 6 => vec![5, 1, 4, 3, 2, 0],
        _ => return Err(Error::Unsupported(format!("no diagram automorphism of order {order} on {t}"))),
    };
    Ok(perm)
}

/// Orbits of `perm`-images of roots under the ambient action `t`.
fn root_orbits(rs: &FiniteRootSystem, t: &Matrix) -> Vec<Vec<Vector>> {
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    let mut out = Vec::new();
    for r in rs.all_roots() {
        if seen.contains(&r) {
            continue;
        }
        let mut orbit = vec![r.clone()];
        seen.insert(r.clone());
        let mut cur = t.mul_vec(&r);
        while cur != r {
            seen.insert(cur.clone());
            orbit.push(cur.clone());
            cur = t.mul_vec(&cur);
        }
        out.push(orbit);
    }
    out
}

/// Sign by which the return map of `eta` acts on the root vectors of fixed roots: `-1` exactly on
/// `A_{2n}` components whose return map is the flip.
fn orbit_sign(rs: &FiniteRootSystem, eta: &DiagramAut, root: &[Q], orbit_len: usize) -> Q {
    let comp = rs.root_component(root);
    let nodes = &rs.component_nodes[comp];
    let mut c = 1;
    let mut cur = eta.perm[nodes[0]];
    while !nodes.contains(&cur) {
        cur = eta.perm[cur];
        c += 1;
    }
    let ret = eta.power(c);
    let flips = nodes.iter().any(|&i| ret.perm[i] != i);
    let t = rs.components[comp];
    if flips && t.series == Series::A && t.rank % 2 == 0 && orbit_len == c {
        qr(1, 2)
    } else {
        qi(0)
    }
}

/// Eigenvalue classes of `eta * exp(2 pi i ad h)` where `node_values[i] = a_i(h)`.
pub fn combinatorial_table(
    rs: &FiniteRootSystem,
    eta: &DiagramAut,
    node_values: &[Q],
) -> Result<GradedTable> {
    let zero = vec![qi(0); rs.rank()];
    let mut table = GradedTable::new();
    for ((c, _, w), d) in combinatorial_joint_table(rs, eta, node_values, &zero)? {
        table.add(c, w, d);
    }
    Ok(table)
}

/// Joint classes of `eta * exp(2 pi i ad h)` and the commuting inner automorphism
/// `exp(2 pi i ad h')`, with `inner_values[i] = a_i(h')` and `h'` fixed by `eta`.
pub fn combinatorial_joint_table(
    rs: &FiniteRootSystem,
    eta: &DiagramAut,
    node_values: &[Q],
    inner_values: &[Q],
) -> Result<BTreeMap<(Q, Q, Vector), i64>> {
    if node_values.len() != rs.rank() || inner_values.len() != rs.rank() {
        return invalid("node value count does not match rank");
    }
    for (i, &p) in eta.perm.iter().enumerate() {
        if node_values[i] != node_values[p] || inner_values[i] != inner_values[p] {
            return invalid("node values are not invariant under the diagram automorphism");
        }
    }
    let t = eta.ambient_matrix(rs);
    let x_h = rs.dual_vector(node_values);
    let x_i = rs.dual_vector(inner_values);
    let mut out: BTreeMap<(Q, Q, Vector), i64> = BTreeMap::new();
    let mut put = |c: Q, ci: Q, w: Vector| *out.entry((frac(c), frac(ci), w)).or_insert(0) += 1;
    for orbit in root_orbits(rs, &t) {
        let k = orbit.len();
        let mut avg = zero_vec(rs.ambient_dim());
        for r in &orbit {
            avg = add(&avg, r);
        }
        let avg = scale(qr(1, k as i64), &avg);
        let shift = orbit_sign(rs, eta, &orbit[0], k);
        let beta_h = rs.form.dot(&orbit[0], &x_h);
        let beta_i = rs.form.dot(&orbit[0], &x_i);
        for m in 0..k {
            put((qi(m as i64) + shift) / qi(k as i64) + beta_h, beta_i, avg.clone());
        }
    }
    for o in eta.orbits() {
        let k = o.len() as i64;
        for m in 0..k {
            put(qr(m, k), qi(0), zero_vec(rs.ambient_dim()));
        }
    }
    Ok(out)
}

/// One indecomposable piece of a folded datum: an `eta`-orbit of simple components.
#[derive(Clone, Debug)]
pub struct FoldedPiece {
    pub components: Vec<usize>,
    pub order: usize,
    /// Indices into the folded simple roots.
    pub nodes: Vec<usize>,
    /// Highest weight of the eigenspace of class `(order - 1) / order`.
    pub theta: Vector,
}

/// The fixed-point subalgebra data of a diagram automorphism.
#[derive(Clone, Debug)]
pub struct FoldedDatum {
    pub eta: DiagramAut,
    pub fixed: Subspace,
    pub simple_roots: Vec<Vector>,
    pub simple_orbits: Vec<Vec<usize>>,
    pub roots: Vec<Vector>,
    pub pieces: Vec<FoldedPiece>,
    pub table: GradedTable,
}

pub fn fixed_point_data(rs: &FiniteRootSystem, eta: &DiagramAut) -> Result<FoldedDatum> {
    let t = eta.ambient_matrix(rs);
    let span = Subspace::span(&rs.form, &rs.simple_roots);
    let order = eta.order();
    let avg = crate::linalg::group_average(&[t.clone()], rs.ambient_dim());
    let fixed = span.fixed_by(&rs.form, &avg);
    let table = combinatorial_table(rs, eta, &vec![qi(0); rs.rank()])?;
    let roots: Vec<Vector> = table.weights(qi(0)).into_iter().map(|(w, _)| w).collect();

    let simple_orbits = eta.orbits();
    let simple_roots: Vec<Vector> = simple_orbits
        .iter()
        .map(|o| {
            let mut v = zero_vec(rs.ambient_dim());
            for &i in o {
                v = add(&v, &rs.simple_roots[i]);
            }
            scale(qr(1, o.len() as i64), &v)
        })
        .collect();
    let positive: BTreeSet<Vector> = roots
        .iter()
        .filter(|r| rs.form.dot(r, &rs.rho) > qi(0))
        .cloned()
        .collect();
    for a in &positive {
        let decomposable = positive.iter().any(|b| positive.contains(&crate::linalg::sub(a, b)));
        let is_simple = simple_roots.contains(a);
        if decomposable == is_simple {
            return Err(Error::Internal("folded simple roots are not orbit averages".into()));
        }
    }

    let mut pieces = Vec::new();
    let mut done = vec![false; rs.components.len()];
    for c in 0..rs.components.len() {
        if done[c] {
            continue;
        }
        let mut comps = vec![c];
        done[c] = true;
        let mut cur = rs.component_of(eta.perm[rs.component_nodes[c][0]]);
        while cur != c {
            done[cur] = true;
            comps.push(cur);
            cur = rs.component_of(eta.perm[rs.component_nodes[cur][0]]);
        }
        let node_set: BTreeSet<usize> =
            comps.iter().flat_map(|&k| rs.component_nodes[k].iter().copied()).collect();
        let piece_eta = DiagramAut {
            perm: (0..rs.rank())
                .map(|i| if node_set.contains(&i) { eta.perm[i] } else { i })
                .collect(),
        };
        let r = piece_eta.order();
        let nodes: Vec<usize> = simple_orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| node_set.contains(&o[0]))
            .map(|(k, _)| k)
            .collect();
        let piece_span = Subspace::span(
            &rs.form,
            &node_set.iter().map(|&i| rs.simple_roots[i].clone()).collect::<Vec<_>>(),
        );
        let target = qr(r as i64 - 1, r as i64);
        let theta = table
            .weights(target)
            .into_iter()
            .map(|(w, _)| w)
            .filter(|w| piece_span.contains(w))
            .max_by_key(|w| rs.form.dot(w, &rs.rho))
            .ok_or_else(|| Error::Internal("empty eigenspace in folded piece".into()))?;
        pieces.push(FoldedPiece { components: comps, order: r, nodes, theta });
    }
    debug_assert!(pieces.iter().all(|p| p.order <= order));
    Ok(FoldedDatum { eta: eta.clone(), fixed, simple_roots, simple_orbits, roots, pieces, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
    }

    #[test]
    fn a2_outer_fixed_points() {
        let r = rs("A2");
        let eta = DiagramAut::new(&r, vec![1, 0]).unwrap();
        let fd = fixed_point_data(&r, &eta).unwrap();
        assert_eq!(fd.table.class_dim(qi(0)), 3);
        assert_eq!(fd.table.class_dim(qr(1, 2)), 5);
        assert_eq!(fd.simple_roots.len(), 1);
        assert_eq!(r.form.norm2(&fd.simple_roots[0]), qr(1, 2));
    }

    #[test]
    fn triality_and_e6_dimensions() {
        let r = rs("D4");
        let eta = DiagramAut::new(&r, standard_automorphism(r.components[0], 3).unwrap()).unwrap();
        let fd = fixed_point_data(&r, &eta).unwrap();
        assert_eq!(fd.table.class_dim(qi(0)), 14);
        assert_eq!(fd.table.class_dim(qr(1, 3)), 7);
        let r = rs("E6");
        let eta = DiagramAut::new(&r, standard_automorphism(r.components[0], 2).unwrap()).unwrap();
        let fd = fixed_point_data(&r, &eta).unwrap();
        assert_eq!(fd.table.class_dim(qi(0)), 52);
    }

    #[test]
    fn rejects_non_automorphism() {
        let r = rs("B3");
        assert!(DiagramAut::new(&r, vec![2, 1, 0]).is_err());
    }
}
