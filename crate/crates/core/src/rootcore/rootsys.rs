use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Result};
use crate::linalg::{add, is_zero, neg, qi, scale, sub, zero_vec, Form, Matrix, Vector, Q};
use crate::rootcore::types::{cartan_from_gram, classify, Series, SimpleLieType};

/// A finite root system embedded in an ambient space with an invariant form.
#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    pub form: Form,
    pub simple_roots: Vec<Vector>,
    pub components: Vec<SimpleLieType>,
    pub component_nodes: Vec<Vec<usize>>,
    pub positive_roots: Vec<Vector>,
    /// Coordinates of each positive root in the simple roots.
    pub coefficients: Vec<Vec<i64>>,
    pub highest_roots: Vec<Vector>,
    pub rho: Vector,
    pub dual_coxeter: Vec<Q>,
    index: BTreeMap<Vector, usize>,
}

impl FiniteRootSystem {
    /// Root system of a semisimple type in simple-root coordinates.
    pub fn build(types: &[SimpleLieType]) -> Result<Self> {
        let n: usize = types.iter().map(|t| t.rank).sum();
        let mut gram = Matrix::zeros(n, n);
        let mut off = 0;
        for t in types {
            let g = t.gram();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    gram.set(off + i, off + j, g.get(i, j));
                }
            }
            off += t.rank;
        }
        let simple = (0..n).map(|i| crate::linalg::unit_vec(n, i)).collect();
        let mut rs = Self::from_simple_roots(Form::new(gram), simple)?;
        // B2 and C2 share a Cartan matrix up to relabeling
        rs.components = types.to_vec();
        Ok(rs)
    }

    pub fn parse_types(spec: &str) -> Result<Vec<SimpleLieType>> {
        spec.split(['+', ',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect()
    }

    /// Root system generated by linearly independent simple roots.
    pub fn from_simple_roots(form: Form, simple_roots: Vec<Vector>) -> Result<Self> {
        let n = simple_roots.len();
        let gram = form.gram_of(&simple_roots);
        if Matrix::from_rows(&simple_roots).rank() != n {
            return invalid("simple roots are linearly dependent");
        }
        for i in 0..n {
            if gram.get(i, i) <= qi(0) {
                return invalid("simple root of non-positive norm");
            }
        }
        let cartan = cartan_from_gram_checked(&gram)?;

        let mut component_nodes: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort();
            component_nodes.push(comp);
        }
        let components = component_nodes
            .iter()
            .map(|c| {
                let sub: Vec<Vec<i64>> =
                    c.iter().map(|&i| c.iter().map(|&j| cartan[i][j]).collect()).collect();
                classify(&sub)
            })
            .collect::<Result<Vec<_>>>()?;

        let coefficients = positive_root_coefficients(&cartan);
        let dim = form.dim();
        let positive_roots: Vec<Vector> = coefficients
            .iter()
            .map(|c| {
                let mut v = zero_vec(dim);
                for (i, &ci) in c.iter().enumerate() {
                    crate::linalg::axpy(&mut v, qi(ci), &simple_roots[i]);
                }
                v
            })
            .collect();

        let mut rho = zero_vec(dim);
        for r in &positive_roots {
            rho = add(&rho, r);
        }
        rho = scale(crate::linalg::qr(1, 2), &rho);

        let mut highest_roots = Vec::new();
        let mut dual_coxeter = Vec::new();
        for comp in &component_nodes {
            let best = coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| comp.iter().any(|&i| c[i] != 0))
                .max_by_key(|(_, c)| c.iter().sum::<i64>())
                .map(|(k, _)| k)
                .expect("component without roots");
            let theta = positive_roots[best].clone();
            let t2 = form.norm2(&theta);
            let two_g = form.dot(&theta, &add(&theta, &scale(qi(2), &rho))) * qi(2) / t2;
            dual_coxeter.push(two_g / qi(2));
            highest_roots.push(theta);
        }

        let mut index = BTreeMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            index.insert(r.clone(), k);
        }
        Ok(FiniteRootSystem {
            form,
            simple_roots,
            components,
            component_nodes,
            positive_roots,
            coefficients,
            highest_roots,
            rho,
            dual_coxeter,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_from_gram(&self.form.gram_of(&self.simple_roots))
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component_nodes.iter().position(|c| c.contains(&node)).unwrap()
    }

    /// Index of a root among positive roots, with sign.
    pub fn root_index(&self, v: &[Q]) -> Option<(usize, bool)> {
        if let Some(&k) = self.index.get(v) {
            return Some((k, true));
        }
        self.index.get(&neg(v)).map(|&k| (k, false))
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.root_index(v).is_some()
    }

    pub fn all_roots(&self) -> Vec<Vector> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| neg(r)));
        out
    }

    /// Component index of a root.
    pub fn root_component(&self, v: &[Q]) -> usize {
        let (k, _) = self.root_index(v).expect("not a root");
        let c = &self.coefficients[k];
        let node = c.iter().position(|&x| x != 0).unwrap();
        self.component_of(node)
    }

    /// Coordinates of a vector of the root span in the simple roots.
    pub fn simple_coordinates(&self, v: &[Q]) -> Option<Vector> {
        let m = Matrix::from_cols(&self.simple_roots);
        let c = m.solve(v)?;
        if m.mul_vec(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    /// Fundamental coweight images: the vector `x` in the root span with `(a_i, x) = values[i]`.
    pub fn dual_vector(&self, values: &[Q]) -> Vector {
        let g = self.form.gram_of(&self.simple_roots);
        let c = g.solve(values).expect("degenerate Gram matrix");
        let mut x = zero_vec(self.ambient_dim());
        for (i, ci) in c.iter().enumerate() {
            crate::linalg::axpy(&mut x, *ci, &self.simple_roots[i]);
        }
        x
    }

    pub fn is_simply_laced_component(&self, comp: usize) -> bool {
        matches!(self.components[comp].series, Series::A | Series::D | Series::E)
    }

    pub fn has_two_lengths(&self) -> bool {
        let lens: BTreeSet<Q> = self.simple_roots.iter().map(|r| self.form.norm2(r)).collect();
        lens.len() > 1
    }

    /// Positive roots of the closed subsystem generated by `gens`.
    pub fn closed_subsystem(&self, gens: &[Vector]) -> Result<BTreeSet<Vector>> {
        let mut set: BTreeSet<Vector> = BTreeSet::new();
        for g in gens {
            if !self.is_root(g) {
                return invalid("subsystem generator is not a root");
            }
            set.insert(g.clone());
            set.insert(neg(g));
        }
        loop {
            let cur: Vec<Vector> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &cur {
                for b in &cur {
                    let s = add(a, b);
                    if !is_zero(&s) && self.is_root(&s) && set.insert(s) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(set)
    }

    /// Difference of two roots is a root.
    pub fn is_root_difference(&self, a: &[Q], b: &[Q]) -> bool {
        self.is_root(&sub(a, b))
    }
}

fn cartan_from_gram_checked(gram: &Matrix) -> Result<Vec<Vec<i64>>> {
    let n = gram.rows();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = qi(2) * gram.get(i, j) / gram.get(j, j);
            if !c.is_integer() || (i != j && c > qi(0)) {
                return invalid("simple roots do not form a Cartan matrix");
            }
            out[i][j] = *c.numer();
        }
    }
    Ok(out)
}

/// Positive roots in simple-root coordinates by the string algorithm, sorted by height.
pub fn positive_root_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if set.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let q = p - pairing;
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if set.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_dual_coxeter() {
        for s in ["A1", "A3", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let t: SimpleLieType = s.parse().unwrap();
            let rs = FiniteRootSystem::build(&[t]).unwrap();
            assert_eq!(rs.positive_roots.len(), t.num_positive_roots(), "{s}");
            assert_eq!(rs.dual_coxeter[0], qi(t.dual_coxeter()), "{s}");
            assert_eq!(rs.form.norm2(&rs.highest_roots[0]), qi(2), "{s}");
        }
    }

    #[test]
    fn rho_pairs_to_one_with_coroots() {
        let rs = FiniteRootSystem::build(&FiniteRootSystem::parse_types("B3+G2").unwrap()).unwrap();
        for a in &rs.simple_roots {
            let c = qi(2) * rs.form.dot(&rs.rho, a) / rs.form.norm2(a);
            assert_eq!(c, qi(1));
        }
    }
}
