//! Exact rational vectors, matrices, invariant forms and lattices.

use num::integer::Integer;
use num::rational::Rational64;
use num::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Q = Rational64;
pub type Vector = Vec<Q>;

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Q::one();
    v
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn axpy(y: &mut [Q], c: Q, x: &[Q]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Euclidean dot product of coordinate vectors (no Gram matrix).
pub fn raw_dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Representative of `q` modulo 1 in `[0, 1)`.
pub fn frac(q: Q) -> Q {
    q - q.floor()
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses `p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) || fp.len() > 15 {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip: i64 = if ip == "-" || ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
        let den = 10i64.pow(fp.len() as u32);
        let f: i64 = fp.parse().map_err(|_| bad())?;
        let mag = Q::from_integer(ip.abs()) + Q::new(f, den);
        return Ok(if neg { -mag } else { mag });
    }
    t.parse::<i64>().map(Q::from_integer).map_err(|_| bad())
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|i| fmt_vec(self.row(i))).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, *x);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: &[Vector]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| raw_dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Q::one() } else { Q::zero() }))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if !f.is_zero() {
                        for j in 0..m.cols {
                            let v = m.get(i, j) - f * m.get(r, j);
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Q::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c);
            det *= piv;
            for i in c + 1..n {
                let f = m.get(i, c) / piv;
                if !f.is_zero() {
                    for j in c..n {
                        let v = m.get(i, j) - f * m.get(c, j);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Solves `self * x = b`, returning one solution if consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vector> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols);
        }
        Some(x)
    }
}

/// Symmetric bilinear form given by its Gram matrix on ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub gram: Matrix,
}

impl Form {
    pub fn new(gram: Matrix) -> Self {
        Form { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn dot(&self, a: &[Q], b: &[Q]) -> Q {
        raw_dot(a, &self.gram.mul_vec(b))
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        self.dot(a, a)
    }

    /// `2 v / (v, v)`.
    pub fn coroot(&self, v: &[Q]) -> Vector {
        scale(qi(2) / self.norm2(v), v)
    }

    /// Matrix of the orthogonal reflection in `v`.
    pub fn reflection(&self, v: &[Q]) -> Matrix {
        let n = self.dim();
        let gv = self.gram.mul_vec(v);
        let c = qi(2) / raw_dot(v, &gv);
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let x = m.get(i, j) - c * v[i] * gv[j];
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn reflect(&self, v: &[Q], x: &[Q]) -> Vector {
        let c = qi(2) * self.dot(x, v) / self.norm2(v);
        let mut out = x.to_vec();
        axpy(&mut out, -c, v);
        out
    }

    pub fn gram_of(&self, vs: &[Vector]) -> Matrix {
        let rows: Vec<Vector> = vs.iter().map(|a| vs.iter().map(|b| self.dot(a, b)).collect()).collect();
        Matrix::from_rows(&rows)
    }
}

/// Subspace of the ambient space with its form-orthogonal projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Vec<Vector>,
    pub projector: Matrix,
}

impl Subspace {
    pub fn span(form: &Form, gens: &[Vector]) -> Self {
        let n = form.dim();
        if gens.is_empty() {
            return Subspace { basis: vec![], projector: Matrix::zeros(n, n) };
        }
        let (r, pivots) = Matrix::from_rows(gens).rref();
        let basis: Vec<Vector> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self::from_basis(form, basis)
    }

    fn from_basis(form: &Form, basis: Vec<Vector>) -> Self {
        let n = form.dim();
        if basis.is_empty() {
            return Subspace { basis, projector: Matrix::zeros(n, n) };
        }
        let b = Matrix::from_cols(&basis);
        let g = form.gram_of(&basis);
        let ginv = g.inverse().expect("form degenerate on subspace");
        let projector = b.mul(&ginv).mul(&b.transpose()).mul(&form.gram);
        Subspace { basis, projector }
    }

    pub fn whole(form: &Form) -> Self {
        let n = form.dim();
        Self::from_basis(form, (0..n).map(|i| unit_vec(n, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, v: &[Q]) -> Vector {
        self.projector.mul_vec(v)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.project(v) == v
    }

    /// Orthogonal complement of `self` inside `outer`.
    pub fn complement_in(&self, form: &Form, outer: &Subspace) -> Subspace {
        let gens: Vec<Vector> = outer.basis.iter().map(|v| sub(v, &self.project(v))).filter(|v| !is_zero(v)).collect();
        Subspace::span(form, &gens)
    }

    /// Intersection with the fixed space of an isometry preserving `self`.
    pub fn fixed_by(&self, form: &Form, avg: &Matrix) -> Subspace {
        let gens: Vec<Vector> = self.basis.iter().map(|v| avg.mul_vec(v)).filter(|v| !is_zero(v)).collect();
        Subspace::span(form, &gens)
    }
}

/// Averaging operator `(1/|G|) Σ g` of the finite group generated by `gens`.
pub fn group_average(gens: &[Matrix], n: usize) -> Matrix {
    let elems = generate_matrix_group(gens, n, 100_000).expect("finite group expected");
    let mut sum = Matrix::zeros(n, n);
    for e in &elems {
        sum = sum.add(e);
    }
    sum.scale(Q::new(1, elems.len() as i64))
}

/// Breadth-first closure of a finite matrix group.
pub fn generate_matrix_group(gens: &[Matrix], n: usize, limit: usize) -> Option<Vec<Matrix>> {
    use std::collections::{HashSet, VecDeque};
    let id = Matrix::identity(n);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut out = vec![];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        if !seen.insert(m.clone()) {
            continue;
        }
        if seen.len() > limit {
            return None;
        }
        for g in gens {
            let next = m.mul(g);
            if !seen.contains(&next) {
                queue.push_back(next);
            }
        }
        out.push(m);
    }
    Some(out)
}

fn lcm_denoms(v: &[Q]) -> i64 {
    v.iter().fold(1i64, |l, x| l.lcm(x.denom()))
}

/// Column-style Hermite reduction: returns a unimodular `u` with `a * u` in column echelon form,
/// together with the number of nonzero columns of `a * u`.
fn column_echelon(a: &[Vec<i128>], n: usize) -> (Vec<Vec<i128>>, usize) {
    let m = a.len();
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut col = 0;
    for row in 0..m {
        if col == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (col..n).filter(|&j| a[row][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            swap_cols(&mut a, &mut u, col, piv);
            let mut done = true;
            for j in col + 1..n {
                if a[row][j] != 0 {
                    let f = a[row][j].div_euclid(a[row][col]);
                    col_axpy(&mut a, &mut u, j, col, -f);
                    if a[row][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    (u, col)
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    for r in u.iter_mut() {
        r.swap(i, j);
    }
}

fn col_axpy(a: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for r in a.iter_mut() {
        r[dst] += f * r[src];
    }
    for r in u.iter_mut() {
        r[dst] += f * r[src];
    }
}

/// Z-basis of `{c ∈ Z^n : a c = 0}` for a rational matrix `a`.
pub fn integer_kernel(a: &Matrix) -> Vec<Vec<i64>> {
    let n = a.cols();
    let rows: Vec<Vec<i128>> = (0..a.rows())
        .map(|i| {
            let l = lcm_denoms(a.row(i));
            a.row(i).iter().map(|x| i128::from(x.numer() * (l / x.denom()))).collect()
        })
        .collect();
    let (u, r) = column_echelon(&rows, n);
    (r..n).map(|j| (0..n).map(|i| u[i][j] as i64).collect()).collect()
}

/// Finitely generated lattice in the ambient rational space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<Vector>,
}

impl Lattice {
    pub fn generated_by(gens: &[Vector], n: usize) -> Self {
        let gens: Vec<&Vector> = gens.iter().filter(|g| !is_zero(g)).collect();
        if gens.is_empty() {
            return Lattice { basis: vec![] };
        }
        let den = gens.iter().fold(1i64, |l, g| l.lcm(&lcm_denoms(g)));
        // Columns are generators; column echelon form yields a basis.
        let mat: Vec<Vec<i128>> = (0..n)
            .map(|i| gens.iter().map(|g| i128::from(g[i].numer() * (den / g[i].denom()))).collect())
            .collect();
        let k = gens.len();
        let (u, r) = column_echelon(&mat, k);
        let basis = (0..r)
            .map(|j| {
                let mut v = zero_vec(n);
                for (gi, g) in gens.iter().enumerate() {
                    if u[gi][j] != 0 {
                        axpy(&mut v, Q::from_integer(u[gi][j] as i64), g);
                    }
                }
                v
            })
            .collect();
        Lattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self, form: &Form) -> Matrix {
        form.gram_of(&self.basis)
    }

    /// Covolume squared: determinant of the Gram matrix.
    pub fn discriminant(&self, form: &Form) -> Q {
        if self.basis.is_empty() {
            return Q::one();
        }
        self.gram(form).det()
    }

    /// Sublattice of vectors lying in `s`.
    pub fn intersect(&self, s: &Subspace) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let n = self.basis[0].len();
        // c -> (I - P) Σ c_i b_i must vanish.
        let cols: Vec<Vector> = self.basis.iter().map(|b| sub(b, &s.project(b))).collect();
        let a = Matrix::from_cols(&cols);
        let ker = integer_kernel(&a);
        let gens: Vec<Vector> = ker
            .iter()
            .map(|c| {
                let mut v = zero_vec(n);
                for (ci, b) in c.iter().zip(&self.basis) {
                    axpy(&mut v, qi(*ci), b);
                }
                v
            })
            .collect();
        Lattice::generated_by(&gens, n)
    }

    /// Whether `v` is an integral combination of the basis.
    pub fn contains(&self, v: &[Q]) -> bool {
        if is_zero(v) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let a = Matrix::from_cols(&self.basis);
        match a.solve(v) {
            Some(c) => c.iter().all(|x| x.is_integer()) && a.mul_vec(&c) == v,
            None => false,
        }
    }

    /// Index `[self : sub]` for a full-rank sublattice.
    pub fn index_of(&self, sub: &Lattice, form: &Form) -> Option<i64> {
        if sub.rank() != self.rank() {
            return None;
        }
        let r = sub.discriminant(form) / self.discriminant(form);
        let sq = isqrt_q(r)?;
        sq.is_integer().then(|| sq.to_integer())
    }
}

fn isqrt_q(r: Q) -> Option<Q> {
    if r.is_negative() {
        return None;
    }
    let n = isqrt(*r.numer())?;
    let d = isqrt(*r.denom())?;
    Some(Q::new(n, d))
}

fn isqrt(n: i64) -> Option<i64> {
    let s = (n as f64).sqrt().round() as i64;
    (s - 1..=s + 1).find(|&c| c >= 0 && c * c == n)
}

pub fn to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3", "-1/2", "7/4", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("0.25").unwrap(), qr(1, 4));
        assert_eq!(parse_q("-1.5").unwrap(), qr(-3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(&[vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]]);
        assert_eq!(m.det(), qi(3));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn projector_is_idempotent() {
        let f = Form::new(Matrix::identity(3));
        let s = Subspace::span(&f, &[vec![qi(1), qi(-1), qi(0)]]);
        let p = &s.projector;
        assert_eq!(p.mul(p), *p);
        assert_eq!(s.project(&[qi(1), qi(0), qi(0)]), vec![qr(1, 2), qr(-1, 2), qi(0)]);
    }

    #[test]
    fn lattice_basis_and_intersection() {
        let l = Lattice::generated_by(&[vec![qi(2), qi(0)], vec![qi(1), qi(1)], vec![qi(3), qi(1)]], 2);
        assert_eq!(l.rank(), 2);
        let f = Form::new(Matrix::identity(2));
        assert_eq!(l.discriminant(&f), qi(4));
        let diag = Subspace::span(&f, &[vec![qi(1), qi(1)]]);
        let m0 = l.intersect(&diag);
        assert_eq!(m0.rank(), 1);
        assert!(m0.contains(&[qi(1), qi(1)]));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let a = Matrix::from_rows(&[vec![qi(2), qi(4), qi(6)]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        let l = Lattice::generated_by(&k.iter().map(|c| c.iter().map(|&x| qi(x)).collect()).collect::<Vec<_>>(), 3);
        assert!(l.contains(&[qi(1), qi(1), qi(-1)]));
        assert!(l.contains(&[qi(-2), qi(1), qi(0)]));
    }
}
