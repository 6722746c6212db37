//! Twisted Clifford modules `F^sigma(V)`: pure-spinor monomials, their weights and characters.


use crate::charworks::GradedCharacter;
use crate::error::{Error, Result};
use crate::linalg::{frac, is_zero, neg, qi, sub, Form, Vector, Q};
use crate::rootcore::GradedTable;
use crate::twistaff::{AffRoot, AffineRootDatum, Weight};

/// Graded orthogonal space `V` with the data fixing a maximal isotropic subspace of its loop space.
#[derive(Clone, Debug)]
pub struct CliffordModuleSpec {
    pub form: Form,
    /// Eigenvalue classes and weights of `V`, including zero weights.
    pub table: GradedTable,
    /// Regular element choosing the positive nonzero weights of `V^0`.
    pub positivity: Vector,
    /// Weight of the vacuum, `rho_sigma - rho_a` in the coordinates of `a`.
    pub top: Weight,
}

/// Creation operator `t^{-depth} x` for `x` in a weight space of `V`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Zero-weight vector of `V^0`.
    V { depth: Q, index: usize },
    Xi { depth: Q, weight: Vector, index: usize },
}

impl Mode {
    pub fn depth(&self) -> Q {
        match self {
            Mode::V { depth, .. } | Mode::Xi { depth, .. } => *depth,
        }
    }

    /// Affine weight `x - depth delta` of the mode.
    pub fn root(&self, n: usize) -> AffRoot {
        match self {
            Mode::V { depth, .. } => AffRoot::new(vec![qi(0); n], -*depth),
            Mode::Xi { depth, weight, .. } => AffRoot::new(weight.clone(), -*depth),
        }
    }

    fn key(&self) -> (Q, u8, Vector, usize) {
        match self {
            Mode::V { depth, index } => (*depth, 0, vec![], *index),
            Mode::Xi { depth, weight, index } => (*depth, 1, weight.clone(), *index),
        }
    }
}

/// Product of distinct modes, kept strictly increasing in the order of [`CliffordModuleSpec::modes`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinorMonomial {
    pub modes: Vec<Mode>,
}

impl SpinorMonomial {
    pub fn new(mut modes: Vec<Mode>) -> Result<Self> {
        modes.sort_by_key(|m| m.key());
        if modes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("a fermionic monomial cannot repeat a mode".into()));
        }
        Ok(SpinorMonomial { modes })
    }

    pub fn depth(&self) -> Q {
        self.modes.iter().map(Mode::depth).sum()
    }

    pub fn parity(&self) -> usize {
        self.modes.len() % 2
    }
}

/// Characters of the whole module and of its two parity halves.
#[derive(Clone, Debug)]
pub struct CliffordCharacters {
    pub total: GradedCharacter,
    pub even: GradedCharacter,
    pub odd: GradedCharacter,
}

impl CliffordCharacters {
    /// `ch^+ - ch^-`.
    pub fn super_character(&self) -> GradedCharacter {
        self.even.sub(&self.odd).expect("parity halves share levels")
    }
}

impl CliffordModuleSpec {
    pub fn new(form: Form, table: GradedTable, positivity: Vector, top: Weight) -> Result<Self> {
        let spec = CliffordModuleSpec { form, table, positivity, top };
        spec.check_symmetric()?;
        let zero = spec.table.weights(qi(0));
        if zero.iter().any(|(w, _)| spec.form.dot(w, &spec.positivity) == qi(0)) {
            return Err(Error::Hypothesis("positivity element is not regular on V^0".into()));
        }
        Ok(spec)
    }

    fn check_symmetric(&self) -> Result<()> {
        for ((c, w), d) in &self.table.entries {
            if *d < 0 {
                return Err(Error::Invalid("negative dimension in the graded table".into()));
            }
            if self.table.dim_of(frac(-*c), &neg(w)) != *d {
                return Err(Error::Hypothesis("the form is degenerate on V".into()));
            }
        }
        Ok(())
    }

    /// `dim h_p`, the zero-weight part of `V^0`.
    pub fn zero_modes(&self) -> usize {
        self.table.zero_dim(qi(0)) as usize
    }

    /// Dimension of the isotropic half of `h_p` that annihilates the vacuum.
    pub fn isotropic_half(&self) -> usize {
        self.zero_modes() / 2
    }

    /// Number of zero-depth `v` modes; also the exponent of the common multiplicity.
    pub fn free_zero_modes(&self) -> usize {
        self.zero_modes() - self.isotropic_half()
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// All creation operators of depth at most `d`, in the fixed total order.
    pub fn modes(&self, d: Q) -> Vec<Mode> {
        let mut out = Vec::new();
        for ((c, w), &dim) in &self.table.entries {
            let first = if *c == qi(0) { qi(1) } else { qi(1) - *c };
            let mut depth = first;
            while depth <= d {
                for index in 0..dim as usize {
                    out.push(if is_zero(w) {
                        Mode::V { depth, index }
                    } else {
                        Mode::Xi { depth, weight: w.clone(), index }
                    });
                }
                depth += qi(1);
            }
            if *c == qi(0) && !is_zero(w) && self.form.dot(w, &self.positivity) < qi(0) {
                for index in 0..dim as usize {
                    out.push(Mode::Xi { depth: qi(0), weight: w.clone(), index });
                }
            }
        }
        for index in 0..self.free_zero_modes() {
            out.push(Mode::V { depth: qi(0), index });
        }
        out.sort_by_key(|m| m.key());
        out
    }

    pub fn monomial_weight(&self, m: &SpinorMonomial) -> Weight {
        let n = self.dim();
        m.modes.iter().fold(self.top.clone(), |acc, x| acc.add_root(qi(1), &x.root(n)))
    }

    /// Every monomial of depth at most `d`.
    pub fn monomials(&self, d: Q) -> Vec<SpinorMonomial> {
        let modes = self.modes(d);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        enumerate(&modes, 0, d, &mut cur, &mut out);
        out
    }

    /// Character by enumerating pure spinors, split by parity.
    pub fn graded_character(&self, d: Q) -> CliffordCharacters {
        let mk = || GradedCharacter::zero(self.top.levels.clone(), self.top.delta, d);
        let (mut total, mut even, mut odd) = (mk(), mk(), mk());
        for m in self.monomials(d) {
            let w = self.monomial_weight(&m);
            let depth = self.top.delta - w.delta;
            total.insert(depth, w.fin.clone(), 1);
            if m.parity() == 0 {
                even.insert(depth, w.fin, 1);
            } else {
                odd.insert(depth, w.fin, 1);
            }
        }
        CliffordCharacters { total, even, odd }
    }

    /// `2^{L-l} e^{top} prod (1 + e^{-alpha})^{mult}` over the positive affine roots of `V`.
    pub fn product_character(&self, d: Q) -> GradedCharacter {
        let n = self.dim();
        let zero_levels = vec![qi(0); self.top.levels.len()];
        let mut acc = GradedCharacter::monomial(&self.top, d);
        for ((c, w), &dim) in &self.table.entries {
            let mut depths = Vec::new();
            let mut j = if *c == qi(0) { qi(1) } else { *c };
            while j <= d {
                depths.push(j);
                j += qi(1);
            }
            if *c == qi(0) && !is_zero(w) && self.form.dot(w, &self.positivity) > qi(0) {
                depths.push(qi(0));
            }
            for j in depths {
                let mut factor = GradedCharacter::zero(zero_levels.clone(), qi(0), d);
                factor.insert(qi(0), vec![qi(0); n], 1);
                factor.insert(j, neg(w), 1);
                for _ in 0..dim {
                    acc = acc.mul(&factor);
                }
            }
        }
        acc.scale(1 << self.free_zero_modes())
    }

    /// Copy with `extra` more zero-weight dimensions in `V^0`.
    pub fn with_extra_zero_modes(&self, extra: i64) -> Self {
        let mut out = self.clone();
        out.table.add(qi(0), vec![qi(0); self.dim()], extra);
        out
    }
}

fn enumerate(modes: &[Mode], start: usize, budget: Q, cur: &mut Vec<Mode>, out: &mut Vec<SpinorMonomial>) {
    out.push(SpinorMonomial { modes: cur.clone() });
    for i in start..modes.len() {
        let depth = modes[i].depth();
        if depth > budget {
            continue;
        }
        cur.push(modes[i].clone());
        enumerate(modes, i + 1, budget - depth, cur, out);
        cur.pop();
    }
}

/// Clifford module on `p`, the orthocomplement of `a` in `g`, with weights restricted to the
/// Cartan of `a`.
pub fn build_spec(g: &AffineRootDatum, a: &AffineRootDatum) -> Result<CliffordModuleSpec> {
    let mut table = g.table.map_weights(|w| a.space.project(w));
    for ((c, w), d) in &a.table.entries {
        table.add(*c, w.clone(), -d);
    }
    if table.has_negative() {
        return Err(Error::Invalid("a is not a graded subalgebra of g".into()));
    }
    let levels: Vec<Q> = a.casimir.iter().map(|gi| g.casimir[0] - gi).collect();
    let fin = sub(&a.space.project(&g.rho_sigma()), &a.rho_sigma());
    let top = Weight::new(fin, levels, qi(0));
    CliffordModuleSpec::new(g.form.clone(), table, a.positivity.clone(), top)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::charworks::restrict_and_compare;
    use crate::linalg::{qr, Matrix};

    fn line_spec(classes: &[(Q, i64, i64)]) -> CliffordModuleSpec {
        let mut t = GradedTable::new();
        for &(c, w, d) in classes {
            t.add(c, vec![qi(w)], d);
        }
        CliffordModuleSpec::new(Form::new(Matrix::identity(1)), t, vec![qi(1)], Weight::zero(1, 1)).unwrap()
    }

    #[test]
    fn empty_space_has_trivial_character() {
        let s = line_spec(&[]);
        let ch = s.graded_character(qi(3));
        assert_eq!(ch.total.terms.len(), 1);
        assert_eq!(ch.odd.terms.len(), 0);
    }

    #[test]
    fn enumeration_matches_product_on_small_tables() {
        let s = line_spec(&[(qi(0), 1, 1), (qi(0), -1, 1), (qi(0), 0, 3), (qr(1, 2), 0, 2), (qr(1, 3), 2, 1), (qr(2, 3), -2, 1)]);
        assert_eq!(s.free_zero_modes(), 2);
        let ch = s.graded_character(qi(3));
        let p = s.product_character(qi(3));
        assert!(restrict_and_compare(&ch.total, &p, qi(3)).unwrap().is_empty());
        let back = ch.even.add(&ch.odd).unwrap();
        assert!(restrict_and_compare(&back, &ch.total, qi(3)).unwrap().is_empty());
    }

    #[test]
    fn weights_of_single_modes() {
        let s = line_spec(&[(qi(0), 1, 1), (qi(0), -1, 1), (qi(0), 0, 1)]);
        let m = SpinorMonomial::new(vec![Mode::Xi { depth: qi(0), weight: vec![qi(-1)], index: 0 }]).unwrap();
        assert_eq!(s.monomial_weight(&m), Weight::new(vec![qi(-1)], vec![qi(0)], qi(0)));
        let m = SpinorMonomial::new(vec![
            Mode::V { depth: qi(1), index: 0 },
            Mode::Xi { depth: qi(1), weight: vec![qi(1)], index: 0 },
        ])
        .unwrap();
        assert_eq!(s.monomial_weight(&m), Weight::new(vec![qi(1)], vec![qi(0)], qi(-2)));
        assert!(SpinorMonomial::new(vec![Mode::V { depth: qi(1), index: 0 }; 2]).is_err());
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let mut t = GradedTable::new();
        t.add(qr(1, 3), vec![qi(1)], 1);
        assert!(CliffordModuleSpec::new(Form::new(Matrix::identity(1)), t, vec![qi(1)], Weight::zero(1, 1)).is_err());
    }
}
