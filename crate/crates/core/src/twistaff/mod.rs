pub mod alcove;
pub mod datum;
pub mod weight;

pub use alcove::{alcove_reduce, eta_simple_roots, normalize_sigma_mu, prop32, transport, AlcoveReduction};
pub use datum::{AffineRootDatum, Slots};
pub use weight::{AffRoot, Weight};

use num::Integer;

use crate::error::{invalid, Error, Result};
use crate::linalg::{Matrix, Q};
use crate::rootcore::{combinatorial_joint_table, combinatorial_table, fixed_point_data, DiagramAut, FiniteRootSystem, FoldedDatum, GradedTable};

/// `sigma = eta * exp(2 pi i ad h)` with `values[i] = alpha_i(h)` on the simple roots of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAutomorphism {
    pub eta: DiagramAut,
    pub values: Vec<Q>,
}

impl TwistedAutomorphism {
    pub fn new(rs: &FiniteRootSystem, eta: DiagramAut, values: Vec<Q>) -> Result<Self> {
        if values.len() != rs.rank() || eta.perm.len() != rs.rank() {
            return invalid("automorphism data does not match the rank");
        }
        if eta.perm.iter().enumerate().any(|(i, &p)| values[i] != values[p]) {
            return invalid("node values must be invariant under the diagram automorphism");
        }
        Ok(TwistedAutomorphism { eta, values })
    }

    pub fn inner(rs: &FiniteRootSystem, values: Vec<Q>) -> Result<Self> {
        Self::new(rs, DiagramAut::identity(rs.rank()), values)
    }

    /// Order on `g`: the lcm of `ord(eta)` and the denominators of the eigenvalue classes.
    pub fn order(&self, rs: &FiniteRootSystem) -> Result<usize> {
        let t = self.table(rs)?;
        let mut n = self.eta.order() as i64;
        for c in t.classes() {
            n = n.lcm(c.denom());
        }
        Ok(n as usize)
    }

    pub fn table(&self, rs: &FiniteRootSystem) -> Result<GradedTable> {
        combinatorial_table(rs, &self.eta, &self.values)
    }

    pub fn folded(&self, rs: &FiniteRootSystem) -> Result<FoldedDatum> {
        fixed_point_data(rs, &self.eta)
    }

    /// Action on the ambient Cartan dual.
    pub fn ambient(&self, rs: &FiniteRootSystem) -> Matrix {
        self.eta.ambient_matrix(rs)
    }

    /// Affine datum of `L(g, sigma)` with positivity from `rho`.
    pub fn datum(&self, rs: &FiniteRootSystem) -> Result<AffineRootDatum> {
        let fd = self.folded(rs)?;
        AffineRootDatum::from_table(rs.form.clone(), fd.fixed, self.table(rs)?, rs.rho.clone(), Slots::Single)
    }
}

/// Eigenvalue table of `sigma` on the fixed points of a commuting `mu`. One of the two must be
/// inner, or both must share the same diagram part.
pub fn fixed_subalgebra_table(
    rs: &FiniteRootSystem,
    sigma: &TwistedAutomorphism,
    mu: &TwistedAutomorphism,
) -> Result<GradedTable> {
    let mut table = GradedTable::new();
    if mu.eta.is_identity() {
        for ((c, cm, w), d) in combinatorial_joint_table(rs, &sigma.eta, &sigma.values, &mu.values)? {
            if cm == Q::from_integer(0) {
                table.add(c, w, d);
            }
        }
    } else if sigma.eta.is_identity() || sigma.eta == mu.eta {
        let diff: Vec<Q> = if sigma.eta.is_identity() {
            sigma.values.clone()
        } else {
            sigma.values.iter().zip(&mu.values).map(|(a, b)| a - b).collect()
        };
        for ((cm, c, w), d) in combinatorial_joint_table(rs, &mu.eta, &mu.values, &diff)? {
            if cm == Q::from_integer(0) {
                table.add(c, w, d);
            }
        }
    } else {
        return Err(Error::Unsupported("commuting pair with two distinct diagram parts".into()));
    }
    Ok(table)
}
