use std::collections::{BTreeMap, HashMap};

use crate::charworks::GradedCharacter;
use crate::error::{Error, Result};
use crate::linalg::{qi, Matrix, Vector, Q};
use crate::twistaff::{AffRoot, AffineRootDatum, Weight};

/// Coordinates of `(fin, delta)` in the basis of simple roots.
fn simple_coords(basis: &Matrix, r: &AffRoot) -> Option<Vec<Q>> {
    let mut v = r.fin.clone();
    v.push(r.delta);
    let x = basis.solve(&v)?;
    (basis.mul_vec(&x) == v).then_some(x)
}

/// Multiplicity recursion over the weights of `L(lambda)`, for a datum with one affine component
/// and no center.
pub fn freudenthal_character(datum: &AffineRootDatum, lambda: &Weight, d: Q) -> Result<GradedCharacter> {
    if datum.components.len() != 1 || datum.center.dim() != 0 || datum.num_slots != 1 {
        return Err(Error::Unsupported("recursion needs a single affine component".into()));
    }
    if !datum.is_dominant_integral(lambda) {
        return Err(Error::Invalid(format!("{} is not dominant integral", lambda.display())));
    }
    let form = &datum.form;
    let cols: Vec<Vector> = datum
        .simple
        .iter()
        .map(|a| {
            let mut v = a.fin.clone();
            v.push(a.delta);
            v
        })
        .collect();
    let basis = Matrix::from_cols(&cols);
    let roots: Vec<(AffRoot, i64, Vec<Q>)> = datum
        .positive_roots(d)
        .into_iter()
        .map(|(a, m)| {
            let c = simple_coords(&basis, &a).ok_or_else(|| Error::Internal("root outside the simple span".into()))?;
            Ok((a, m, c))
        })
        .collect::<Result<_>>()?;
    let rho = &datum.rho_hat;
    let top = lambda.add(rho).norm2(form);

    let mut mult: HashMap<Vec<i64>, (Weight, i64)> = HashMap::new();
    let n = datum.simple.len();
    mult.insert(vec![0; n], (lambda.clone(), 1));
    let mut layer: Vec<Vec<i64>> = vec![vec![0; n]];
    while !layer.is_empty() {
        let mut cand: BTreeMap<Vec<i64>, Weight> = BTreeMap::new();
        for c in &layer {
            let w = &mult[c].0;
            for (i, a) in datum.simple.iter().enumerate() {
                let nw = w.add_root(qi(-1), a);
                if lambda.delta - nw.delta > d {
                    continue;
                }
                let mut nc = c.clone();
                nc[i] += 1;
                cand.insert(nc, nw);
            }
        }
        let mut next = Vec::new();
        for (c, mu) in cand {
            let lhs = top - mu.add(rho).norm2(form);
            let mut rhs = qi(0);
            for (a, m, ac) in &roots {
                let mut k = 1i64;
                loop {
                    let key: Option<Vec<i64>> = c
                        .iter()
                        .zip(ac)
                        .map(|(x, y)| {
                            let v = qi(*x) - qi(k) * y;
                            (v >= qi(0)).then(|| v.to_integer())
                        })
                        .collect();
                    let Some(key) = key else { break };
                    if let Some((w, m_up)) = mult.get(&key) {
                        rhs += qi(2 * m * m_up) * datum.pair(w, a);
                    }
                    k += 1;
                }
            }
            if lhs == qi(0) {
                if rhs != qi(0) {
                    return Err(Error::Internal("recursion hit a zero norm gap".into()));
                }
                continue;
            }
            let m = rhs / lhs;
            if !m.is_integer() {
                return Err(Error::Internal(format!("non-integral multiplicity at {}", mu.display())));
            }
            if m > qi(0) {
                mult.insert(c.clone(), (mu, m.to_integer()));
                next.push(c);
            }
        }
        layer = next;
    }
    let mut out = GradedCharacter::zero(lambda.levels.clone(), lambda.delta, d);
    for (w, m) in mult.values() {
        out.insert(lambda.delta - w.delta, w.fin.clone(), *m);
    }
    Ok(out)
}
