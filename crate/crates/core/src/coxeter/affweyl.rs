use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::linalg::{add, neg, qi, qr, scale, Form, Matrix, Vector, Q};
use crate::twistaff::weight::{AffRoot, Weight};

/// Affine Weyl group element `t_trans * lin`, acting on `(x, k, e)` by
/// `x -> lin x + k trans`, `e -> e - (lin x, trans) - |trans|^2 k / 2`.
///
/// The reduced word is kept alongside when known; equality ignores it.
#[derive(Clone, Debug)]
pub struct AffWeylElt {
    pub lin: Matrix,
    pub trans: Vector,
    pub word: Vec<usize>,
}

impl PartialEq for AffWeylElt {
    fn eq(&self, o: &Self) -> bool {
        self.lin == o.lin && self.trans == o.trans
    }
}

impl Eq for AffWeylElt {}

impl Hash for AffWeylElt {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.lin.hash(h);
        self.trans.hash(h);
    }
}

impl PartialOrd for AffWeylElt {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for AffWeylElt {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.lin, &self.trans).cmp(&(&o.lin, &o.trans))
    }
}

impl AffWeylElt {
    pub fn identity(n: usize) -> Self {
        AffWeylElt { lin: Matrix::identity(n), trans: vec![qi(0); n], word: vec![] }
    }

    /// Reflection in the real root `c delta + beta`: `(s_beta, -c beta^vee)`.
    pub fn reflection(form: &Form, root: &AffRoot) -> Self {
        AffWeylElt {
            lin: form.reflection(&root.fin),
            trans: scale(-root.delta, &form.coroot(&root.fin)),
            word: vec![],
        }
    }

    pub fn with_word(mut self, word: Vec<usize>) -> Self {
        self.word = word;
        self
    }

    /// `self * other`.
    pub fn compose(&self, o: &AffWeylElt) -> AffWeylElt {
        let mut word = self.word.clone();
        word.extend(&o.word);
        AffWeylElt {
            lin: self.lin.mul(&o.lin),
            trans: add(&self.trans, &self.lin.mul_vec(&o.trans)),
            word,
        }
    }

    pub fn inverse(&self) -> AffWeylElt {
        let inv = self.lin.inverse().expect("invertible");
        let trans = neg(&inv.mul_vec(&self.trans));
        let mut word = self.word.clone();
        word.reverse();
        AffWeylElt { lin: inv, trans, word }
    }

    pub fn is_identity(&self) -> bool {
        self.lin.is_identity() && self.trans.iter().all(|x| *x == qi(0))
    }

    /// Action on a single-level weight.
    pub fn act(&self, form: &Form, w: &Weight) -> Weight {
        let k = w.level();
        let ax = self.lin.mul_vec(&w.fin);
        let fin = add(&ax, &scale(k, &self.trans));
        let delta = w.delta - form.dot(&ax, &self.trans) - qr(1, 2) * form.norm2(&self.trans) * k;
        Weight::new(fin, w.levels.clone(), delta)
    }

    pub fn act_root(&self, form: &Form, r: &AffRoot) -> AffRoot {
        let ax = self.lin.mul_vec(&r.fin);
        let delta = r.delta - form.dot(&ax, &self.trans);
        AffRoot::new(ax, delta)
    }

    /// Affine action on a point of level one.
    pub fn act_point(&self, x: &[Q]) -> Vector {
        add(&self.lin.mul_vec(x), &self.trans)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    #[test]
    fn reflection_is_involution_and_matches_formula() {
        let form = Form::new(Matrix::identity(2));
        let root = AffRoot::new(vec![qi(1), qi(-1)], qi(1));
        let s = AffWeylElt::reflection(&form, &root);
        assert!(s.compose(&s).is_identity());
        let w = Weight::new(vec![qr(1, 3), qi(2)], vec![qi(3)], qi(5));
        let direct = {
            let n = qi(2) * (form.dot(&w.fin, &root.fin) + root.delta * w.level()) / form.norm2(&root.fin);
            w.add_root(-n, &root)
        };
        assert_eq!(s.act(&form, &w), direct);
        assert_eq!(s.act(&form, &w).norm2(&form), w.norm2(&form));
    }

    #[test]
    fn composition_is_action_composition() {
        let form = Form::new(Matrix::identity(2));
        let a = AffWeylElt::reflection(&form, &AffRoot::new(unit_vec(2, 0), qr(1, 2)));
        let b = AffWeylElt::reflection(&form, &AffRoot::new(vec![qi(1), qi(1)], qi(-2)));
        let w = Weight::new(vec![qi(1), qr(2, 7)], vec![qi(2)], qi(0));
        assert_eq!(a.compose(&b).act(&form, &w), a.act(&form, &b.act(&form, &w)));
        assert!(a.compose(&b).compose(&a.compose(&b).inverse()).is_identity());
    }
}
