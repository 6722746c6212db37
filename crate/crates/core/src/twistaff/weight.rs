use crate::linalg::{add, fmt_q, fmt_vec, neg, qi, scale, sub, zero_vec, Form, Vector, Q};

/// Element `fin + sum_i levels[i] Lambda_0^i + delta * d` of an affine weight space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub fin: Vector,
    pub levels: Vec<Q>,
    pub delta: Q,
}

impl Weight {
    pub fn new(fin: Vector, levels: Vec<Q>, delta: Q) -> Self {
        Weight { fin, levels, delta }
    }

    pub fn zero(dim: usize, slots: usize) -> Self {
        Weight { fin: zero_vec(dim), levels: vec![qi(0); slots], delta: qi(0) }
    }

    pub fn level(&self) -> Q {
        self.levels[0]
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            fin: add(&self.fin, &o.fin),
            levels: self.levels.iter().zip(&o.levels).map(|(a, b)| a + b).collect(),
            delta: self.delta + o.delta,
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Weight {
        Weight { fin: neg(&self.fin), levels: self.levels.iter().map(|l| -l).collect(), delta: -self.delta }
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight { fin: scale(c, &self.fin), levels: self.levels.iter().map(|l| l * c).collect(), delta: self.delta * c }
    }

    pub fn add_root(&self, c: Q, r: &AffRoot) -> Weight {
        Weight { fin: add(&self.fin, &scale(c, &r.fin)), levels: self.levels.clone(), delta: self.delta + c * r.delta }
    }

    /// Squared norm for a single level: `|fin|^2 + 2 k e`.
    pub fn norm2(&self, form: &Form) -> Q {
        form.norm2(&self.fin) + qi(2) * self.level() * self.delta
    }

    pub fn dot(&self, o: &Weight, form: &Form) -> Q {
        form.dot(&self.fin, &o.fin) + self.level() * o.delta + o.level() * self.delta
    }

    pub fn display(&self) -> String {
        let lv: Vec<String> = self.levels.iter().map(fmt_q).collect();
        format!("({}; [{}]; {})", fmt_vec(&self.fin), lv.join(", "), fmt_q(&self.delta))
    }
}

/// Level-zero element `fin + delta * delta`, used for real and imaginary roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffRoot {
    pub fin: Vector,
    pub delta: Q,
}

impl AffRoot {
    pub fn new(fin: Vector, delta: Q) -> Self {
        AffRoot { fin, delta }
    }

    pub fn neg(&self) -> AffRoot {
        AffRoot { fin: neg(&self.fin), delta: -self.delta }
    }

    pub fn add(&self, o: &AffRoot) -> AffRoot {
        AffRoot { fin: add(&self.fin, &o.fin), delta: self.delta + o.delta }
    }

    pub fn sub(&self, o: &AffRoot) -> AffRoot {
        AffRoot { fin: sub(&self.fin, &o.fin), delta: self.delta - o.delta }
    }

    pub fn scale(&self, c: Q) -> AffRoot {
        AffRoot { fin: scale(c, &self.fin), delta: c * self.delta }
    }

    pub fn is_imaginary(&self) -> bool {
        self.fin.iter().all(|x| *x == qi(0))
    }

    pub fn as_weight(&self, slots: usize) -> Weight {
        Weight { fin: self.fin.clone(), levels: vec![qi(0); slots], delta: self.delta }
    }

    pub fn display(&self) -> String {
        format!("{} + {} delta", fmt_vec(&self.fin), fmt_q(&self.delta))
    }
}
