//! Setup configuration files and their conversion into library objects.

use std::path::Path;

use affine_dirac::dirac::levelone::{level_one_setup, LevelOneKind};
use affine_dirac::dirac::sopairs::{so_pair_setup, TClass};
use affine_dirac::dirac::DiracSetup;
use affine_dirac::linalg::{Vector, Q};
use affine_dirac::rootcore::{DiagramAut, FiniteRootSystem};
use affine_dirac::twistaff::TwistedAutomorphism;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Minimal coset representatives of the folded group.
    #[default]
    Kernel,
    /// Closed forms for symmetric pairs at level one.
    LevelOne,
    /// Closed forms for `(so(V + 1), so(V))`.
    SoPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubalgebraKind {
    FixedPointsOfMu,
    RootSubsystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelOneChoice {
    BasicVector,
    Spin,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutConfig {
    /// Node permutation; identity when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    /// Values on the simple roots, as `p/q` strings.
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraConfig {
    pub kind: SubalgebraKind,
    /// Generators of a root subsystem, in simple-root coordinates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoPairConfig {
    /// `dim V`.
    pub dim: usize,
    /// Rotation angles of `T` as fractions of a full turn.
    #[serde(default)]
    pub angles: Vec<String>,
    #[serde(default)]
    pub reflect: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Simple components, e.g. `"A2"` or `"A1+A1"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default)]
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_one: Option<LevelOneChoice>,
    /// Labels of `Lambda` on the simple roots of `g`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Expected decomposition report for `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub golden: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<AutConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<AutConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<SubalgebraConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub so_pair: Option<SoPairConfig>,
}

pub const DEFAULT_CUTOFF: i64 = 2;
pub const DEFAULT_LENGTH_BOUND: usize = 8;

/// Parses `p/q` or an integer.
pub fn parse_q(field: &str, s: &str) -> Result<Q, CliError> {
    let bad = || CliError::Input(format!("{field}: malformed rational {s:?}"));
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (t.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn parse_qs(field: &str, xs: &[String]) -> Result<Vec<Q>, CliError> {
    xs.iter().enumerate().map(|(i, x)| parse_q(&format!("{field}[{i}]"), x)).collect()
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A configuration resolved into library objects.
pub struct Built {
    pub config: SetupConfig,
    pub rs: Option<FiniteRootSystem>,
    pub sigma: Option<TwistedAutomorphism>,
    pub mu: Option<TwistedAutomorphism>,
    pub t_class: Option<(usize, TClass)>,
    pub cutoff: Q,
    pub length_bound: usize,
}

impl SetupConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn build(self) -> Result<Built, CliError> {
        let cutoff = match &self.cutoff {
            Some(c) => parse_q("cutoff", c)?,
            None => Q::from_integer(DEFAULT_CUTOFF),
        };
        if cutoff < Q::from_integer(0) {
            return Err(CliError::Input("cutoff: must be nonnegative".into()));
        }
        let length_bound = self.length_bound.unwrap_or(DEFAULT_LENGTH_BOUND);
        if self.rule == Rule::SoPair {
            let sp = self.so_pair.as_ref().ok_or_else(|| CliError::Input("so_pair: missing table".into()))?;
            let angles = parse_qs("so_pair.angles", &sp.angles)?;
            let t = TClass { angles, reflect: sp.reflect };
            return Ok(Built { t_class: Some((sp.dim, t)), rs: None, sigma: None, mu: None, config: self, cutoff, length_bound });
        }
        let algebra = self.algebra.as_deref().ok_or_else(|| CliError::Input("algebra: missing".into()))?;
        let types = FiniteRootSystem::parse_types(algebra).map_err(|e| CliError::Input(format!("algebra: {e}")))?;
        let rs = FiniteRootSystem::build(&types).map_err(|e| CliError::Input(format!("algebra: {e}")))?;
        let aut = |field: &str, c: &AutConfig| -> Result<TwistedAutomorphism, CliError> {
            let values = parse_qs(&format!("{field}.values"), &c.values)?;
            if values.len() != rs.rank() {
                return Err(CliError::Input(format!("{field}.values: expected {} entries", rs.rank())));
            }
            let perm = c.perm.clone().unwrap_or_else(|| (0..rs.rank()).collect());
            let eta = DiagramAut::new(&rs, perm).map_err(|e| CliError::Input(format!("{field}.perm: {e}")))?;
            TwistedAutomorphism::new(&rs, eta, values).map_err(|e| CliError::Input(format!("{field}: {e}")))
        };
        let mu = self.mu.as_ref().map(|m| aut("mu", m)).transpose()?;
        let sigma = match (&self.sigma, self.rule) {
            (Some(s), _) => Some(aut("sigma", s)?),
            (None, Rule::LevelOne) => None,
            (None, _) => Some(
                TwistedAutomorphism::inner(&rs, vec![Q::from_integer(0); rs.rank()])
                    .map_err(|e| CliError::Input(format!("sigma: {e}")))?,
            ),
        };
        if self.rule == Rule::LevelOne && (self.level_one.is_none() || mu.is_none()) {
            return Err(CliError::Input("level_one: the level-one rule needs `level_one` and `mu`".into()));
        }
        Ok(Built { config: self, rs: Some(rs), sigma, mu, t_class: None, cutoff, length_bound })
    }
}

impl Built {
    pub fn name(&self) -> &str {
        &self.config.name
    }

    pub fn level_one_kind(&self) -> Option<LevelOneKind> {
        self.config.level_one.as_ref().map(|k| match k {
            LevelOneChoice::BasicVector => LevelOneKind::BasicVector,
            LevelOneChoice::Spin => LevelOneKind::Spin,
        })
    }

    /// The twisting automorphism of `g` for root-data purposes.
    pub fn sigma(&self) -> Result<TwistedAutomorphism, CliError> {
        if let Some(s) = &self.sigma {
            return Ok(s.clone());
        }
        let rs = self.rs.as_ref().ok_or_else(|| CliError::Input("this setup has no diagram data".into()))?;
        match self.level_one_kind() {
            Some(LevelOneKind::BasicVector) => Ok(self.mu.clone().expect("checked in build")),
            _ => Ok(TwistedAutomorphism::inner(rs, vec![Q::from_integer(0); rs.rank()])?),
        }
    }

    pub fn setup(&self) -> Result<DiracSetup, CliError> {
        let name = self.name();
        let mut s = if let Some((n, t)) = &self.t_class {
            so_pair_setup(*n, t)?
        } else {
            let rs = self.rs.as_ref().expect("diagram data");
            if self.config.rule == Rule::LevelOne {
                let mu = self.mu.as_ref().expect("checked in build");
                level_one_setup(name, rs, mu, self.level_one_kind().expect("checked in build"))?
            } else {
                let sigma = self.sigma()?;
                let sub = self.config.subalgebra.as_ref().ok_or_else(|| CliError::Input("subalgebra: missing".into()))?;
                match sub.kind {
                    SubalgebraKind::FixedPointsOfMu => {
                        let mu = self.mu.as_ref().ok_or_else(|| CliError::Input("mu: missing".into()))?;
                        DiracSetup::from_diagram(name, rs, &sigma, mu)?
                    }
                    SubalgebraKind::RootSubsystem => {
                        let gens = sub
                            .roots
                            .iter()
                            .enumerate()
                            .map(|(i, c)| root_from_coefficients(rs, c).ok_or_else(|| CliError::Input(format!("subalgebra.roots[{i}]: not a root"))))
                            .collect::<Result<Vec<_>, _>>()?;
                        DiracSetup::root_subsystem(name, rs, &sigma, &gens)?
                    }
                }
            }
        };
        s.name = name.to_string();
        if !self.config.lambda.is_empty() {
            let labels = parse_qs("lambda", &self.config.lambda)?;
            if labels.len() != s.g.simple.len() {
                return Err(CliError::Input(format!("lambda: expected {} labels", s.g.simple.len())));
            }
            s = s.with_lambda(&labels)?;
        }
        Ok(s)
    }
}

fn root_from_coefficients(rs: &FiniteRootSystem, c: &[i64]) -> Option<Vector> {
    if c.len() != rs.rank() {
        return None;
    }
    let mut v = vec![Q::from_integer(0); rs.ambient_dim()];
    for (k, r) in c.iter().zip(&rs.simple_roots) {
        for (x, y) in v.iter_mut().zip(r) {
            *x += Q::from_integer(*k) * y;
        }
    }
    rs.is_root(&v).then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_q("x", "3/6").unwrap(), Q::new(1, 2));
        assert_eq!(parse_q("x", " -2 ").unwrap(), Q::from_integer(-2));
        for bad in ["1/0", "a", "1/", "1.5"] {
            let e = parse_q("sigma.values[1]", bad).unwrap_err().to_string();
            assert!(e.contains("sigma.values[1]"), "{e}");
        }
        assert_eq!(fmt_q(&Q::new(-3, 4)), "-3/4");
        assert_eq!(fmt_q(&Q::from_integer(5)), "5");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let e = SetupConfig::from_toml("name = \"x\"\nalgebra = \"A1\"\nbogus = 1\n").unwrap_err();
        assert!(e.to_string().contains("bogus"));
    }
}
