//! Report documents. Rationals are `p/q` strings; weights are maps keyed by basis labels
//! (`e1`, `e2`, ... for the Cartan coordinates, `K` or `K1`, `K2`, ... for levels, `delta`).

use std::collections::BTreeMap;

use affine_dirac::linalg::Q;
use affine_dirac::twistaff::{AffRoot, Weight};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::{fmt_q, parse_q};
use crate::error::CliError;

pub type WeightDoc = BTreeMap<String, String>;

fn level_key(i: usize, n: usize) -> String {
    if n == 1 {
        "K".to_string()
    } else {
        format!("K{}", i + 1)
    }
}

pub fn weight_doc(w: &Weight) -> WeightDoc {
    let mut m = WeightDoc::new();
    for (i, x) in w.fin.iter().enumerate() {
        m.insert(format!("e{}", i + 1), fmt_q(x));
    }
    for (i, l) in w.levels.iter().enumerate() {
        m.insert(level_key(i, w.levels.len()), fmt_q(l));
    }
    m.insert("delta".into(), fmt_q(&w.delta));
    m
}

pub fn root_doc(r: &AffRoot) -> WeightDoc {
    let mut m = WeightDoc::new();
    for (i, x) in r.fin.iter().enumerate() {
        m.insert(format!("e{}", i + 1), fmt_q(x));
    }
    m.insert("delta".into(), fmt_q(&r.delta));
    m
}

/// Inverse of [`weight_doc`].
pub fn parse_weight(doc: &WeightDoc) -> Result<Weight, CliError> {
    let mut fin: BTreeMap<usize, Q> = BTreeMap::new();
    let mut levels: BTreeMap<usize, Q> = BTreeMap::new();
    let mut delta = None;
    for (k, v) in doc {
        let q = parse_q(&format!("weight.{k}"), v)?;
        if k == "delta" {
            delta = Some(q);
        } else if k == "K" {
            levels.insert(1, q);
        } else if let Some(i) = k.strip_prefix('K').and_then(|i| i.parse::<usize>().ok()) {
            levels.insert(i, q);
        } else if let Some(i) = k.strip_prefix('e').and_then(|i| i.parse::<usize>().ok()) {
            fin.insert(i, q);
        } else {
            return Err(CliError::Input(format!("weight: unknown key {k:?}")));
        }
    }
    let dense = |m: &BTreeMap<usize, Q>, what: &str| -> Result<Vec<Q>, CliError> {
        if m.keys().copied().eq(1..=m.len()) {
            Ok(m.values().copied().collect())
        } else {
            Err(CliError::Input(format!("weight: {what} keys are not consecutive")))
        }
    };
    let delta = delta.ok_or_else(|| CliError::Input("weight: missing delta".into()))?;
    Ok(Weight::new(dense(&fin, "coordinate")?, dense(&levels, "level")?, delta))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleRootDoc {
    pub index: usize,
    pub mark: i64,
    /// `2 (rho_hat, alpha) / (alpha, alpha)`.
    pub rho_pairing: String,
    pub root: WeightDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityDoc {
    pub class: String,
    pub dim: i64,
    pub weight: WeightDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDataReport {
    pub setup: String,
    pub algebra: String,
    pub sigma_order: usize,
    pub dual_coxeter: Vec<String>,
    pub gcm: Vec<Vec<i64>>,
    pub rho_hat: WeightDoc,
    pub simple_roots: Vec<SimpleRootDoc>,
    pub multiplicities: Vec<MultiplicityDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub length: usize,
    pub word: Vec<usize>,
    pub depth: String,
    pub dirac_square: String,
    pub dominant: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Labels of `xi` on the simple roots of `a`.
    pub labels: Vec<String>,
    pub xi: WeightDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub setup: String,
    pub rule: String,
    pub power: usize,
    pub multiplicity: i64,
    pub length_bound: usize,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<String>,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceDoc {
    pub depth: String,
    pub total: i64,
    pub even: i64,
    pub odd: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordReport {
    pub setup: String,
    pub cutoff: String,
    pub dim_p: usize,
    pub zero_modes: usize,
    pub power: usize,
    pub product_formula_agrees: bool,
    pub top: WeightDoc,
    pub slices: Vec<SliceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub setup: String,
    pub cutoff: String,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsdimEntryDoc {
    pub per_component: Vec<f64>,
    pub asdim: f64,
    pub xi: WeightDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralChargeDoc {
    pub level: String,
    pub c_g: String,
    pub c_a: String,
    pub half_dim_p: String,
    pub value: String,
    pub balanced: bool,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumDoc {
    pub lhs: f64,
    pub rhs: f64,
    pub index: String,
    pub chi: u32,
    pub center_dim: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsdimReport {
    pub setup: String,
    pub level: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_asdim: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signed_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<CentralChargeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplet_sum: Option<SumDoc>,
    pub entries: Vec<AsdimEntryDoc>,
}

pub fn to_text<T: Serialize>(r: &T) -> String {
    toml::to_string(r).expect("reports serialize")
}

pub fn from_text<T: DeserializeOwned>(s: &str) -> Result<T, CliError> {
    toml::from_str(s).map_err(|e| CliError::Input(format!("report: {}", e.message())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_round_trip() {
        let w = Weight::new(vec![Q::new(1, 2), Q::from_integer(-3)], vec![Q::from_integer(1), Q::new(2, 3)], Q::new(-1, 4));
        assert_eq!(parse_weight(&weight_doc(&w)).unwrap(), w);
        let mut bad = weight_doc(&w);
        bad.remove("e1");
        assert!(parse_weight(&bad).is_err());
    }
}
