//! Built-in setups, shipped as data files.

use crate::config::SetupConfig;
use crate::error::CliError;

pub const ENTRIES: &[(&str, &str)] = &[
    ("a1-untwisted", include_str!("../catalog/a1-untwisted.toml")),
    ("a2-inner-shift", include_str!("../catalog/a2-inner-shift.toml")),
    ("a2-outer", include_str!("../catalog/a2-outer.toml")),
    ("a3-outer", include_str!("../catalog/a3-outer.toml")),
    ("b2-inner-shift", include_str!("../catalog/b2-inner-shift.toml")),
    ("d4-triality", include_str!("../catalog/d4-triality.toml")),
    ("sl2-diag-basic-vector", include_str!("../catalog/sl2-diag-basic-vector.toml")),
    ("sl2-diag-spin", include_str!("../catalog/sl2-diag-spin.toml")),
    ("sl2-gl1-basic-vector", include_str!("../catalog/sl2-gl1-basic-vector.toml")),
    ("sl2-gl1-lambda", include_str!("../catalog/sl2-gl1-lambda.toml")),
    ("sl2-gl1-spin", include_str!("../catalog/sl2-gl1-spin.toml")),
    ("sl3-diag-spin", include_str!("../catalog/sl3-diag-spin.toml")),
    ("sl3-gl2-basic-vector", include_str!("../catalog/sl3-gl2-basic-vector.toml")),
    ("sl3-gl2-lambda", include_str!("../catalog/sl3-gl2-lambda.toml")),
    ("sl3-gl2-spin", include_str!("../catalog/sl3-gl2-spin.toml")),
    ("sl3-h", include_str!("../catalog/sl3-h.toml")),
    ("sl3-so3-basic-vector", include_str!("../catalog/sl3-so3-basic-vector.toml")),
    ("sl3-so3-spin", include_str!("../catalog/sl3-so3-spin.toml")),
    ("sl4-sp4-basic-vector", include_str!("../catalog/sl4-sp4-basic-vector.toml")),
    ("sl4-sp4-spin", include_str!("../catalog/sl4-sp4-spin.toml")),
    ("so6-so5-id", include_str!("../catalog/so6-so5-id.toml")),
    ("so6-so5-minus-id", include_str!("../catalog/so6-so5-minus-id.toml")),
    ("so6-so5-rot3", include_str!("../catalog/so6-so5-rot3.toml")),
    ("so6-so5-rot4-refl", include_str!("../catalog/so6-so5-rot4-refl.toml")),
    ("so7-so6-id", include_str!("../catalog/so7-so6-id.toml")),
    ("so7-so6-minus-id", include_str!("../catalog/so7-so6-minus-id.toml")),
    ("so7-so6-rot3", include_str!("../catalog/so7-so6-rot3.toml")),
    ("so7-so6-rot4-refl", include_str!("../catalog/so7-so6-rot4-refl.toml")),
    ("so8-so7-id", include_str!("../catalog/so8-so7-id.toml")),
    ("so8-so7-minus-id", include_str!("../catalog/so8-so7-minus-id.toml")),
    ("so8-so7-rot3", include_str!("../catalog/so8-so7-rot3.toml")),
    ("so8-so7-rot4-refl", include_str!("../catalog/so8-so7-rot4-refl.toml")),
    ("so9-so8-id", include_str!("../catalog/so9-so8-id.toml")),
    ("so9-so8-minus-id", include_str!("../catalog/so9-so8-minus-id.toml")),
    ("so9-so8-rot3", include_str!("../catalog/so9-so8-rot3.toml")),
    ("so9-so8-rot4-refl", include_str!("../catalog/so9-so8-rot4-refl.toml")),
    ("sp4-gl2-basic-vector", include_str!("../catalog/sp4-gl2-basic-vector.toml")),
    ("sp4-gl2-spin", include_str!("../catalog/sp4-gl2-spin.toml")),
    ("sp4-sp2sp2-basic-vector", include_str!("../catalog/sp4-sp2sp2-basic-vector.toml")),
    ("sp4-sp2sp2-spin", include_str!("../catalog/sp4-sp2sp2-spin.toml")),
];

pub fn get(name: &str) -> Result<SetupConfig, CliError> {
    let text = ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CliError::Input(format!("catalog: no entry named {name:?}")))?;
    SetupConfig::from_toml(text)
}

pub fn all() -> Vec<SetupConfig> {
    ENTRIES.iter().map(|(_, t)| SetupConfig::from_toml(t).expect("catalog entries parse")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_files() {
        for c in all() {
            assert!(ENTRIES.iter().any(|(n, _)| *n == c.name), "{}", c.name);
        }
    }
}
