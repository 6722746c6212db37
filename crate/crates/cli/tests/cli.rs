use std::path::PathBuf;
use std::process::{Command, Output};

use affine_dirac_cli::catalog;
use affine_dirac_cli::commands;
use affine_dirac_cli::config::SetupConfig;
use affine_dirac_cli::report::{from_text, to_text, DecomposeReport, RootDataReport, Status, VerifyReport};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-dirac")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affine-dirac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn untwisted_a1_root_data() {
    let r = commands::root_data(&catalog::get("a1-untwisted").unwrap().build().unwrap()).unwrap();
    assert_eq!(r.gcm, vec![vec![2, -2], vec![-2, 2]]);
    assert_eq!(r.sigma_order, 1);
    assert!(r.simple_roots.iter().all(|s| s.rho_pairing == "1"));
}

#[test]
fn twisted_a2_root_data() {
    let r = commands::root_data(&catalog::get("a2-outer").unwrap().build().unwrap()).unwrap();
    let mut gcm = r.gcm.clone();
    gcm.sort();
    assert_eq!(gcm, vec![vec![-4, 2], vec![2, -1]]);
    assert_eq!(r.sigma_order, 2);
}

#[test]
fn reports_round_trip() {
    let b = catalog::get("sl3-gl2-lambda").unwrap().build().unwrap();
    let r = commands::root_data(&b).unwrap();
    assert_eq!(from_text::<RootDataReport>(&to_text(&r)).unwrap(), r);
    let d = commands::decompose(&b).unwrap();
    assert_eq!(from_text::<DecomposeReport>(&to_text(&d)).unwrap(), d);
    let v = commands::verify(&b).unwrap();
    assert_eq!(from_text::<VerifyReport>(&to_text(&v)).unwrap(), v);
}

#[test]
fn configs_round_trip() {
    for c in catalog::all() {
        assert_eq!(SetupConfig::from_toml(&c.to_toml()).unwrap(), c);
    }
}

#[test]
fn output_is_deterministic() {
    for sub in ["root-data", "decompose", "clifford", "verify", "asdim"] {
        let a = bin(&[sub, "--catalog", "sp4-gl2-spin"]);
        let b = bin(&[sub, "--catalog", "sp4-gl2-spin"]);
        assert!(a.status.success(), "{sub}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{sub}");
    }
}

#[test]
fn diagonal_pair_has_one_entry() {
    let out = bin(&["decompose", "--catalog", "sl2-diag-spin"]);
    assert!(out.status.success());
    let r: DecomposeReport = from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.power, 1);
    assert_eq!(r.multiplicity, 2);
}

#[test]
fn even_so_pair_has_two_entries() {
    let d = commands::decompose(&catalog::get("so7-so6-id").unwrap().build().unwrap()).unwrap();
    assert_eq!(d.entries.len(), 2);
    assert!(d.entries.iter().all(|e| e.dirac_square == "0"));
}

#[test]
fn malformed_rational_names_the_field() {
    let p = scratch("bad.toml");
    std::fs::write(&p, "name = \"x\"\nalgebra = \"A1\"\n[sigma]\nvalues = [\"1/x\"]\n").unwrap();
    let out = bin(&["root-data", "--config", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma.values[0]"));
    let out = bin(&["verify", "--catalog", "sl2-gl1-spin", "--cutoff", "one"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cutoff"));
}

#[test]
fn failing_hypothesis_is_an_input_error() {
    let mut c = catalog::get("sl3-gl2-lambda").unwrap();
    c.lambda = vec!["-1".into(), "1".into(), "0".into()];
    let p = scratch("neg.toml");
    std::fs::write(&p, c.to_toml()).unwrap();
    let out = bin(&["decompose", "--config", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_catalog_entry() {
    assert_eq!(bin(&["verify", "--catalog", "nope"]).status.code(), Some(2));
}

#[test]
fn perturbed_golden_fails() {
    let golden = scratch("golden.toml");
    let out = bin(&["decompose", "--catalog", "sl3-gl2-spin", "--output", golden.to_str().unwrap()]);
    assert!(out.status.success());
    let mut c = catalog::get("sl3-gl2-spin").unwrap();
    c.golden = Some(golden.display().to_string());
    let cfg = scratch("with-golden.toml");
    std::fs::write(&cfg, c.to_toml()).unwrap();
    assert_eq!(bin(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(0));

    let text = std::fs::read_to_string(&golden).unwrap();
    let mut g: DecomposeReport = from_text(&text).unwrap();
    let last = g.entries.last_mut().unwrap();
    last.xi.insert("e1".into(), "99/7".into());
    std::fs::write(&golden, to_text(&g)).unwrap();
    let out = bin(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r: VerifyReport = from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let check = r.checks.iter().find(|c| c.name == "golden").unwrap();
    assert_eq!(check.status, Status::Fail);
    assert!(check.detail.as_deref().unwrap().contains("entry"));
}

#[test]
fn cutoff_zero_passes() {
    let out = bin(&["verify", "--catalog", "sp4-sp2sp2-spin", "--cutoff", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerifyReport = from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.cutoff, "0");
}

#[test]
fn catalog_listing() {
    let out = bin(&["catalog"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert_eq!(names.lines().count(), catalog::ENTRIES.len());
    assert!(names.lines().any(|n| n == "so9-so8-rot4-refl"));
}
