use affine_dirac::asdim::{central_charge, signed_asdim_sum};
use affine_dirac::charworks::restrict_and_compare;
use affine_dirac::dirac::levelone::{level_one_decomposition, LevelOneKind};
use affine_dirac::dirac::sopairs::{so_pair_decomposition, TClass};
use affine_dirac::dirac::DiracSetup;
use affine_dirac::linalg::{qi, qr};
use affine_dirac::rootcore::{DiagramAut, FiniteRootSystem};
use affine_dirac::twistaff::TwistedAutomorphism;
use affine_dirac::Error;

fn rs(s: &str) -> FiniteRootSystem {
    FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
}

fn sl2_gl1() -> DiracSetup {
    let r = rs("A1");
    let sigma = TwistedAutomorphism::inner(&r, vec![qi(0)]).unwrap();
    let mu = TwistedAutomorphism::inner(&r, vec![qr(1, 2)]).unwrap();
    DiracSetup::from_diagram("sl2-gl1", &r, &sigma, &mu).unwrap()
}

#[test]
fn signed_identity_negative_control() {
    let s = sl2_gl1().with_lambda(&[qi(1), qi(0)]).unwrap();
    let (lhs, rhs) = s.signed_identity_sides(qi(1), 30).unwrap();
    assert!(restrict_and_compare(&lhs, &rhs, qi(1)).unwrap().is_empty());
    let other = sl2_gl1().with_lambda(&[qi(0), qi(1)]).unwrap();
    let (_, wrong) = other.signed_identity_sides(qi(1), 30).unwrap();
    let bad = restrict_and_compare(&lhs, &wrong, qi(1)).unwrap();
    assert!(!bad.is_empty());
    assert!(!bad[0].display().is_empty());
}

#[test]
fn theorem_check_detects_a_missing_multiplet() {
    let r = rs("A2");
    let mu = TwistedAutomorphism::inner(&r, vec![qr(1, 2), qi(0)]).unwrap();
    let (s, mut rep) = level_one_decomposition("sl3-gl2", &r, &mu, LevelOneKind::Spin, 8).unwrap();
    let d = qi(2);
    let lhs = s.spec.graded_character(d).total;
    assert!(restrict_and_compare(&lhs, &s.multiplet_character(&rep, d, false).unwrap(), d).unwrap().is_empty());
    rep.entries.remove(0);
    assert!(!restrict_and_compare(&lhs, &s.multiplet_character(&rep, d, false).unwrap(), d).unwrap().is_empty());
}

#[test]
fn negative_labels_violate_the_hypothesis() {
    let r = rs("A2");
    let sigma = TwistedAutomorphism::inner(&r, vec![qi(0); 2]).unwrap();
    let mu = TwistedAutomorphism::inner(&r, vec![qr(1, 2), qi(0)]).unwrap();
    let s = DiracSetup::from_diagram("sl3-gl2", &r, &sigma, &mu).unwrap();
    assert!(s.with_lambda(&[qi(-1), qi(1), qi(0)]).is_err());
}

#[test]
fn kernel_power_and_equal_rank() {
    let s = sl2_gl1();
    assert!(s.is_equal_rank());
    assert_eq!(s.power(), 0);
    let r = rs("A2");
    let flip = TwistedAutomorphism::new(&r, DiagramAut::new(&r, vec![1, 0]).unwrap(), vec![qi(0); 2]).unwrap();
    let id = TwistedAutomorphism::inner(&r, vec![qi(0); 2]).unwrap();
    let s = DiracSetup::from_diagram("sl3-so3", &r, &id, &flip).unwrap();
    assert!(!s.is_equal_rank());
    assert_eq!(s.power(), 1);
    assert!(matches!(s.signed_character_identity(qi(1), 10), Err(Error::Unsupported(_))));
    assert!(matches!(signed_asdim_sum(&s, 10), Err(_)));
}

#[test]
fn so_pair_identity_class_has_two_or_one_entries() {
    for n in 5..=8 {
        let (_, rep) = so_pair_decomposition(n, &TClass::identity()).unwrap();
        if n % 2 == 0 {
            assert_eq!((rep.entries.len(), rep.multiplicity()), (2, 1), "{n}");
        } else {
            assert_eq!((rep.entries.len(), rep.multiplicity()), (1, 2), "{n}");
        }
    }
}

#[test]
fn central_charge_of_a_torus() {
    let r = rs("A2");
    let id = TwistedAutomorphism::inner(&r, vec![qi(0); 2]).unwrap();
    let s = DiracSetup::root_subsystem("sl3-h", &r, &id, &[]).unwrap();
    assert!(!s.symmetric);
    let c = central_charge(&s, qi(0)).unwrap();
    assert_eq!(c.value, qi(1));
}
