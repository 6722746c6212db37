use affine_dirac::charworks::{freudenthal_character, heisenberg_character, restrict_and_compare, weyl_kac_character};
use affine_dirac::linalg::{qi, qr, zero_vec, Q};
use affine_dirac::rootcore::{standard_automorphism, DiagramAut, FiniteRootSystem};
use affine_dirac::twistaff::{AffineRootDatum, TwistedAutomorphism, Weight};

fn rs(s: &str) -> FiniteRootSystem {
    FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
}

fn untwisted(name: &str) -> AffineRootDatum {
    let r = rs(name);
    TwistedAutomorphism::inner(&r, vec![qi(0); r.rank()]).unwrap().datum(&r).unwrap()
}

fn twisted(name: &str, order: usize) -> AffineRootDatum {
    let r = rs(name);
    let eta = DiagramAut::new(&r, standard_automorphism(r.components[0], order).unwrap()).unwrap();
    TwistedAutomorphism::new(&r, eta, vec![qi(0); r.rank()]).unwrap().datum(&r).unwrap()
}

fn catalog() -> Vec<(&'static str, AffineRootDatum)> {
    let r = rs("A2");
    let shifted = TwistedAutomorphism::inner(&r, vec![qr(1, 2), qi(0)]).unwrap().datum(&r).unwrap();
    vec![
        ("A1", untwisted("A1")),
        ("A2", untwisted("A2")),
        ("B2", untwisted("B2")),
        ("G2", untwisted("G2")),
        ("A2^(2)", twisted("A2", 2)),
        ("A3^(2)", twisted("A3", 2)),
        ("D4^(3)", twisted("D4", 3)),
        ("A2 shifted", shifted),
    ]
}

#[test]
fn trivial_module_has_character_one() {
    for (name, d) in catalog() {
        let zero = Weight::zero(d.dim(), 1);
        let ch = weyl_kac_character(&d, &zero, qi(3)).unwrap();
        assert_eq!(ch.terms.len(), 1, "{name}");
        assert_eq!(ch.coefficient(&zero), 1, "{name}");
    }
}

#[test]
fn basic_a1_module_low_multiplicities() {
    let d = untwisted("A1");
    let l0 = d.fundamental_weight(0).unwrap();
    let ch = weyl_kac_character(&d, &l0, qi(2)).unwrap();
    let shifted = |k: i64| Weight::new(l0.fin.clone(), l0.levels.clone(), qi(-k));
    assert_eq!(ch.coefficient(&shifted(1)), 1);
    assert_eq!(ch.coefficient(&shifted(2)), 2);
    // partition counts of the depth slices: 1, 3, 4
    let dims: Vec<i64> = ch.slice_dims().values().copied().collect();
    assert_eq!(dims, vec![1, 3, 4]);
}

#[test]
fn weyl_kac_matches_recursion() {
    for (name, d) in catalog() {
        for i in 0..d.simple.len() {
            let Ok(lam) = d.fundamental_weight(i) else { continue };
            for lam in [lam.clone(), lam.scale(qi(2))] {
                let wk = weyl_kac_character(&d, &lam, qi(2)).unwrap();
                let fr = freudenthal_character(&d, &lam, qi(2)).unwrap();
                let rep = restrict_and_compare(&wk, &fr, qi(2)).unwrap();
                assert!(rep.is_empty(), "{name} node {i}: {:?}", rep.first().map(|x| x.display()));
                assert_eq!(wk.coefficient(&lam), 1);
            }
        }
    }
}

#[test]
fn characters_are_symmetric_under_degree_zero_reflections() {
    for (name, d) in catalog() {
        let lam = d.fundamental_weight(d.simple.len() - 1).unwrap();
        let ch = weyl_kac_character(&d, &lam, qi(2)).unwrap();
        for a in d.simple.iter().filter(|a| a.delta == qi(0)) {
            for ((depth, fin), c) in &ch.terms {
                let w = Weight::new(fin.clone(), lam.levels.clone(), lam.delta - depth);
                let r = d.reflect(&w, a);
                assert_eq!(ch.coefficient(&r), *c, "{name}");
            }
        }
    }
}

#[test]
fn heisenberg_counts() {
    let l = Weight::zero(1, 1);
    let ch = heisenberg_character(&l, &[(qi(0), 1)], qi(2));
    let dims: Vec<i64> = ch.slice_dims().values().copied().collect();
    assert_eq!(dims, vec![1, 1, 2]);
    let ch = heisenberg_character(&l, &[(qr(1, 2), 1)], qi(1));
    let dims: Vec<(Q, i64)> = ch.slice_dims().into_iter().collect();
    assert_eq!(dims, vec![(qi(0), 1), (qr(1, 2), 1), (qi(1), 1)]);
    assert_eq!(heisenberg_character(&l, &[(qi(0), 3)], qi(0)).terms.len(), 1);
    assert_eq!(ch.coefficient(&Weight::new(zero_vec(1), vec![qi(1)], qi(-1))), 1);
}
