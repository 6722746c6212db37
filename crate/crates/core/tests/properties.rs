use affine_dirac::charworks::{restrict_and_compare, GradedCharacter};
use affine_dirac::dirac::DiracSetup;
use affine_dirac::linalg::{qi, qr, Q};
use affine_dirac::rootcore::FiniteRootSystem;
use affine_dirac::twistaff::{TwistedAutomorphism, Weight};
use proptest::prelude::*;

fn rs(s: &str) -> FiniteRootSystem {
    FiniteRootSystem::build(&FiniteRootSystem::parse_types(s).unwrap()).unwrap()
}

fn fraction() -> impl Strategy<Value = Q> {
    (1i64..=4).prop_flat_map(|n| (0..n).prop_map(move |k| qr(k, n)))
}

fn algebra() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("A1"), Just("A2"), Just("B2"), Just("G2")]
}

fn inner_pair() -> impl Strategy<Value = (&'static str, Vec<Q>, Vec<Q>)> {
    algebra().prop_flat_map(|name| {
        let n = rs(name).rank();
        (Just(name), prop::collection::vec(fraction(), n), prop::collection::vec(fraction(), n))
    })
}

fn character() -> impl Strategy<Value = GradedCharacter> {
    prop::collection::vec((0i64..4, -2i64..3, -3i64..4), 0..8).prop_map(|terms| {
        let mut c = GradedCharacter::zero(vec![qi(1)], qi(0), qi(3));
        for (depth, x, coeff) in terms {
            c.insert(qi(depth), vec![qi(x)], coeff);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_data_are_rho_normalized((name, values, _) in inner_pair()) {
        let r = rs(name);
        let d = TwistedAutomorphism::inner(&r, values).unwrap().datum(&r).unwrap();
        for a in &d.simple {
            prop_assert_eq!(d.coroot_pair(&d.rho_hat, a), qi(1));
        }
        prop_assert!(d.marks.iter().all(|m| *m > 0));
    }

    #[test]
    fn clifford_monomials_match_product((name, sv, mv) in inner_pair()) {
        let r = rs(name);
        let sigma = TwistedAutomorphism::inner(&r, sv).unwrap();
        let mu = TwistedAutomorphism::inner(&r, mv).unwrap();
        let s = DiracSetup::from_diagram("p", &r, &sigma, &mu).unwrap();
        let d = qi(2);
        let ch = s.spec.graded_character(d);
        prop_assert!(restrict_and_compare(&ch.total, &s.spec.product_character(d), d).unwrap().is_empty());
        prop_assert_eq!(ch.even.add(&ch.odd).unwrap(), ch.total);
    }

    #[test]
    fn kernel_entries_satisfy_the_dirac_square((name, sv, mv) in inner_pair()) {
        let r = rs(name);
        let sigma = TwistedAutomorphism::inner(&r, sv).unwrap();
        let mu = TwistedAutomorphism::inner(&r, mv).unwrap();
        let s = DiracSetup::from_diagram("p", &r, &sigma, &mu).unwrap();
        prop_assume!(s.check_hypotheses().is_ok());
        let rep = s.kernel_decomposition(6, Some(qi(2))).unwrap();
        for e in &rep.entries {
            prop_assert_eq!(e.dirac_square, qi(0));
            prop_assert!(e.dominant);
        }
    }

    #[test]
    fn equal_rank_signed_identity(labels in prop::collection::vec(0i64..3, 2)) {
        let r = rs("A1");
        let sigma = TwistedAutomorphism::inner(&r, vec![qi(0)]).unwrap();
        let mu = TwistedAutomorphism::inner(&r, vec![qr(1, 2)]).unwrap();
        let s = DiracSetup::from_diagram("sl2-gl1", &r, &sigma, &mu).unwrap();
        let s = s.with_lambda(&labels.iter().map(|x| qi(*x)).collect::<Vec<_>>()).unwrap();
        prop_assert!(s.signed_character_identity(qi(1), 30).unwrap().is_empty());
    }

    #[test]
    fn character_ring_laws(a in character(), b in character(), c in character()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()), a.mul(&b).add(&a.mul(&c)).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_empty());
    }

    #[test]
    fn weyl_action_preserves_norms(k in 0i64..4, x in -3i64..4, steps in prop::collection::vec(0usize..2, 0..6)) {
        let r = rs("A1");
        let d = TwistedAutomorphism::inner(&r, vec![qi(0)]).unwrap().datum(&r).unwrap();
        let lam = Weight::new(vec![qr(x, 2); r.form.dim()], vec![qi(k)], qi(0));
        let mut w = affine_dirac::coxeter::AffWeylElt::identity(d.dim());
        for i in steps {
            w = w.compose(&affine_dirac::coxeter::weyl::simple_reflection(&d, i));
        }
        prop_assert_eq!(w.act(&d.form, &lam).norm2(&d.form), lam.norm2(&d.form));
    }
}
