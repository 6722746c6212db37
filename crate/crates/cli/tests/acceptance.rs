//! Acceptance suite: one line per criterion, run over the built-in catalog.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use affine_dirac::asdim::{central_charge, module_asdim, multiplet_asdim_sum, signed_asdim_sum};
use affine_dirac::charworks::restrict_and_compare;
use affine_dirac::coxeter::{check_against_brute_force, reduced_simple_roots};
use affine_dirac::dirac::sopairs::{closed_form_character_check, so_pair_decomposition, so_pair_matrices, SoCase};
use affine_dirac::dirac::DiracSetup;
use affine_dirac::linalg::Q;
use affine_dirac::rootcore::{Block, Classical, DiagramAut, FiniteRootSystem, MatrixAlgebra, MatrixAut, Series};
use affine_dirac::twistaff::AffineRootDatum;
use affine_dirac_cli::catalog;
use affine_dirac_cli::commands::decomposition;
use affine_dirac_cli::config::{parse_qs, Built};

type Outcome = Result<String, String>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn built() -> Vec<Built> {
    catalog::all().into_iter().map(|c| c.build().expect("catalog entries build")).collect()
}

fn get(name: &str) -> Built {
    catalog::get(name).unwrap().build().unwrap()
}

fn setup(name: &str) -> DiracSetup {
    get(name).setup().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn symmetric_catalog() -> Vec<DiracSetup> {
    built()
        .iter()
        .filter_map(|b| b.setup().ok())
        .filter(|s| s.symmetric && s.finite_exact && s.level() == q(0) && s.lambda.fin.iter().all(|x| *x == q(0)))
        .collect()
}

fn rho_normalization() -> Outcome {
    let t = Instant::now();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut kinds: BTreeSet<&str> = BTreeSet::new();
    let mut check = |name: &str, d: &AffineRootDatum, kind: &'static str| -> Result<(), String> {
        for (i, r) in d.simple.iter().enumerate() {
            let v = d.coroot_pair(&d.rho_hat, r);
            ensure(v == q(1), || format!("{name}: simple root {i} gives {v}"))?;
        }
        seen.insert(format!("{:?}", d.gcm()) + kind);
        kinds.insert(kind);
        Ok(())
    };
    for b in built() {
        let name = b.name().to_string();
        if let Some(rs) = &b.rs {
            let sigma = b.sigma().map_err(err(&name))?;
            let d = sigma.datum(rs).map_err(err(&name))?;
            let kind = match (sigma.eta.is_identity(), sigma.values.iter().all(|v| *v == q(0))) {
                (true, true) => "untwisted",
                (true, false) => "inner-shifted",
                _ if d.simple.len() == 3 && rs.components[0].series == Series::D => "D4(3)",
                _ if rs.components.len() == 1 && rs.components[0].series == Series::A && rs.rank() == 2 => "A2(2)",
                _ => "outer",
            };
            check(&name, &d, kind)?;
        } else {
            check(&name, &b.setup().map_err(err(&name))?.g, "matrix")?;
        }
    }
    for k in ["untwisted", "inner-shifted", "A2(2)", "D4(3)"] {
        ensure(kinds.contains(k), || format!("no {k} instance"))?;
    }
    ensure(seen.len() >= 8, || format!("only {} distinct data", seen.len()))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("{} distinct twisted affine data", seen.len()))
}

fn blocks(rs: &FiniteRootSystem) -> Option<Vec<Block>> {
    rs.components
        .iter()
        .map(|c| {
            let (kind, size) = match c.series {
                Series::A => (Classical::Sl, c.rank + 1),
                Series::B => (Classical::So, 2 * c.rank + 1),
                Series::C => (Classical::Sp, 2 * c.rank),
                Series::D => (Classical::So, 2 * c.rank),
                _ => return None,
            };
            Some(Block { kind, size })
        })
        .collect()
}

fn oracle(name: &str, alg: &MatrixAlgebra, aut: &MatrixAut) -> Result<(), String> {
    let direct = alg.eigengrade(aut).map_err(err(name))?;
    let (rs, eta, vals) = alg.diagram_form(aut).map_err(err(name))?;
    let comb = affine_dirac::rootcore::combinatorial_table(&rs, &eta, &vals).map_err(err(name))?;
    let fixed = alg.fixed_subspace(&[aut]);
    ensure(direct == comb.map_weights(|w| fixed.project(w)), || format!("{name}: tables differ"))
}

fn grading_oracle() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    let mut skipped = Vec::new();
    for b in built() {
        let name = b.name().to_string();
        if let Some((dim, tc)) = &b.t_class {
            let (alg, sigma, _) = so_pair_matrices(*dim, tc).map_err(err(&name))?;
            oracle(&name, &alg, &sigma)?;
            n += 1;
            continue;
        }
        let Some(rs) = &b.rs else { continue };
        let Some(bl) = blocks(rs) else { continue };
        let alg = MatrixAlgebra::new(bl).map_err(err(&name))?;
        let ars = alg.root_system().map_err(err(&name))?;
        ensure(ars.cartan_matrix() == rs.cartan_matrix(), || format!("{name}: numbering differs"))?;
        let c = &b.config;
        for (field, aut) in [("sigma", &c.sigma), ("mu", &c.mu)] {
            let Some(aut) = aut else { continue };
            let vals = parse_qs(field, &aut.values).map_err(err(&name))?;
            let perm = aut.perm.clone().unwrap_or_else(|| (0..rs.rank()).collect());
            let eta = DiagramAut::new(&ars, perm).map_err(err(&name))?;
            if eta.order() == 3 {
                skipped.push(name.clone());
                continue;
            }
            let m = alg.from_diagram(&eta, &vals).map_err(err(&name))?;
            oracle(&name, &alg, &m)?;
            let twist = affine_dirac::twistaff::TwistedAutomorphism::new(&ars, eta, vals).map_err(err(&name))?;
            let fixed = alg.fixed_subspace(&[&m]);
            let transported = twist.table(&ars).map_err(err(&name))?.map_weights(|w| fixed.project(w));
            ensure(alg.eigengrade(&m).map_err(err(&name))? == transported, || format!("{name}: transported table differs"))?;
            n += 1;
        }
    }
    within(t, Duration::from_secs(10))?;
    skipped.dedup();
    Ok(format!("{n} automorphisms; triality has no matrix form: {}", skipped.join(", ")))
}

fn clifford_characters() -> Outcome {
    let t = Instant::now();
    let d = q(3);
    let mut n = 0;
    for b in built() {
        let s = b.setup().map_err(err(b.name()))?;
        let lhs = s.spec.graded_character(d).total;
        let bad = restrict_and_compare(&lhs, &s.spec.product_character(d), d).map_err(err(b.name()))?;
        ensure(bad.is_empty(), || format!("{}: {}", b.name(), bad[0].display()))?;
        n += 1;
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{n} specs at d = 3"))
}

fn so_pair_identities() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for b in built() {
        let Some((dim, tc)) = &b.t_class else { continue };
        let bad = closed_form_character_check(*dim, tc, q(2)).map_err(err(b.name()))?;
        ensure(bad.is_empty(), || format!("{}: {}", b.name(), bad[0].display()))?;
        let (_, rep) = so_pair_decomposition(*dim, tc).map_err(err(b.name()))?;
        let minus = tc.angles.len() == dim / 2 && tc.angles.iter().all(|a| *a == Q::new(1, 2)) && tc.reflect == (dim % 2 == 1);
        if tc.angles.is_empty() && !tc.reflect {
            let (entries, mult) = if dim % 2 == 0 { (2, 1) } else { (1, 2) };
            ensure(rep.entries.len() == entries && rep.multiplicity() == mult, || format!("{}: T = I shape", b.name()))?;
        } else if minus {
            let depths: Vec<Q> = rep.entries.iter().map(|e| e.depth).collect();
            ensure(depths == [q(0), Q::new(1, 2)] && rep.multiplicity() == 1, || format!("{}: T = -I shape {depths:?}", b.name()))?;
        }
        n += 1;
    }
    ensure(n == 16, || format!("{n} so-pairs"))?;
    within(t, Duration::from_secs(120))?;
    Ok(format!("{n} so-pairs at d = 2"))
}

fn symmetric_kernels() -> Outcome {
    let t = Instant::now();
    for name in ["sl2-diag-spin", "sl3-gl2-spin", "sl3-so3-basic-vector", "sl3-so3-spin"] {
        let s = setup(name);
        let bad = s.theorem_character_check(q(2), 40).map_err(err(name))?;
        ensure(bad.is_empty(), || format!("{name}: {}", bad[0].display()))?;
    }
    let b = get("sl2-diag-spin");
    let (s, rep) = decomposition(&b).map_err(err("sl2-diag-spin"))?;
    ensure(rep.entries.len() == 1 && rep.multiplicity() == 2 && rep.entries[0].xi == s.a.rho_hat, || "diagonal pair shape".into())?;
    ensure(s.to_a(&s.g.rho_hat) == s.a.rho_hat.scale(q(2)), || "rho_hat is not twice rho_hat_k".into())?;
    within(t, Duration::from_secs(120))?;
    Ok("diagonal, inner and A2 outer pairs at d = 2".into())
}

fn dirac_square() -> Outcome {
    let mut n = 0;
    for b in built() {
        let (_, rep) = decomposition(&b).map_err(err(b.name()))?;
        for e in &rep.entries {
            ensure(e.dirac_square == q(0) && e.dominant, || format!("{}: {}", b.name(), e.xi.display()))?;
            n += 1;
        }
    }
    Ok(format!("{n} entries"))
}

fn coxeter_suite() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    for name in ["sl4-sp4-spin", "sl3-gl2-lambda"] {
        let s = setup(name);
        s.sys.check_root_system(10).map_err(err(name))?;
        s.sys.check_restriction().map_err(err(name))?;
        for w in s.sys.enumerate(6) {
            let lift = s.sys.lift(&w);
            ensure(s.sys.commutes_with_mu(&lift) && s.sys.agrees_on_fixed(&lift, &w), || format!("{name}: lift of {:?}", w.word))?;
        }
        let red = reduced_simple_roots(&s.sys, &s.a.simple).map_err(err(name))?;
        total += check_against_brute_force(&s.sys, &red, 6, 6).map_err(err(name))?;
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("two folded groups, {total} minimal representatives of length <= 6"))
}

fn signed_identity() -> Outcome {
    for name in ["sl2-gl1-lambda", "sl3-gl2-lambda"] {
        let s = setup(name);
        ensure(s.is_equal_rank(), || format!("{name}: not equal rank"))?;
        let bad = s.signed_character_identity(q(1), 40).map_err(err(name))?;
        ensure(bad.is_empty(), || format!("{name}: {}", bad[0].display()))?;
    }
    Ok("two equal-rank setups at d = 1".into())
}

fn signed_sums() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ["sl2-gl1-lambda", "sl3-gl2-lambda"] {
        let s = setup(name);
        ensure(s.center_dim == 1, || format!("{name}: center of dimension {}", s.center_dim))?;
        let r = signed_asdim_sum(&s, 14).map_err(err(name))?;
        ensure(r.total.abs() < 1e-9, || format!("{name}: sum {}", r.total))?;
        worst = worst.max(r.total.abs());
    }
    Ok(format!("max |sum| = {worst:.1e}"))
}

fn asdim_values() -> Outcome {
    let mut n = 0;
    for b in built() {
        let Some((dim, tc)) = &b.t_class else { continue };
        let (s, rep) = so_pair_decomposition(*dim, tc).map_err(err(b.name()))?;
        let a = module_asdim(&s, &rep).map_err(err(b.name()))?;
        let want = SoCase::of(*dim, tc).expected_asdim();
        ensure((a - want).abs() < 1e-12, || format!("{}: {a} against {want}", b.name()))?;
        n += 1;
    }
    let sym = symmetric_catalog();
    let mut worst: f64 = 0.0;
    for s in &sym {
        let m = multiplet_asdim_sum(s, 14).map_err(err(&s.name))?;
        ensure((m.lhs - m.rhs).abs() < 1e-9, || format!("{}: {} against {}", s.name, m.lhs, m.rhs))?;
        worst = worst.max((m.lhs - m.rhs).abs());
    }
    Ok(format!("{n} table values, {} sum rules, max gap {worst:.1e}", sym.len()))
}

fn central_charges() -> Outcome {
    let sym = symmetric_catalog();
    for s in &sym {
        let c0 = central_charge(s, q(0)).map_err(err(&s.name))?;
        ensure(c0.value == q(0), || format!("{}: C = {} at k = 0", s.name, c0.value))?;
        let c1 = central_charge(s, q(1)).map_err(err(&s.name))?;
        ensure(c1.value > q(0), || format!("{}: C = {} at k = 1", s.name, c1.value))?;
    }
    let s = setup("sl3-h");
    ensure(!s.symmetric && s.is_equal_rank(), || "sl3-h shape".into())?;
    let c = central_charge(&s, q(0)).map_err(err("sl3-h"))?;
    ensure(c.value != q(0), || "sl3-h: C = 0".into())?;
    Ok(format!("{} symmetric pairs; non-symmetric C = {}", sym.len(), c.value))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("simple-root normalization", rho_normalization),
        ("eigengrade against transported tables", grading_oracle),
        ("Clifford character double computation", clifford_characters),
        ("so-pair character identities", so_pair_identities),
        ("kernel characters of symmetric pairs", symmetric_kernels),
        ("Dirac-square invariant", dirac_square),
        ("folded Coxeter group suite", coxeter_suite),
        ("signed character identity", signed_identity),
        ("signed asdim sums", signed_sums),
        ("asdim values and multiplet sum rule", asdim_values),
        ("central-charge criterion", central_charges),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!("{tag} {:>2} {name}: {detail} ({:.2?})", i + 1, t.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
