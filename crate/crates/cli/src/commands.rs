//! Subcommand implementations. Each returns a report document; nothing here prints.

use std::collections::BTreeMap;

use affine_dirac::asdim::{central_charge, module_asdim, multiplet_asdim_sum, signed_asdim_sum, AsdimEngine};
use affine_dirac::charworks::restrict_and_compare;
use affine_dirac::dirac::levelone::level_one_decomposition;
use affine_dirac::dirac::sopairs::{closed_form_character_check, so_pair_decomposition};
use affine_dirac::dirac::{DiracSetup, MultipletReport};
use affine_dirac::linalg::{is_zero, Q};
use affine_dirac::twistaff::{AffineRootDatum, Weight};
use affine_dirac::Error;

use crate::config::{fmt_q, Built, Rule};
use crate::error::CliError;
use crate::report::*;

const TOL: f64 = 1e-9;

fn zero() -> Q {
    Q::from_integer(0)
}

fn lambda_is_zero(s: &DiracSetup) -> bool {
    s.level() == zero() && is_zero(&s.lambda.fin)
}

pub fn root_data(b: &Built) -> Result<RootDataReport, CliError> {
    let (d, algebra, order): (AffineRootDatum, String, usize) = match (&b.rs, &b.t_class) {
        (Some(rs), _) => {
            let sigma = b.sigma()?;
            (sigma.datum(rs)?, b.config.algebra.clone().unwrap_or_default(), sigma.order(rs)?)
        }
        (None, Some((n, _))) => {
            let s = b.setup()?;
            (s.g, format!("so({})", n + 1), 0)
        }
        _ => return Err(CliError::Input("no algebra".into())),
    };
    Ok(root_data_of(b.name(), &d, algebra, order))
}

pub fn root_data_of(name: &str, d: &AffineRootDatum, algebra: String, order: usize) -> RootDataReport {
    let simple_roots = d
        .simple
        .iter()
        .enumerate()
        .map(|(i, r)| SimpleRootDoc {
            index: i,
            mark: d.marks[i],
            rho_pairing: fmt_q(&d.coroot_pair(&d.rho_hat, r)),
            root: root_doc(r),
        })
        .collect();
    let multiplicities = d
        .table
        .entries
        .iter()
        .map(|((c, w), m)| MultiplicityDoc {
            class: fmt_q(c),
            dim: *m,
            weight: w.iter().enumerate().map(|(i, x)| (format!("e{}", i + 1), fmt_q(x))).collect(),
        })
        .collect();
    RootDataReport {
        setup: name.to_string(),
        algebra,
        sigma_order: order,
        dual_coxeter: d.casimir.iter().map(fmt_q).collect(),
        gcm: d.gcm(),
        rho_hat: weight_doc(&d.rho_hat),
        simple_roots,
        multiplicities,
    }
}

/// The decomposition by the configured rule.
pub fn decomposition(b: &Built) -> Result<(DiracSetup, MultipletReport), CliError> {
    if b.config.rule != Rule::Kernel && !b.config.lambda.is_empty() {
        let s = b.setup()?;
        if !lambda_is_zero(&s) {
            return Err(CliError::Input("lambda: the closed-form rules need Lambda = 0".into()));
        }
    }
    match b.config.rule {
        Rule::Kernel => {
            let s = b.setup()?;
            let rep = s.kernel_decomposition(b.length_bound, Some(b.cutoff))?;
            Ok((s, rep))
        }
        Rule::LevelOne => {
            let rs = b.rs.as_ref().expect("diagram data");
            let mu = b.mu.as_ref().expect("checked in build");
            let kind = b.level_one_kind().expect("checked in build");
            Ok(level_one_decomposition(b.name(), rs, mu, kind, b.length_bound)?)
        }
        Rule::SoPair => {
            let (n, t) = b.t_class.as_ref().expect("so-pair data");
            let (s, rep) = so_pair_decomposition(*n, t)?;
            Ok((b.setup().unwrap_or(s), rep))
        }
    }
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Kernel => "kernel",
        Rule::LevelOne => "level-one",
        Rule::SoPair => "so-pair",
    }
}

pub fn decompose_report(b: &Built, s: &DiracSetup, rep: &MultipletReport) -> DecomposeReport {
    let entries = rep
        .entries
        .iter()
        .map(|e| EntryDoc {
            length: e.length,
            word: e.word.clone(),
            depth: fmt_q(&e.depth),
            dirac_square: fmt_q(&e.dirac_square),
            dominant: e.dominant,
            label: e.label.clone(),
            labels: s.a.simple.iter().map(|r| fmt_q(&s.a.coroot_pair(&e.xi, r))).collect(),
            xi: weight_doc(&e.xi),
        })
        .collect();
    DecomposeReport {
        setup: b.name().to_string(),
        rule: rule_name(b.config.rule).into(),
        power: rep.power,
        multiplicity: rep.multiplicity(),
        length_bound: rep.length_bound,
        complete: rep.complete,
        cutoff: rep.cutoff.as_ref().map(fmt_q),
        entries,
    }
}

pub fn decompose(b: &Built) -> Result<DecomposeReport, CliError> {
    let (s, rep) = decomposition(b)?;
    Ok(decompose_report(b, &s, &rep))
}

pub fn clifford(b: &Built) -> Result<CliffordReport, CliError> {
    let s = b.setup()?;
    let d = b.cutoff;
    let ch = s.spec.graded_character(d);
    let product = s.spec.product_character(d);
    let dims = |c: &affine_dirac::charworks::GradedCharacter| c.slice_dims();
    let (total, even, odd) = (dims(&ch.total), dims(&ch.even), dims(&ch.odd));
    let slices = total
        .iter()
        .map(|(depth, t)| SliceDoc {
            depth: fmt_q(depth),
            total: *t,
            even: even.get(depth).copied().unwrap_or(0),
            odd: odd.get(depth).copied().unwrap_or(0),
        })
        .collect();
    Ok(CliffordReport {
        setup: b.name().to_string(),
        cutoff: fmt_q(&d),
        dim_p: s.spec.dim(),
        zero_modes: s.spec.zero_modes(),
        power: s.power(),
        product_formula_agrees: restrict_and_compare(&ch.total, &product, d)?.is_empty(),
        top: weight_doc(&s.spec.top),
        slices,
    })
}

struct Checks(Vec<CheckDoc>);

impl Checks {
    fn push(&mut self, name: &str, r: Result<Option<String>, CliError>) {
        let (status, detail) = match r {
            Ok(None) => (Status::Pass, None),
            Ok(Some(d)) => (Status::Fail, Some(d)),
            Err(CliError::Library(Error::Unsupported(m))) => (Status::Skipped, Some(m)),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        self.0.push(CheckDoc { name: name.into(), status, detail });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.0.push(CheckDoc { name: name.into(), status: Status::Skipped, detail: Some(why.into()) });
    }
}

fn first_discrepancy(v: Vec<affine_dirac::charworks::Discrepancy>) -> Option<String> {
    let n = v.len();
    v.first().map(|d| format!("{n} discrepancies; first {}", d.display()))
}

fn multiset_below(rep: &MultipletReport, d: Q) -> BTreeMap<Weight, i64> {
    let mut m = BTreeMap::new();
    for e in rep.entries.iter().filter(|e| e.depth <= d) {
        *m.entry(e.xi.clone()).or_insert(0) += rep.multiplicity();
    }
    m
}

/// Compares a decomposition report with a golden one, entry by entry.
pub fn compare_golden(got: &DecomposeReport, want: &DecomposeReport) -> Option<String> {
    if got.multiplicity != want.multiplicity {
        return Some(format!("multiplicity {} differs from golden {}", got.multiplicity, want.multiplicity));
    }
    let key = |e: &EntryDoc| (e.xi.clone(), e.dirac_square.clone());
    let mut g: Vec<_> = got.entries.iter().map(key).collect();
    let mut w: Vec<_> = want.entries.iter().map(key).collect();
    g.sort();
    w.sort();
    for (i, (a, b)) in g.iter().zip(&w).enumerate() {
        if a != b {
            return Some(format!("entry {i}: xi {:?} differs from golden {:?}", a.0, b.0));
        }
    }
    (g.len() != w.len()).then(|| format!("{} entries against {} in golden", g.len(), w.len()))
}

pub fn verify(b: &Built) -> Result<VerifyReport, CliError> {
    let d = b.cutoff;
    let lb = b.length_bound;
    let mut c = Checks(Vec::new());
    let s = b.setup()?;
    c.push("hypotheses", s.check_hypotheses().map(|_| None).map_err(Into::into));
    c.push(
        "rho-normalization",
        Ok(s.g
            .simple
            .iter()
            .position(|r| s.g.coroot_pair(&s.g.rho_hat, r) != Q::from_integer(1))
            .map(|i| format!("simple root {i} has 2(rho, a)/(a, a) != 1"))),
    );
    c.push("clifford-product-formula", (|| {
        let ch = s.spec.graded_character(d).total;
        Ok(first_discrepancy(restrict_and_compare(&ch, &s.spec.product_character(d), d)?))
    })());
    let decomposition = decomposition(b);
    match &decomposition {
        Ok((s2, rep)) => {
            let bad = rep.entries.iter().position(|e| e.dirac_square != zero() || !e.dominant);
            c.push("dirac-square", Ok(bad.map(|i| format!("entry {i} fails: {}", rep.entries[i].xi.display()))));
            if b.config.rule != Rule::Kernel {
                c.push("closed-form-vs-kernel", (|| {
                    let k = s2.kernel_decomposition(lb, Some(d))?;
                    Ok((multiset_below(rep, d) != multiset_below(&k, d)).then(|| "closed form and kernel disagree".to_string()))
                })());
            }
            match b.config.rule {
                Rule::SoPair => {
                    let (n, t) = b.t_class.as_ref().expect("so-pair data");
                    c.push("closed-form-character", closed_form_character_check(*n, t, d).map(first_discrepancy).map_err(Into::into));
                }
                Rule::LevelOne => c.push("closed-form-character", (|| {
                    let lhs = s2.spec.graded_character(d).total;
                    let rhs = s2.multiplet_character(rep, d, false)?;
                    Ok(first_discrepancy(restrict_and_compare(&lhs, &rhs, d)?))
                })()),
                Rule::Kernel => {}
            }
            match &b.config.golden {
                Some(path) => c.push("golden", (|| {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("golden: {path}: {e}")))?;
                    let want: DecomposeReport = from_text(&text)?;
                    Ok(compare_golden(&decompose_report(b, s2, rep), &want))
                })()),
                None => c.skip("golden", "no golden report configured"),
            }
        }
        Err(e) => c.push("decomposition", Ok(Some(e.to_string()))),
    }
    c.push("inversion-identity", (|| {
        let (reps, _) = s.coset_reps(lb, Some(d));
        for w in &reps {
            if let Err(e) = s.check_inversion_identity(w) {
                return Ok(Some(format!("word {:?}: {e}", w.word)));
            }
        }
        Ok(None)
    })());
    c.push("theorem-character", s.theorem_character_check(d, lb).map(first_discrepancy).map_err(Into::into));
    c.push("signed-identity", s.signed_character_identity(d, lb).map(first_discrepancy).map_err(Into::into));
    c.push("signed-asdim-sum", match signed_asdim_sum(&s, 14) {
        Ok(r) => Ok((r.total.abs() >= TOL).then(|| format!("signed sum {}", r.total))),
        Err(Error::Hypothesis(m)) => Err(Error::Unsupported(m).into()),
        Err(e) => Err(e.into()),
    });
    if s.symmetric && lambda_is_zero(&s) {
        c.push("multiplet-asdim-sum", (|| {
            let m = multiplet_asdim_sum(&s, 14)?;
            Ok(((m.lhs - m.rhs).abs() >= TOL).then(|| format!("lhs {} rhs {}", m.lhs, m.rhs)))
        })());
        c.push("central-charge", (|| {
            let cc = central_charge(&s, zero())?;
            Ok((!cc.vanishes).then(|| format!("C = {} at level 0", fmt_q(&cc.value))))
        })());
    } else {
        c.skip("multiplet-asdim-sum", "needs a symmetric pair with Lambda = 0");
        c.skip("central-charge", "needs a symmetric pair with Lambda = 0");
    }
    let passed = c.0.iter().all(|x| x.status != Status::Fail);
    Ok(VerifyReport { setup: b.name().to_string(), cutoff: fmt_q(&d), passed, checks: c.0 })
}

pub fn asdim(b: &Built) -> Result<AsdimReport, CliError> {
    let (s, rep) = decomposition(b)?;
    let eng = AsdimEngine::new(&s.a)?;
    let entries = rep
        .entries
        .iter()
        .map(|e| {
            Ok(AsdimEntryDoc {
                per_component: eng.per_component(&s.a, &e.xi)?,
                asdim: eng.asymptotic_dimension(&s.a, &e.xi)?,
                xi: weight_doc(&e.xi),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let optional = |r: Result<f64, Error>| match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::Unsupported(_) | Error::Hypothesis(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let module_asdim = if rep.complete { optional(module_asdim(&s, &rep))? } else { None };
    let signed_sum = optional(signed_asdim_sum(&s, 14).map(|r| r.total))?;
    let central_charge = match central_charge(&s, s.level()) {
        Ok(cc) => Some(CentralChargeDoc {
            level: fmt_q(&cc.level),
            c_g: fmt_q(&cc.c_g),
            c_a: fmt_q(&cc.c_a),
            half_dim_p: fmt_q(&cc.half_dim_p),
            value: fmt_q(&cc.value),
            balanced: cc.balanced,
            vanishes: cc.vanishes,
        }),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let multiplet_sum = match multiplet_asdim_sum(&s, 14) {
        Ok(m) => Some(SumDoc { lhs: m.lhs, rhs: m.rhs, index: fmt_q(&m.index), chi: m.chi, center_dim: m.center_dim, classes: m.classes }),
        Err(Error::Unsupported(_) | Error::Hypothesis(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(AsdimReport {
        setup: b.name().to_string(),
        level: fmt_q(&s.level()),
        module_asdim,
        signed_sum,
        central_charge,
        multiplet_sum,
        entries,
    })
}
