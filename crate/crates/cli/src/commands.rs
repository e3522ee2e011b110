//! One handler per subcommand. Each returns the JSON report and exit code,
//! or a core error that the caller turns into an error report.

use gaeta_core::arith::{int, parse_rat, Int, Rat};
use gaeta_core::cohomology::{cohom_x, d_family, CohomResult};
use gaeta_core::exceptional::{dual_sequence, lambda_matrix, sequence, verify_dual, verify_sequence, DualLabel, PairLevel};
use gaeta_core::gaeta::{
    cokernel_condition_report, exponents, exponents_closed_form, raw_exponents, twist_search, GaetaExponents,
    NotAdmitting, TwistOutcome,
};
use gaeta_core::json::{
    class_from, class_to, divisor_from, divisor_to, exponents_to, int_to, polarization_from, rat_to, surface_from,
    surface_to,
};
use gaeta_core::sd::{make_pair, numbers_match_l1, positivity_report, theta_on_hilb, v_exponents, xi_dimension};
use gaeta_core::stability::hypotheses_report;
use gaeta_core::surface::{NumClass, SurfaceConfig};
use gaeta_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::io::{load, verdicts, Outcome, FAIL, OK, UNSUPPORTED};

fn surface_arg(arg: &str) -> Result<SurfaceConfig> {
    surface_from(&load(arg, "surface")?, "surface")
}

fn class_arg(s: &SurfaceConfig, arg: &str) -> Result<NumClass> {
    class_from(s, &load(arg, "class")?, "class")
}

fn cohom_json(c: &CohomResult) -> Value {
    match c.triple() {
        Some(h) => json!({"h": h.iter().map(int_to).collect::<Vec<_>>()}),
        None => json!({"unknown": true, "chi": int_to(&c.chi())}),
    }
}

fn matrix_json(m: &[Vec<Int>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(int_to).collect())).collect())
}

fn not_admitting_json(n: &NotAdmitting) -> Value {
    json!({"admits": false, "first_failing": n.first_failing, "exponents": exponents_to(&n.exponents)})
}

pub fn surface(surface: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let k = s.canonical();
    let seq = sequence(&s)?;
    let duals: Vec<Value> = dual_sequence(&s)?
        .iter()
        .map(|g| {
            let label = match &g.label {
                DualLabel::LineBundle(d) => json!({"line_bundle": divisor_to(d)}),
                DualLabel::ExceptionalStructureSheaf(k) => json!({"exceptional_structure_sheaf": k + 1}),
                DualLabel::TangentTwist => json!("tangent_twist"),
            };
            json!({"dual_of": g.index + 1, "label": label, "shift": g.shift, "kclass": class_to(&g.kclass)})
        })
        .collect();
    let family: Vec<Value> = if s.is_p2() {
        Vec::new()
    } else {
        d_family(&s)
            .iter()
            .map(|(name, d)| json!({"name": name, "divisor": divisor_to(d)}))
            .collect()
    };
    let report = json!({
        "command": "surface",
        "surface": surface_to(&s),
        "t": s.t(),
        "s0": s.s0(),
        "admissible": s.admissible(),
        "canonical": divisor_to(&k),
        "k_squared": rat_to(&s.intersect(&k, &k)?),
        "sequence": seq.members.iter().map(divisor_to).collect::<Vec<_>>(),
        "left_block": seq.d,
        "duals": duals,
        "basepoint_free_family": family,
    });
    Ok(Outcome::new(report, true))
}

pub fn cohom(surface: &str, divisor: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let d = divisor_from(&s, &load(divisor, "divisor")?, "divisor")?;
    let c = cohom_x(&s, &d)?;
    let mut report = cohom_json(&c);
    report["command"] = json!("cohom");
    Ok(Outcome::with_code(report, if c.is_exact() { OK } else { UNSUPPORTED }))
}

pub fn exc_verify(surface: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let seq = verify_sequence(&s)?;
    let dual = verify_dual(&s)?;
    let shape = raw_exponents(&s, &NumClass::structure_sheaf(&s))?;
    let lambda = lambda_matrix(&s, &shape)?;
    let pairs: Vec<Value> = seq
        .pairs
        .iter()
        .map(|p| json!({"i": p.i + 1, "j": p.j + 1, "h": p.h.iter().map(int_to).collect::<Vec<_>>(), "ok": p.ok}))
        .collect();
    let dual_pairs: Vec<Value> = dual
        .pairs
        .iter()
        .map(|p| {
            let level = match &p.level {
                PairLevel::Full(h) => json!({"full": h.iter().map(int_to).collect::<Vec<_>>()}),
                PairLevel::EulerOnly => json!("euler-only"),
            };
            json!({
                "dual": p.dual + 1,
                "member": p.member + 1,
                "signed_chi": int_to(&p.signed_chi),
                "level": level,
                "ok": p.ok,
            })
        })
        .collect();
    let pass = seq.pass && dual.pass;
    let report = json!({
        "command": "exc verify",
        "surface": surface_to(&s),
        "sequence": {"pairs": pairs, "pass": seq.pass},
        "dual": {
            "matrix": matrix_json(&dual.matrix),
            "euler_ok": dual.euler_ok,
            "kclass_consistent": dual.kclass_consistent,
            "full_checks": dual.full_checks,
            "pairs": dual_pairs,
            "pass": dual.pass,
        },
        "lambda_matrix": matrix_json(&lambda),
        "verdicts": verdicts(&[("strong-exceptional", seq.pass), ("dual-collection", dual.pass)]),
        "pass": pass,
    });
    Ok(Outcome::new(report, pass))
}

pub fn gaeta_exponents(surface: &str, class: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let f = class_arg(&s, class)?;
    let raw = raw_exponents(&s, &f)?;
    let mut report = Map::new();
    report.insert("command".into(), json!("gaeta exponents"));
    report.insert("class".into(), class_to(&f));
    report.insert("exponents".into(), exponents_to(&raw));
    report.insert("rank".into(), int_to(&raw.rank()));
    match exponents(&s, &f)? {
        Ok(exps) => {
            report.insert("admits".into(), json!(true));
            if !s.is_p2() {
                let closed = exponents_closed_form(&s, &f)?;
                report.insert("closed_form_agrees".into(), json!(closed == exps));
            }
            let c = cokernel_condition_report(&s, &exps)?;
            report.insert(
                "cokernel".into(),
                json!({
                    "torsion_free": c.torsion_free_ok,
                    "locally_free": c.locally_free_ok,
                    "globally_generated": c.globally_generated_ok,
                    "no_sections_on_curves": c.no_sections_on_curves_ok,
                    "prioritary_locus_empty": c.prioritary_locus_empty,
                    "prioritary_codim_bound": c.prioritary_codim_bound.as_ref().map(int_to),
                    "wbn_ell": c.wbn_ell.as_ref().map(int_to),
                    "wbn_shape": c.wbn_shape,
                }),
            );
        }
        Err(n) => {
            report.insert("admits".into(), json!(false));
            report.insert("first_failing".into(), json!(n.first_failing));
        }
    }
    Ok(Outcome::new(Value::Object(report), true))
}

pub fn gaeta_exists(surface: &str, class: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let f = class_arg(&s, class)?;
    Ok(match exponents(&s, &f)? {
        Ok(exps) => Outcome::new(
            json!({"command": "gaeta exists", "admits": true, "exponents": exponents_to(&exps)}),
            true,
        ),
        Err(n) => {
            let mut report = not_admitting_json(&n);
            report["command"] = json!("gaeta exists");
            Outcome::new(report, false)
        }
    })
}

pub fn gaeta_twist(surface: &str, class: &str, m: Option<&str>) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let f = class_arg(&s, class)?;
    let m: Rat = match m {
        None => Rat::from_integer(int(0)),
        Some(text) => parse_rat(text).ok_or_else(|| Error::Parse {
            path: "M".into(),
            msg: format!("not a rational: {text:?}"),
        })?,
    };
    Ok(match twist_search(&s, &f, &m)? {
        TwistOutcome::Found { l, exps } => {
            let twisted = s.twist(&f, &l)?;
            let report = json!({
                "command": "gaeta twist",
                "found": true,
                "M": rat_to(&m),
                "L": divisor_to(&l),
                "twisted": class_to(&twisted),
                "exponents": exponents_to(&exps),
            });
            Outcome::new(report, true)
        }
        TwistOutcome::Infeasible => Outcome::new(
            json!({"command": "gaeta twist", "found": false, "M": rat_to(&m)}),
            false,
        ),
    })
}

pub fn stab_check(surface: &str, h: &str, class: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let h = polarization_from(&load(h, "H")?, "H")?;
    let f = class_arg(&s, class)?;
    let rep = hypotheses_report(&s, &h, &f)?;
    let p = &rep.polarization;
    let mut tags = vec![
        ("positive-combination", p.positive_combination),
        ("ratio-bound", p.ratio_bound),
        ("root-bound", p.root_bound),
        ("k-plus-a-negative", p.k_plus_a_negative),
        ("k-plus-2a-negative", p.k_plus_2a_negative),
        ("admits-gaeta", rep.exponents.is_some()),
    ];
    if let Some(e) = &rep.exponents {
        tags.extend([
            ("rank-at-least-two", e.rank_at_least_two),
            ("gammas-exceed-children", e.gammas_exceed_children),
            ("alpha4-condition", e.alpha4_condition),
            ("all-positive", e.all_positive),
        ]);
    }
    tags.push(("discriminant", rep.discriminant_ok));
    let report = json!({
        "command": "stab check",
        "class": class_to(&f),
        "lambda": rat_to(&p.lambda),
        "discriminant": rat_to(&rep.discriminant),
        "threshold": rat_to(&rep.threshold),
        "verdicts": verdicts(&tags),
        "pass": rep.pass,
    });
    Ok(Outcome::new(report, rep.pass))
}

pub fn sd_report(surface: &str, r: i64, ell: i64, l: &str, h: &str) -> Result<Outcome> {
    let s = surface_arg(surface)?;
    let l = divisor_from(&s, &load(l, "L")?, "L")?;
    let h = polarization_from(&load(h, "H")?, "H")?;
    let (r, ell) = (int(r), int(ell));
    let pair = make_pair(&s, &r, &ell, &l)?;
    let mut report = Map::new();
    let mut failed = false;
    let mut unknown = false;
    report.insert("command".into(), json!("sd report"));
    report.insert(
        "pair".into(),
        json!({
            "r": int_to(&r),
            "ell": int_to(&ell),
            "L": divisor_to(&l),
            "sigma": class_to(&pair.sigma),
            "rho": class_to(&pair.rho),
            "v": class_to(&pair.v),
        }),
    );

    match positivity_report(&s, &pair, &h) {
        Ok(p) => {
            failed |= !p.pass();
            report.insert(
                "positivity".into(),
                json!({
                    "big_m": int_to(&p.big_m),
                    "p_of_slope": rat_to(&p.p_of_slope),
                    "discriminant_threshold": rat_to(&p.discriminant_threshold),
                    "verdicts": verdicts(&p.verdicts()),
                    "pass": p.pass(),
                }),
            );
        }
        Err(Error::P2Unsupported) => {
            unknown = true;
            report.insert("positivity".into(), json!({"unsupported": true}));
        }
        Err(e) => return Err(e),
    }

    let theta = theta_on_hilb(&s, &pair)?;
    report.insert(
        "theta".into(),
        json!({
            "theta": {"base": divisor_to(&theta.theta.base), "e_coeff": rat_to(&theta.theta.e_coeff)},
            "k_hilb": {"base": divisor_to(&theta.k_hilb.base), "e_coeff": rat_to(&theta.k_hilb.e_coeff)},
            "vanishing": if theta.vanishing_sufficient { "certified" } else { "not certified" },
        }),
    );

    match exponents(&s, &pair.sigma)? {
        Err(n) => {
            failed = true;
            report.insert("sigma_exponents".into(), not_admitting_json(&n));
        }
        Ok(sigma_exps) => {
            report.insert("sigma_exponents".into(), exponents_to(&sigma_exps));
            let v = v_exponents(&s, &sigma_exps, &ell)?;
            report.insert("v_exponents".into(), exponents_to(&v));
            report.insert("xi".into(), xi_json(&s, &pair, &v, &mut failed, &mut unknown)?);
        }
    }

    if ell == int(1) {
        let m = numbers_match_l1(&s, &pair)?;
        failed |= !m.equal;
        report.insert(
            "count_match".into(),
            json!({"c2_v": int_to(&m.c2_v), "chi_L": int_to(&m.chi_l), "equal": m.equal}),
        );
    }
    let code = if failed {
        FAIL
    } else if unknown {
        UNSUPPORTED
    } else {
        OK
    };
    Ok(Outcome::with_code(Value::Object(report), code))
}

fn xi_json(
    s: &SurfaceConfig,
    pair: &gaeta_core::sd::SdPair,
    v: &GaetaExponents,
    failed: &mut bool,
    unknown: &mut bool,
) -> Result<Value> {
    if !v.is_nonnegative() {
        *failed = true;
        return Ok(json!({"skipped": "v exponents are negative"}));
    }
    match xi_dimension(s, pair, v) {
        Ok(x) => {
            *failed |= !(x.identity_holds && x.rank_facts_hold);
            Ok(json!({
                "hom_lambda_omega": int_to(&x.hom_lambda_omega),
                "dim_p": int_to(&x.dim_p),
                "formula_value": int_to(&x.formula_value),
                "rank_lambda": int_to(&x.rank_lambda),
                "rank_omega": int_to(&x.rank_omega),
                "rank_facts_hold": x.rank_facts_hold,
                "identity_holds": x.identity_holds,
            }))
        }
        Err(Error::Incomplete(what)) => {
            *unknown = true;
            Ok(json!({"unknown": true, "missing": what}))
        }
        Err(e) => Err(e),
    }
}
