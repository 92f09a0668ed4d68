use std::fs;

use argshift::components::{count_zero_fibre, Analysis, IPrimeTable};
use argshift::elements::ElementSpec;
use argshift::flags::{enumerate_atlas, jordan_type_label, BorelAtlas};
use argshift::lie::GElement;
use argshift::mf::{poisson_bracket, tarasov_check, ShiftSystem};
use argshift::sampling::{self, SeededRng};
use argshift::{corpus, properties, Error};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::Report;
use crate::RunArgs;

const DEFAULT_N: usize = 3;

type Outcome = Result<Report, String>;

struct Target {
    label: String,
    a: GElement,
}

fn load_target(args: &RunArgs) -> Result<Target, String> {
    if let Some(path) = &args.matrix {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let a: GElement = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if let Some(n) = args.n {
            if n != a.n() {
                return Err(format!("--n {n} disagrees with the {}x{} matrix", a.n(), a.n()));
            }
        }
        a.require_regular().map_err(|e| e.to_string())?;
        return Ok(Target { label: "matrix".into(), a });
    }
    let spec = ElementSpec::parse(&args.element, &args.params).map_err(|e| e.to_string())?;
    let a = spec.build(args.n.unwrap_or(DEFAULT_N)).map_err(|e| e.to_string())?;
    a.require_regular().map_err(|e| e.to_string())?;
    Ok(Target { label: spec.to_string(), a })
}

fn config(args: &RunArgs, t: &Target) -> Value {
    json!({
        "n": t.a.n(),
        "element": t.label,
        "a": t.a,
        "seed": args.seed,
        "samples": args.samples,
    })
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn build(args: &RunArgs) -> Outcome {
    let t = load_target(args)?;
    let sys = ShiftSystem::build(&t.a).map_err(|e| e.to_string())?;
    let comps = strs(&sys.components);
    let scaled = strs(&sys.scaled_components());
    let labels: Vec<String> = sys.labels.iter().map(|(i, j)| format!("f{i}{j}")).collect();
    let rows = (0..comps.len())
        .map(|k| {
            vec![
                labels[k].clone(),
                sys.display_scaling[k].to_string(),
                comps[k].clone(),
                scaled[k].clone(),
            ]
        })
        .collect();
    let result = json!({
        "n": sys.n(),
        "b": sys.b(),
        "r": sys.r(),
        "degrees": sys.degrees,
        "labels": labels,
        "components": comps,
        "scaling": strs(&sys.display_scaling),
        "scaled_components": scaled,
        "certificate": sys.certificate,
    });
    Ok(Report::new("build", config(args, &t), result)?
        .table(vec!["label", "scale", "component", "scaled"], rows))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: Value,
}

fn check<T: Serialize>(name: &'static str, r: argshift::Result<(bool, T)>) -> Check {
    match r {
        Ok((passed, d)) => Check {
            name,
            passed,
            detail: serde_json::to_value(d).unwrap_or(Value::Null),
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: Value::String(e.to_string()),
        },
    }
}

fn poisson_check(sys: &ShiftSystem) -> argshift::Result<(bool, Value)> {
    let mut failing = Vec::new();
    for i in 0..sys.components.len() {
        for j in i + 1..sys.components.len() {
            if !poisson_bracket(&sys.algebra, &sys.components[i], &sys.components[j])?.is_zero() {
                failing.push((i, j));
            }
        }
    }
    let pairs = sys.b() * (sys.b() - 1) / 2;
    Ok((failing.is_empty(), json!({"pairs": pairs, "failing": failing})))
}

fn in_b_a(an: &Analysis, rng: &mut SeededRng) -> GElement {
    sampling::random_in_subspace(rng, &an.sys.algebra, &an.atlas.b_a, 5)
}

fn borel_check(an: &Analysis, rng: &mut SeededRng) -> argshift::Result<(bool, Value)> {
    let x = in_b_a(an, rng);
    let mut dims = Vec::new();
    for b in &an.atlas.borels {
        dims.push(an.borel_component(&x, b)?.dim());
    }
    Ok((true, json!({"x": x, "borels": an.atlas.borels.len(), "dims": dims})))
}

fn weyl_check(an: &Analysis, rng: &mut SeededRng) -> argshift::Result<(bool, Value)> {
    let x = in_b_a(an, rng);
    let comps = an.weyl_components(&x)?;
    let g = &an.sys.algebra;
    let distinct = comps
        .iter()
        .enumerate()
        .all(|(i, c)| comps[..i].iter().all(|d| !c.same_as(g, d)));
    Ok((distinct, json!({"x": x, "components": comps.len(), "distinct": distinct})))
}

fn singular_check(an: &Analysis, rng: &mut SeededRng) -> argshift::Result<(bool, Value)> {
    if an.sys.a.is_nilpotent() {
        return match an.singular_family_check(&GElement::zero(an.sys.n())) {
            Err(Error::Nilpotent(m)) => Ok((true, json!({"rejected": m}))),
            Err(e) => Err(e),
            Ok(r) => Ok((false, serde_json::to_value(r).unwrap_or(Value::Null))),
        };
    }
    let r = an.singular_family_check(&in_b_a(an, rng))?;
    Ok((r.passed, serde_json::to_value(r).unwrap_or(Value::Null)))
}

pub fn verify(args: &RunArgs) -> Outcome {
    let t = load_target(args)?;
    let an = Analysis::new(&t.a).map_err(|e| e.to_string())?;
    let sys = &an.sys;
    let mut rng = sampling::rng(args.seed);
    let mut checks = vec![
        check("poisson_commutativity", poisson_check(sys)),
        check(
            "jacobian_rank",
            Ok((sys.certificate.rank == sys.b(), json!({"rank": sys.certificate.rank, "b": sys.b()}))),
        ),
        check("borel_components", borel_check(&an, &mut rng)),
    ];
    if t.a.is_nilpotent() {
        checks.push(check("weyl_components", weyl_check(&an, &mut rng)));
    }
    checks.push(check(
        "image_of_b_a",
        an.image_bba_check(args.samples, &mut rng).map(|r| (r.passed, r)),
    ));
    checks.push(check("singular_family", singular_check(&an, &mut rng)));
    let crit = an.critical_value_probe(args.samples, &mut rng);
    checks.push(check(
        "critical_values",
        Ok((
            crit.passed,
            json!({"rank_counts": crit.rank_counts, "max_rank": crit.max_rank, "sl2_identity": crit.sl2_identity}),
        )),
    ));
    if t.a.is_diagonal() {
        checks.push(check(
            "tarasov_section",
            tarasov_check(sys, args.samples, 2 * args.samples, &mut rng).map(|r| (r.passed, r)),
        ));
        checks.push(check(
            "tarasov_exotic",
            an.tarasov_exotic_probe(args.samples, &mut rng).map(|r| (r.passed, r)),
        ));
    }
    for r in properties::run_for(sys, args.samples, &mut rng) {
        checks.push(check(r.name, Ok((r.passed, r))));
    }
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name.to_string());
    let rows = checks
        .iter()
        .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.to_string()])
        .collect();
    let mut report = Report::new("verify", config(args, &t), json!({ "checks": checks }))?
        .table(vec!["check", "passed", "detail"], rows);
    report.passed = first_failure.is_none();
    report.first_failure = first_failure;
    Ok(report)
}

fn iprime_table(args: &RunArgs) -> Result<IPrimeTable, String> {
    match &args.iprime {
        None => Ok(IPrimeTable::default()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            IPrimeTable::from_json_over_defaults(&text).map_err(|e| e.to_string())
        }
    }
}

pub fn count(args: &RunArgs) -> Outcome {
    let t = load_target(args)?;
    let table = iprime_table(args)?;
    let c = count_zero_fibre(&t.a, &t.label, &table).map_err(|e| e.to_string())?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut rows: Vec<Vec<String>> = c
        .parabolic_terms
        .iter()
        .map(|p| {
            vec![
                "parabolic".into(),
                p.pattern.clone(),
                opt(p.product.exact),
                p.product.lower_bound.to_string(),
            ]
        })
        .collect();
    rows.push(vec!["iprime".into(), c.jordan_type.clone(), opt(c.iprime.exact()), c.iprime.lower_bound().to_string()]);
    rows.push(vec!["borels".into(), String::new(), c.borel_count.to_string(), c.borel_count.to_string()]);
    rows.push(vec!["total".into(), c.formula.clone(), opt(c.total.exact), c.total.lower_bound.to_string()]);
    Ok(Report::new("count", config(args, &t), &c)?.table(vec!["term", "pattern", "exact", "lower_bound"], rows))
}

fn atlas_json(atlas: &BorelAtlas) -> Value {
    let g = &atlas.algebra;
    let member = |p: &argshift::flags::FlagParabolic| {
        json!({
            "composition": p.composition(),
            "dim": p.p.dim(),
            "pattern": p.pattern(g),
            "levi_simple_factors": p.levi_simple_factors(),
        })
    };
    json!({
        "borels": atlas.borels.iter().map(member).collect::<Vec<_>>(),
        "parabolics": atlas.parabolics.iter().map(member).collect::<Vec<_>>(),
        "b_a": {"dim": atlas.b_a.dim(), "pattern": atlas.b_a.pattern(g)},
        "u_a": {"dim": atlas.u_a.dim(), "pattern": atlas.u_a.pattern(g)},
        "counts": {"borels": atlas.borels.len(), "parabolics": atlas.parabolics.len()},
    })
}

pub fn atlas(args: &RunArgs) -> Outcome {
    let t = load_target(args)?;
    let atlas = enumerate_atlas(&t.a).map_err(|e| e.to_string())?;
    let g = &atlas.algebra;
    let mut result = atlas_json(&atlas);
    result["jordan_type"] = json!(jordan_type_label(&t.a));
    let join = |c: &[usize]| strs(c).join("+");
    let rows = atlas
        .borels
        .iter()
        .map(|p| ("borel", p))
        .chain(atlas.parabolics.iter().map(|p| ("parabolic", p)))
        .map(|(k, p)| vec![k.to_string(), join(p.composition()), p.pattern(g)])
        .chain([
            vec!["b_a".into(), String::new(), atlas.b_a.pattern(g)],
            vec!["u_a".into(), String::new(), atlas.u_a.pattern(g)],
        ])
        .collect();
    Ok(Report::new("atlas", config(args, &t), result)?.table(vec!["kind", "composition", "pattern"], rows))
}

pub fn check_examples() -> Outcome {
    let r = corpus::run();
    let rows = r
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone().unwrap_or_default()])
        .collect();
    let mut report = Report::new("check-examples", json!({}), &r)?.table(vec!["check", "passed", "detail"], rows);
    report.passed = r.passed;
    report.first_failure = r.first_failure;
    Ok(report)
}
