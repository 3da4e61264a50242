use std::str::FromStr;

use ct3_core::blowup::{ModelTag, SingularityPresentation};
use ct3_core::classify::{
    check_boundindex, check_sm_lower, check_sm_not_ab1, classify_interval, in_expected_set, scan_assumption_a,
    scan_bezout, scan_ca_split, scan_delta, scan_discrepancy, union_report, ClassifyOptions, IdentityReport,
    IntervalSpec, SmLowerReport,
};
use ct3_core::poly::{parse_poly, PolySupport};
use ct3_core::threshold::{brieskorn_ct, ct_upper_bound, ThresholdError};
use ct3_core::weights::{enumerate_family, FamilyBounds, FamilyTag, QuotientAction};
use serde_json::{json, Value};

use crate::args::{ClassifyArgs, ComputeArgs, FamiliesArgs, VerifyArgs};
use crate::render::Report;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn fail<T>(code: i32, message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError { code, message: message.into() })
}

/// A finished command: its report and the exit code to return.
pub type Outcome = Result<(Report, i32), CliError>;

fn single(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Report {
    Report { json, json_lines: false, header, rows }
}

/// Family names, plus `all`, `cD` and `cD/2` for both cases of a type.
pub fn family_group(name: &str) -> Result<Vec<FamilyTag>, CliError> {
    match name {
        "all" => Ok(FamilyTag::ALL.to_vec()),
        "cD" => Ok(vec![FamilyTag::CD1, FamilyTag::CD2]),
        "cD/2" => Ok(vec![FamilyTag::CD2q1, FamilyTag::CD2q2]),
        _ => FamilyTag::from_str(name).map(|t| vec![t]).or_else(|e| fail(2, e.to_string())),
    }
}

/// `1/n(b1,...,bk)`.
fn parse_action(text: &str) -> Result<QuotientAction, CliError> {
    let bad = || CliError { code: 2, message: format!("cannot parse action '{text}', expected 1/n(b1,...)") };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = t.strip_prefix("1/").ok_or_else(bad)?;
    let (n, list) = rest.split_once('(').ok_or_else(bad)?;
    let list = list.strip_suffix(')').ok_or_else(bad)?;
    let n: u64 = n.parse().map_err(|_| bad())?;
    let b: Vec<i64> = list.split(',').map(|s| s.parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    QuotientAction::new(n, &b).map_err(|e| CliError { code: 3, message: e.to_string() })
}

fn poly(text: &str, vars: usize, what: &str) -> Result<PolySupport, CliError> {
    parse_poly(text, vars).map_err(|e| CliError { code: 2, message: format!("{what}: {e}") })
}

pub fn compute(a: &ComputeArgs) -> Outcome {
    let (tag, dim) = match a.kind.as_str() {
        "sm" => (ModelTag::Smooth, 3),
        "index1" => (ModelTag::Index1, 4),
        k => {
            let t = FamilyTag::from_str(k).or_else(|e| fail(2, e.to_string()))?;
            if t == FamilyTag::Smooth {
                (ModelTag::Smooth, 3)
            } else if matches!(t, FamilyTag::CD2 | FamilyTag::CD2q2) {
                (ModelTag::Family(t), 5)
            } else {
                (ModelTag::Family(t), 4)
            }
        }
    };
    let f = poly(&a.f, dim, "f")?;
    let model = if tag == ModelTag::Smooth {
        SingularityPresentation::smooth()
    } else {
        let phi = a.phi.as_deref().ok_or(()).or_else(|_| fail(2, format!("--phi is required for type {tag}")))?;
        let mut eqs = vec![poly(phi, dim, "phi")?];
        if dim == 5 {
            let phi2 = a.phi2.as_deref().ok_or(()).or_else(|_| fail(2, "--phi2 is required for this type"))?;
            eqs.push(poly(phi2, dim, "phi2")?);
        }
        let action = match &a.action {
            Some(t) => parse_action(t)?,
            None => QuotientAction::trivial(dim),
        };
        SingularityPresentation::new(tag, eqs, action, a.d).map_err(|e| CliError { code: 3, message: e.to_string() })?
    };
    let c = ct_upper_bound(&model, &f, a.bound).map_err(|e| {
        let code = if matches!(e, ThresholdError::NoCertifiedWeight(_)) { 4 } else { 3 };
        CliError { code, message: e.to_string() }
    })?;
    let json = json!({
        "upper_bound": c.value.to_string(),
        "witness": {
            "weight": c.weight.numerators(),
            "index": c.weight.index(),
            "discrepancy": c.discrepancy,
            "multiplicity": c.multiplicity,
        },
        "certificate": c.certificate.code(),
        "exact": c.exact,
    });
    let row = vec![c.value.to_string(), c.weight.to_string(), c.certificate.to_string(), c.exact.to_string()];
    Ok((single(json, vec!["upper_bound", "weight", "certificate", "exact"], vec![row]), 0))
}

fn sm_lines(r: &SmLowerReport) -> Vec<String> {
    r.counterexamples.iter().map(|(a, b, m)| format!("(a,b,m) = ({a},{b},{m})")).collect()
}

pub fn verify(v: &VerifyArgs) -> Outcome {
    let or = |x: Option<u64>, d: u64| x.unwrap_or(d);
    let (bounds, checked, counterexamples, detail) = match v.prop.as_str() {
        "sm-lower" | "sm-not-ab1" => {
            let max = or(v.max, 25);
            if max < 3 {
                return fail(2, "--max must be at least 3");
            }
            let r = if v.prop == "sm-lower" { check_sm_lower(max) } else { check_sm_not_ab1(max) };
            (json!({"max": max}), r.tuples, sm_lines(&r), serde_json::to_value(&r).expect("report"))
        }
        "ca-split" => {
            let (max, a_max, d_max) = (or(v.max, 200), or(v.a_max, 60), or(v.d_max, 4));
            let mut r = scan_bezout(max as i64);
            let ca = scan_ca_split(a_max, d_max);
            let detail = json!({"bezout": &r, "ca_split": &ca});
            r.checked += ca.checked;
            r.failures.extend(ca.failures);
            (json!({"max": max, "a_max": a_max, "d_max": d_max}), r.checked, r.failures, detail)
        }
        "delta" => {
            let (n_max, a_max, d_max) = (or(v.n_max, 6), or(v.a_max, 60), or(v.d_max, 2));
            let r = scan_delta(n_max, a_max, d_max);
            identity(json!({"n_max": n_max, "a_max": a_max, "d_max": d_max}), r)
        }
        "assumption-a" => {
            let b = FamilyBounds { a_max: or(v.a_max, 25), d_max: or(v.d_max, 8), n_max: or(v.n_max, 4), min_discrepancy: 1 };
            let mut total = IdentityReport::default();
            let mut per = serde_json::Map::new();
            for tag in FamilyTag::ALL.into_iter().filter(|&t| t != FamilyTag::Smooth) {
                let r = scan_assumption_a(tag, &b, v.pairs);
                per.insert(tag.name().into(), json!({"pairs": r.checked, "failures": r.failures.len()}));
                total.checked += r.checked;
                total.failures.extend(r.failures);
            }
            (serde_json::to_value(b).expect("bounds"), total.checked, total.failures, Value::Object(per))
        }
        "boundindex" => {
            if v.k < 2 {
                return fail(2, "--k must be at least 2");
            }
            let k = v.k as u64;
            let b = FamilyBounds::classification(or(v.a_max, 25), or(v.d_max, 6), or(v.n_max, 3 * k + 3));
            let r = check_boundindex(v.k, &b);
            (serde_json::to_value(b).expect("bounds"), r.survivors as u64, r.violations.clone(), serde_json::to_value(&r).expect("report"))
        }
        "discrepancy-id" => {
            let (a_max, d_max, n_max) = (or(v.a_max, 40), or(v.d_max, 6), or(v.n_max, 6));
            let r = scan_discrepancy(a_max, d_max, n_max);
            identity(json!({"a_max": a_max, "d_max": d_max, "n_max": n_max}), r)
        }
        other => return fail(2, format!("unknown proposition '{other}'")),
    };
    let code = i32::from(!counterexamples.is_empty());
    let rows = vec![vec![v.prop.clone(), checked.to_string(), counterexamples.len().to_string()]];
    let json = json!({
        "prop": v.prop,
        "bounds": bounds,
        "checked": checked,
        "counterexamples": counterexamples,
        "detail": detail,
    });
    Ok((single(json, vec!["prop", "checked", "counterexamples"], rows), code))
}

fn identity(bounds: Value, r: IdentityReport) -> (Value, u64, Vec<String>, Value) {
    (bounds, r.checked, r.failures, Value::Null)
}

pub fn classify(c: &ClassifyArgs, audit: bool) -> Outcome {
    let spec = IntervalSpec::from_str(&c.interval).or_else(|e| fail(2, e.to_string()))?;
    let tags = match (&c.family, c.all) {
        (_, true) => FamilyTag::ALL.to_vec(),
        (Some(f), false) => family_group(f)?,
        (None, false) => return fail(2, "give --family or --all"),
    };
    if let Some(e) = c.expect.as_deref().filter(|e| *e != "half-plus") {
        return fail(2, format!("unknown expectation '{e}'"));
    }
    let opts = ClassifyOptions { audit, order: None };
    let reports: Vec<_> = tags
        .iter()
        .map(|&t| {
            let b = if t == FamilyTag::Smooth {
                FamilyBounds { a_max: c.a_max, d_max: c.d_max, n_max: c.n_max, min_discrepancy: 1 }
            } else {
                FamilyBounds::classification(c.a_max, c.d_max, c.n_max)
            };
            classify_interval(t, spec, &b, &opts)
        })
        .collect();
    let union = union_report(spec, &reports, c.denom_max);
    let mut rows = Vec::new();
    let mut unexpected = Vec::new();
    let mut disagreements = 0;
    for r in &reports {
        for s in &r.survivors {
            rows.push(vec![r.family.clone(), s.ct.to_string(), s.m.to_string(), s.params.to_string()]);
            if !in_expected_set(s.ct) {
                unexpected.push(format!("{} {} m={}", s.ct, s.params, s.m));
            }
        }
        disagreements += r.audit.as_ref().map_or(0, |a| a.disagreements.len());
    }
    let mut json = json!({
        "interval": [spec.lo().to_string(), spec.hi().to_string()],
        "families": reports,
        "union": union,
    });
    let mut code = i32::from(disagreements > 0);
    if c.expect.is_some() {
        json["unexpected"] = json!(unexpected);
        if !unexpected.is_empty() {
            code = 1;
        }
    }
    Ok((single(json, vec!["family", "ct", "m", "params"], rows), code))
}

pub fn brieskorn(a: u64, b: u64, c: u64) -> Outcome {
    let result = match brieskorn_ct(a, b, c) {
        Ok(v) => v.to_string(),
        Err(ThresholdError::NotApplicable { .. }) => "not-applicable".to_string(),
        Err(e) => return fail(2, e.to_string()),
    };
    let row = vec![a.to_string(), b.to_string(), c.to_string(), result.clone()];
    Ok((single(json!({"a": a, "b": b, "c": c, "result": result}), vec!["a", "b", "c", "result"], vec![row]), 0))
}

pub fn families(f: &FamiliesArgs) -> Outcome {
    let bounds = FamilyBounds { a_max: f.a_max, d_max: f.d_max, n_max: f.n_max, min_discrepancy: 1 };
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for tag in family_group(&f.family)? {
        for p in enumerate_family(tag, &bounds) {
            let w = p.family_weight().expect("enumerated members are valid");
            let mut v = serde_json::to_value(p).expect("params");
            v["weight"] = json!(w.numerators());
            v["index"] = json!(w.index());
            items.push(v);
            rows.push(vec![tag.name().to_string(), p.to_string(), w.to_string(), w.index().to_string()]);
        }
    }
    let report = Report { json: Value::Array(items), json_lines: true, header: vec!["family", "params", "weight", "index"], rows };
    Ok((report, 0))
}
