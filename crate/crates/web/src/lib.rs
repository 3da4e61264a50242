//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON string; failures come back as `{"error": "..."}`.

use std::str::FromStr;

use ct3_core::blowup::SingularityPresentation;
use ct3_core::classify::{classify_interval, ClassifyOptions, IntervalSpec};
use ct3_core::poly::parse_poly;
use ct3_core::threshold::{brieskorn_ct, ct_upper_bound, ThresholdError};
use ct3_core::weights::{FamilyBounds, FamilyTag};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest search box and discrepancy bound accepted from the page.
const MAX_BOUND: u32 = 16;
const MAX_A: u32 = 25;

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Upper bound for ct at a smooth point (`kind = "sm"`, `f` in x, y, z) or a
/// hypersurface point (`kind = "index1"`, `phi` and `f` in x, y, z, u).
#[wasm_bindgen]
pub fn upper_bound(kind: &str, phi: &str, f: &str, bound: u32) -> String {
    if bound > MAX_BOUND {
        return error(format!("bound is limited to {MAX_BOUND} in the browser"));
    }
    let model = match kind {
        "sm" => Ok(SingularityPresentation::smooth()),
        "index1" => parse_poly(phi, 4)
            .map_err(|e| format!("phi: {e}"))
            .and_then(|p| SingularityPresentation::index1(p).map_err(|e| e.to_string())),
        other => Err(format!("unknown type '{other}'")),
    };
    let model = match model {
        Ok(m) => m,
        Err(e) => return error(e),
    };
    let f = match parse_poly(f, model.ambient_dimension()) {
        Ok(f) => f,
        Err(e) => return error(format!("f: {e}")),
    };
    match ct_upper_bound(&model, &f, u64::from(bound)) {
        Ok(c) => json!({
            "upper_bound": c.value.to_string(),
            "weight": c.weight.to_string(),
            "discrepancy": c.discrepancy,
            "multiplicity": c.multiplicity,
            "certificate": c.certificate.code(),
            "clamped": c.clamped,
            "exact": c.exact,
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// Surviving candidate thresholds of one family in an interval (`"2"` for
/// (1/2, 1), or `"lo,hi"`).
#[wasm_bindgen]
pub fn classify(family: &str, interval: &str, a_max: u32) -> String {
    if a_max > MAX_A {
        return error(format!("a_max is limited to {MAX_A} in the browser"));
    }
    let (tag, spec) = match (FamilyTag::from_str(family), IntervalSpec::from_str(interval)) {
        (Ok(t), Ok(s)) => (t, s),
        (Err(e), _) => return error(e),
        (_, Err(e)) => return error(e),
    };
    let a_max = u64::from(a_max);
    let bounds = if tag == FamilyTag::Smooth {
        FamilyBounds { a_max, ..FamilyBounds::default() }
    } else {
        FamilyBounds::classification(a_max, 6, 6)
    };
    let rep = classify_interval(tag, spec, &bounds, &ClassifyOptions::default());
    let survivors: Vec<Value> = rep
        .survivors
        .iter()
        .map(|s| json!({ "ct": s.ct.to_string(), "m": s.m, "params": s.params.to_string() }))
        .collect();
    let values: Vec<String> = rep.values().iter().map(ToString::to_string).collect();
    json!({
        "family": rep.family,
        "interval": [spec.lo().to_string(), spec.hi().to_string()],
        "values": values,
        "survivors": survivors,
        "pruned": rep.pruned_count,
    })
    .to_string()
}

/// `1/a + 1/b` for `x^a + y^b + z^c`, or `"not-applicable"`.
#[wasm_bindgen]
pub fn brieskorn(a: u32, b: u32, c: u32) -> String {
    match brieskorn_ct(a.into(), b.into(), c.into()) {
        Ok(v) => json!({ "result": v.to_string() }).to_string(),
        Err(ThresholdError::NotApplicable { .. }) => json!({ "result": "not-applicable" }).to_string(),
        Err(e) => error(e),
    }
}
