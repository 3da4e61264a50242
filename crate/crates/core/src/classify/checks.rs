//! Finite checks of the propositions behind the pipelines, and the merged
//! report of known and surviving thresholds.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{q, Q};
use crate::blowup::{certify_irreducible, discrepancy, poly_numerator_weight, CertificateKind, SingularityPresentation};
use crate::poly::{diagram_contains, gamma_plus, PolySupport};
use crate::threshold::{bezout_split, ca_split, delta_data, feasible_m, ser_q, AuxConstraint};
use crate::weights::{
    auxiliary_weight, dominates, enumerate_family, FamilyBounds, FamilyParams, FamilyTag, WeightError, WeightVec,
};

use super::{classify_interval, ClassifyOptions, ClassifyReport, IntervalSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmLowerReport {
    pub bound: u64,
    pub pairs: u64,
    pub tuples: u64,
    /// `(a, b, m)` where the two auxiliary windows were both satisfiable.
    pub counterexamples: Vec<(i64, i64, i64)>,
}

/// For coprime `2 <= a < b <= bound`, every `m < ab` and `m = ab + 1` with
/// `(a + b) ∤ m` must be excluded by the two Bezout-split valuations.
pub fn check_sm_lower(bound: u64) -> SmLowerReport {
    sm_scan(bound, |a, b| (1..a * b).chain([a * b + 1]).collect())
}

/// The `m = ab + 1` half of [`check_sm_lower`] on its own.
pub fn check_sm_not_ab1(bound: u64) -> SmLowerReport {
    sm_scan(bound, |a, b| vec![a * b + 1])
}

fn sm_scan(bound: u64, ms: impl Fn(i64, i64) -> Vec<i64>) -> SmLowerReport {
    let bound = bound as i64;
    let mut rep = SmLowerReport { bound: bound as u64, pairs: 0, tuples: 0, counterexamples: Vec::new() };
    for a in 2..bound {
        for b in a + 1..=bound {
            if a.gcd(&b) != 1 {
                continue;
            }
            rep.pairs += 1;
            let sp = bezout_split(a, b).expect("coprime, a >= 2");
            let cs = [
                AuxConstraint::new(sp.s + sp.t, q(sp.s, a)),
                AuxConstraint::new(sp.s_bar + sp.t_bar, q(sp.t_bar, b)),
            ];
            for m in ms(a, b) {
                if m % (a + b) == 0 {
                    continue;
                }
                rep.tuples += 1;
                if feasible_m(a + b, m, &cs).feasible {
                    rep.counterexamples.push((a, b, m));
                }
            }
        }
    }
    rep
}

/// Outcome of an exhaustive identity scan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// `a t = b s + 1`, `a t̄ = b s̄ - 1`, `0 < s < a` for coprime `2 <= a < b <= max`.
pub fn scan_bezout(max: i64) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for a in 2..max {
        for b in (a + 1..=max).filter(|b| a.gcd(b) == 1) {
            let ok = match bezout_split(a, b) {
                Ok(sp) => {
                    a * sp.t == b * sp.s + 1
                        && a * sp.t_bar == b * sp.s_bar - 1
                        && 0 < sp.s
                        && sp.s < a
                        && sp.t > 0
                        && sp.t_bar > 0
                }
                Err(_) => false,
            };
            rep.check(ok, || format!("bezout ({a},{b})"));
        }
    }
    rep
}

/// The split identities for every cA member with `a <= a_max`, `d <= d_max`.
pub fn scan_ca_split(a_max: u64, d_max: u64) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let bounds = FamilyBounds { a_max, d_max, n_max: 1, min_discrepancy: 2 };
    for p in enumerate_family(FamilyTag::CA, &bounds) {
        let FamilyParams::CA { r1, r2, a, d } = p else { unreachable!() };
        let (r1, r2, a, d) = (r1 as i64, r2 as i64, a as i64, d as i64);
        let ok = match ca_split(r1, r2, a) {
            Ok(sp) => {
                sp.a1 + sp.a2 == a
                    && sp.a1 > 0
                    && sp.a2 > 0
                    && 1 + sp.a1 * r1 == sp.s1_star * a
                    && 1 + sp.a2 * r2 == sp.s2_star * a
                    && r2 * sp.s1_star + r1 * sp.s2_star == d + r1 * r2
            }
            Err(_) => false,
        };
        rep.check(ok, || p.to_string());
    }
    rep
}

/// `delta_1 r1 + n = a s1*`, `delta_2 r2 + n = a s2*`, and one of the
/// deltas positive, for every cA/n member with `a >= 2` within the bounds.
pub fn scan_delta(n_max: u64, a_max: u64, d_max: u64) -> IdentityReport {
    let mut rep = IdentityReport::default();
    // a = 1 is the cyclic quotient point, where s1 = 0 and no split exists.
    let bounds = FamilyBounds { a_max, d_max, n_max, min_discrepancy: 2 };
    for p in enumerate_family(FamilyTag::CAn, &bounds) {
        let FamilyParams::CAn { n, b, r1, r2, a, .. } = p else { unreachable!() };
        let (n, b, r1, r2, a) = (n as i64, b as i64, r1 as i64, r2 as i64, a as i64);
        let ok = match delta_data(n, b, r1, r2, a) {
            Ok(dd) => {
                dd.delta1 * r1 + n == a * dd.s1_star
                    && dd.delta2 * r2 + n == a * dd.s2_star
                    && (dd.delta1 > 0 || dd.delta2 > 0)
                    && 1 == dd.q1 * r1 + dd.s1_star * dd.s1
                    && 1 == dd.q2 * r2 + dd.s2_star * dd.s2
            }
            Err(_) => false,
        };
        rep.check(ok, || p.to_string());
    }
    rep
}

/// Every enumerated family weight has discrepancy `a` over its normal form.
pub fn scan_discrepancy(a_max: u64, d_max: u64, n_max: u64) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let bounds = FamilyBounds { a_max, d_max, n_max, min_discrepancy: 1 };
    for tag in FamilyTag::ALL {
        for p in enumerate_family(tag, &bounds) {
            let ok = match (p.family_weight(), SingularityPresentation::normal_form(&p)) {
                (Ok(w), Ok(model)) if tag != FamilyTag::Smooth => discrepancy(&model, &w) == Ok(p.discrepancy() as i64),
                (Ok(w), Ok(_)) => discrepancy(&SingularityPresentation::smooth(), &w) == Ok(p.discrepancy() as i64),
                _ => false,
            };
            rep.check(ok, || p.to_string());
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub aux_weight: WeightVec,
    /// `n_i w_i(f_i) <= n_i w_i(f_j)`.
    pub multiplicity: bool,
    /// `n_i w_i ⪯ n_j w^i_j`.
    pub dominance: bool,
    /// Irreducible exceptional divisor over the `j`-th model with discrepancy `a_i`.
    pub irreducible: bool,
    pub certificate: Option<CertificateKind>,
    pub discrepancy: Option<i64>,
    pub diagrams_nested: bool,
    pub notes: Vec<String>,
}

impl AssumptionReport {
    pub fn holds(&self) -> bool {
        self.multiplicity && self.dominance && self.irreducible
    }
}

/// Check the three conditions of Assumption A for one pair of members of the
/// same family, using the auxiliary weight built from `params_i` and `d_j`.
pub fn check_assumption_a(
    tag: FamilyTag,
    params_i: &FamilyParams,
    params_j: &FamilyParams,
    f_i: &PolySupport,
    f_j: &PolySupport,
) -> Result<AssumptionReport, WeightError> {
    if params_i.tag() != tag || params_j.tag() != tag {
        return Err(WeightError::Invariant(format!("both members must be of type {tag}")));
    }
    let w_i = params_i.family_weight()?;
    params_j.validate()?;
    let d_j = params_j.d().ok_or_else(|| WeightError::Invariant("smooth points have no d".into()))?;
    let aux = auxiliary_weight(params_i, d_j)?;
    let mut notes = Vec::new();

    let diagrams_nested = diagram_contains(&gamma_plus(f_i), &gamma_plus(f_j));
    if !diagrams_nested {
        notes.push("the diagram of f_i does not contain that of f_j".into());
    }
    let multiplicity = f_i.variable_count() == w_i.len()
        && f_j.variable_count() == w_i.len()
        && poly_numerator_weight(&w_i, f_i) <= poly_numerator_weight(&w_i, f_j);

    let dominance = w_i.index() == aux.index() && dominates(&aux, q(1, 1), &w_i);
    if !dominance {
        notes.push(format!("{aux} does not dominate {w_i}"));
    }

    let (mut certificate, mut disc) = (None, None);
    match SingularityPresentation::normal_form(params_j) {
        Ok(model) => {
            certificate = certify_irreducible(&model, &aux).kind();
            disc = discrepancy(&model, &aux).ok();
        }
        Err(e) => notes.push(format!("no normal form for {params_j}: {e}")),
    }
    let irreducible = certificate.is_some() && disc == Some(params_i.discrepancy() as i64);
    if !irreducible {
        notes.push(format!("certificate {certificate:?}, discrepancy {disc:?}, expected {}", params_i.discrepancy()));
    }
    Ok(AssumptionReport {
        aux_weight: aux,
        multiplicity,
        dominance,
        irreducible,
        certificate,
        discrepancy: disc,
        diagrams_nested,
        notes,
    })
}

/// Ordered pairs `(i, j)` of members sharing the quotient data, with
/// `d_i < d_j`, `a_i <= a_j` and a solvable auxiliary weight. The first
/// `limit` pairs in enumeration order.
pub fn assumption_a_pairs(tag: FamilyTag, bounds: &FamilyBounds, limit: usize) -> Vec<(FamilyParams, FamilyParams)> {
    let members = enumerate_family(tag, bounds);
    let mut out = Vec::new();
    for pi in &members {
        for pj in &members {
            if out.len() == limit {
                return out;
            }
            let (Some(di), Some(dj)) = (pi.d(), pj.d()) else { continue };
            if di < dj
                && pi.discrepancy() <= pj.discrepancy()
                && pi.action() == pj.action()
                && auxiliary_weight(pi, dj).is_ok()
            {
                out.push((*pi, *pj));
            }
        }
    }
    out
}

/// [`check_assumption_a`] over [`assumption_a_pairs`], with `f_i = f_j = (u = 0)`.
pub fn scan_assumption_a(tag: FamilyTag, bounds: &FamilyBounds, limit: usize) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for (pi, pj) in assumption_a_pairs(tag, bounds, limit) {
        let vars = pi.family_weight().map(|w| w.len()).unwrap_or(4);
        let mut e = vec![0u32; vars];
        e[3] = 1;
        let f = PolySupport::from_exponents(vars, &[&e]).expect("u is a monomial");
        let res = check_assumption_a(tag, &pi, &pj, &f, &f);
        rep.check(res.as_ref().is_ok_and(AssumptionReport::holds), || match res {
            Ok(r) => format!("{pi} vs {pj}: {}", r.notes.join("; ")),
            Err(e) => format!("{pi} vs {pj}: {e}"),
        });
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundIndexReport {
    pub k: i64,
    pub survivors: usize,
    pub max_index: Option<u64>,
    pub violations: Vec<String>,
}

/// Every cA/n survivor in `(1/k, 1/(k-1))` must have index at most `3k`.
pub fn check_boundindex(k: i64, bounds: &FamilyBounds) -> BoundIndexReport {
    let spec = IntervalSpec::reciprocal(k).expect("k >= 2");
    let rep = classify_interval(FamilyTag::CAn, spec, bounds, &ClassifyOptions::default());
    let index = |t: &super::RuleTrace| t.params.index();
    let violations = rep
        .survivors
        .iter()
        .filter(|t| index(t) > 3 * k as u64)
        .map(|t| format!("{} m={}", t.params, t.m))
        .collect();
    BoundIndexReport {
        k,
        survivors: rep.survivors.len(),
        max_index: rep.survivors.iter().map(index).max(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionEntry {
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub sources: BTreeSet<String>,
}

/// Merge `aleph4` (fractions `q/m` with `q <= 4`, `m <= denom_max`), the
/// survivors of the given reports, the Brieskorn values `1/a + 1/b` with
/// denominator at most `denom_max`, and the cA_1 example value `4/5`.
/// Sorted strictly descending.
pub fn union_report(spec: IntervalSpec, reports: &[ClassifyReport], denom_max: u64) -> Vec<UnionEntry> {
    let mut map: BTreeMap<Q, BTreeSet<String>> = BTreeMap::new();
    let mut add = |v: Q, tag: &str| {
        if spec.contains(v) {
            map.entry(v).or_default().insert(tag.to_string());
        }
    };
    let dmax = denom_max as i64;
    for den in 1..=dmax {
        for num in 1..=4 {
            add(q(num, den), "aleph4");
        }
    }
    for a in 2..=dmax {
        for b in a..=dmax {
            let v = q(1, a) + q(1, b);
            if *v.denom() <= dmax {
                add(v, "brieskorn");
            }
        }
    }
    add(q(4, 5), "cA1-example");
    for rep in reports {
        for s in &rep.survivors {
            add(s.ct, &rep.family);
        }
    }
    map.into_iter().rev().map(|(value, sources)| UnionEntry { value, sources }).collect()
}

/// Whether `x` is `1/2 + 1/t` for some `t >= 3`, or `4/5`.
pub fn in_expected_set(x: Q) -> bool {
    crate::arith::is_half_plus_unit_fraction(x) || x == q(4, 5)
}
