//! Interval classification of canonical thresholds by monotone pruning.
//!
//! A candidate is a pair (family parameters, multiplicity `m`). Each rule
//! narrows the set of characters the divisor may carry; a candidate dies when
//! that set is empty. Since every rule is a filter, rule order only changes
//! traces, never the survivors.

mod checks;
mod rules;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{floor_q, q, Q};
use crate::blowup::numerator_weight;
use crate::poly::{character, Monomial};
use crate::threshold::{ser_q, AuxConstraint};
use crate::weights::{enumerate_family, FamilyBounds, FamilyParams, FamilyTag, QuotientAction, WeightVec};

pub use checks::{
    assumption_a_pairs, check_assumption_a, check_boundindex, check_sm_lower, check_sm_not_ab1, in_expected_set,
    scan_assumption_a, scan_bezout, scan_ca_split, scan_delta, scan_discrepancy, union_report, AssumptionReport,
    BoundIndexReport, IdentityReport, SmLowerReport, UnionEntry,
};
pub use rules::{frame, pipeline, rule_names};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid interval: {0}")]
    BadInterval(String),
}

/// An open interval of thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalSpec {
    lo: Q,
    hi: Q,
}

impl IntervalSpec {
    /// `(1/k, 1/(k-1))`.
    pub fn reciprocal(k: i64) -> Result<Self, ClassifyError> {
        if k < 2 {
            return Err(ClassifyError::BadInterval(format!("k = {k} must be at least 2")));
        }
        Self::new(q(1, k), q(1, k - 1))
    }

    pub fn new(lo: Q, hi: Q) -> Result<Self, ClassifyError> {
        if lo < q(0, 1) || hi > q(1, 1) || lo >= hi {
            return Err(ClassifyError::BadInterval(format!("({lo}, {hi}) is not inside (0, 1]")));
        }
        Ok(IntervalSpec { lo, hi })
    }

    pub fn lo(&self) -> Q {
        self.lo
    }

    pub fn hi(&self) -> Q {
        self.hi
    }

    pub fn contains(&self, x: Q) -> bool {
        self.lo < x && x < self.hi
    }

    /// Multiplicities `m` with `a/m` inside the interval.
    pub fn multiplicities(&self, a: i64) -> std::ops::RangeInclusive<i64> {
        let low = floor_q(q(a, 1) / self.hi) + 1;
        let high = if self.lo == q(0, 1) { 0 } else { (q(a, 1) / self.lo).ceil().to_integer() - 1 };
        low.max(1)..=high
    }
}

impl FromStr for IntervalSpec {
    type Err = ClassifyError;

    /// `k` for `(1/k, 1/(k-1))`, or `lo,hi` with rational endpoints.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassifyError::BadInterval(format!("cannot parse {s:?}"));
        match s.split_once(',') {
            None => Self::reciprocal(s.trim().parse().map_err(|_| bad())?),
            Some((l, h)) => {
                let lo: Q = l.trim().parse().map_err(|_| bad())?;
                let hi: Q = h.trim().parse().map_err(|_| bad())?;
                Self::new(lo, hi)
            }
        }
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// One auxiliary valuation used by a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSpec {
    pub weight: Option<WeightVec>,
    pub a_prime: i64,
    pub mu: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleAction {
    /// `m = c χ (mod n)` where `c` is the multiplier of the blow-up weight.
    Character,
    /// Inequalities (1) and (2) must leave an integer `m'` for every entry.
    Window(Vec<AuxSpec>),
    /// For every entry, `f` must contain a monomial of auxiliary weight at
    /// most `floor(a' m / a)` whose main weight is at least `m`.
    Member(Vec<AuxSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneRule {
    pub name: &'static str,
    pub action: RuleAction,
}

/// A family member in the coordinates the rules are written in.
#[derive(Debug, Clone)]
pub struct Frame {
    pub params: FamilyParams,
    pub a: i64,
    pub weight: WeightVec,
    pub action: QuotientAction,
    pub multiplier: u64,
    pub note: Option<&'static str>,
}

impl Frame {
    fn new(params: FamilyParams, note: Option<&'static str>) -> Self {
        let weight = params.family_weight().expect("enumerated parameters are valid");
        let action = params.action();
        let multiplier = weight.admissible_multiplier(&action).expect("family weights are admissible");
        Frame { a: params.discrepancy() as i64, params, weight, action, multiplier, note }
    }

    fn all_characters(&self) -> BTreeSet<u64> {
        (0..self.action.index()).collect()
    }
}

/// How rule predicates are evaluated: the direct enumerators, or the
/// brute-force versions used to audit pruning decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    Fast,
    Brute,
}

/// Characters of monomials with auxiliary numerator weight at most `cap`
/// and main numerator weight at least `m`.
fn member_characters(frame: &Frame, aux: &WeightVec, cap: i64, m: i64, ev: Evaluator) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if cap < 0 {
        return out;
    }
    let cap = cap as u64;
    let k = aux.numerators();
    let len = k.len();
    let mut visit = |e: &[u32]| {
        let mono = Monomial::new(e.to_vec()).expect("3..=5 variables");
        if numerator_weight(aux, &mono) <= cap && numerator_weight(&frame.weight, &mono) as i64 >= m {
            out.insert(character(&mono, &frame.action));
        }
    };
    match ev {
        Evaluator::Fast => {
            fn rec(k: &[u64], left: u64, e: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
                if e.len() == k.len() {
                    visit(e);
                    return;
                }
                let ki = k[e.len()];
                for x in 0..=left / ki {
                    e.push(x as u32);
                    rec(k, left - x * ki, e, visit);
                    e.pop();
                }
            }
            rec(k, cap, &mut Vec::with_capacity(len), &mut visit);
        }
        Evaluator::Brute => {
            let limits: Vec<u32> = k.iter().map(|&ki| (cap / ki) as u32).collect();
            let mut e = vec![0u32; len];
            loop {
                visit(&e);
                let mut i = 0;
                while i < len && e[i] == limits[i] {
                    e[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
                e[i] += 1;
            }
        }
    }
    out
}

fn window_ok(frame: &Frame, aux: &AuxSpec, m: i64, chi: u64, ev: Evaluator) -> bool {
    let n = frame.action.index();
    let residue = aux
        .weight
        .as_ref()
        .filter(|_| n > 1)
        .and_then(|w| w.admissible_multiplier(&frame.action))
        .map(|c| (c * chi) % n);
    let (a, ap) = (frame.a, aux.a_prime);
    match ev {
        Evaluator::Fast => {
            let mut c = AuxConstraint::new(ap, aux.mu);
            if let Some(r) = residue {
                c = c.with_residue(n, r);
            }
            c.first_solution(a, m).is_some()
        }
        Evaluator::Brute => (0..=ap.max(0) * m).any(|mp| {
            mp * a <= ap * m
                && q(mp, 1) >= aux.mu * m
                && residue.is_none_or(|r| mp.rem_euclid(n as i64) as u64 == r)
        }),
    }
}

/// Characters that survive one rule.
pub fn evaluate(rule: &PruneRule, frame: &Frame, m: i64, chars: &BTreeSet<u64>, ev: Evaluator) -> BTreeSet<u64> {
    let n = frame.action.index();
    match &rule.action {
        RuleAction::Character => chars
            .iter()
            .copied()
            .filter(|&chi| (frame.multiplier * chi) % n == m.rem_euclid(n as i64) as u64)
            .collect(),
        RuleAction::Window(list) => chars
            .iter()
            .copied()
            .filter(|&chi| list.iter().all(|aux| window_ok(frame, aux, m, chi, ev)))
            .collect(),
        RuleAction::Member(list) => {
            let mut live = chars.clone();
            for aux in list {
                let w = aux.weight.as_ref().expect("membership rules carry a weight");
                let cap = floor_q(q(aux.a_prime * m, frame.a));
                let ok = member_characters(frame, w, cap, m, ev);
                live.retain(|c| ok.contains(c));
            }
            live
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: &'static str,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pruned,
    Survivor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleTrace {
    #[serde(serialize_with = "ser_q")]
    pub ct: Q,
    pub params: FamilyParams,
    pub m: i64,
    pub trace: Vec<TraceStep>,
    pub status: Status,
}

fn fmt_chars(c: &BTreeSet<u64>) -> String {
    let v: Vec<String> = c.iter().map(u64::to_string).collect();
    format!("characters {{{}}}", v.join(","))
}

/// Run a pipeline on one candidate. Stops at the first rule that empties
/// the character set.
pub fn run_pipeline(frame: &Frame, rules: &[PruneRule], m: i64, ev: Evaluator) -> (Vec<TraceStep>, bool) {
    let mut chars = frame.all_characters();
    let mut steps = Vec::new();
    if let Some(note) = frame.note {
        steps.push(TraceStep { rule: "frame", outcome: note.to_string() });
    }
    for rule in rules {
        let next = evaluate(rule, frame, m, &chars, ev);
        let outcome = if next.is_empty() {
            "pruned".to_string()
        } else if next == chars {
            "pass".to_string()
        } else {
            fmt_chars(&next)
        };
        steps.push(TraceStep { rule: rule.name, outcome });
        if next.is_empty() {
            return (steps, false);
        }
        chars = next;
    }
    (steps, true)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub audited: u64,
    pub confirmed: u64,
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    #[serde(serialize_with = "ser_interval")]
    pub interval: IntervalSpec,
    pub family: String,
    pub survivors: Vec<RuleTrace>,
    pub pruned_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSummary>,
}

fn ser_interval<S: serde::Serializer>(x: &IntervalSpec, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&x.lo.to_string())?;
    seq.serialize_element(&x.hi.to_string())?;
    seq.end()
}

impl ClassifyReport {
    /// Distinct surviving thresholds, descending.
    pub fn values(&self) -> Vec<Q> {
        let set: BTreeSet<Q> = self.survivors.iter().map(|s| s.ct).collect();
        set.into_iter().rev().collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    /// Re-check every pruned candidate with the brute-force evaluators.
    pub audit: bool,
    /// Rule names in the order to apply them; unknown rules keep their
    /// pipeline position after the listed ones.
    pub order: Option<Vec<&'static str>>,
}

/// Enumerate every family member within bounds, every `m` with `a/m` in
/// the interval and `a ∤ m`, and run the family's pipeline.
pub fn classify_interval(
    tag: FamilyTag,
    spec: IntervalSpec,
    bounds: &FamilyBounds,
    opts: &ClassifyOptions,
) -> ClassifyReport {
    let members = enumerate_family(tag, bounds);
    let results: Vec<(Vec<RuleTrace>, u64, AuditSummary)> = members
        .par_iter()
        .map(|p| {
            let fr = frame(p);
            let mut rules = pipeline(&fr);
            if let Some(order) = &opts.order {
                let rank: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, n)| (*n, i)).collect();
                rules.sort_by_key(|r| rank.get(r.name).copied().unwrap_or(usize::MAX));
            }
            let mut survivors = Vec::new();
            let mut pruned = 0;
            let mut audit = AuditSummary::default();
            for m in spec.multiplicities(fr.a) {
                if m % fr.a == 0 {
                    continue;
                }
                let (trace, alive) = run_pipeline(&fr, &rules, m, Evaluator::Fast);
                if alive {
                    survivors.push(RuleTrace { ct: q(fr.a, m), params: *p, m, trace, status: Status::Survivor });
                } else {
                    pruned += 1;
                    if opts.audit {
                        audit.audited += 1;
                        let (_, brute_alive) = run_pipeline(&fr, &rules, m, Evaluator::Brute);
                        if brute_alive {
                            audit.disagreements.push(format!("{p} m={m}"));
                        } else {
                            audit.confirmed += 1;
                        }
                    }
                }
            }
            (survivors, pruned, audit)
        })
        .collect();
    let mut survivors = Vec::new();
    let mut pruned_count = 0;
    let mut audit = AuditSummary::default();
    for (s, p, a) in results {
        survivors.extend(s);
        pruned_count += p;
        audit.audited += a.audited;
        audit.confirmed += a.confirmed;
        audit.disagreements.extend(a.disagreements);
    }
    survivors.sort_by(|x, y| {
        y.ct.cmp(&x.ct)
            .then_with(|| x.params.order_key().cmp(&y.params.order_key()))
            .then_with(|| x.m.cmp(&y.m))
    });
    ClassifyReport {
        interval: spec,
        family: tag.name().to_string(),
        survivors,
        pruned_count,
        audit: opts.audit.then_some(audit),
    }
}
