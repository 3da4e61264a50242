//! Upper bounds for canonical thresholds, the Brieskorn closed form, the
//! floor/ceiling engine for auxiliary valuations, and the integer splits used
//! by the case analyses.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ceil_q, floor_q, mod_inverse, q, Q};
use crate::blowup::{
    certify_irreducible, discrepancy, multiplicity, CertificateKind, Certification, ModelTag,
    SingularityPresentation,
};
use crate::poly::{is_semi_invariant, PolySupport};
use crate::weights::WeightVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("formula not applicable: c = {c} < lcm(a, b) = {lcm}")]
    NotApplicable { c: u64, lcm: u64 },
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("no certified weight within the bound ({0})")]
    NoCertifiedWeight(SearchStats),
    #[error("outside the construction's domain: {0}")]
    Domain(String),
}

/// `1/a + 1/b` for `x^a + y^b + z^c` when `c >= lcm(a, b)`.
pub fn brieskorn_ct(a: u64, b: u64, c: u64) -> Result<Q, ThresholdError> {
    if !(2 <= a && a <= b && b <= c) {
        return Err(ThresholdError::BadInput(format!("need 2 <= a <= b <= c, got ({a},{b},{c})")));
    }
    let lcm = a.lcm(&b);
    if c < lcm {
        return Err(ThresholdError::NotApplicable { c, lcm });
    }
    Ok(q(1, a as i64) + q(1, b as i64))
}

/// Counters describing a weight search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub examined: u64,
    pub certified: u64,
    pub refused: u64,
    pub nonpositive: u64,
}

impl SearchStats {
    fn merge(self, o: SearchStats) -> SearchStats {
        SearchStats {
            examined: self.examined + o.examined,
            certified: self.certified + o.certified,
            refused: self.refused + o.refused,
            nonpositive: self.nonpositive + o.nonpositive,
        }
    }
}

impl std::fmt::Display for SearchStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "examined {}, certified {}, refused {}, non-positive discrepancy {}",
            self.examined, self.certified, self.refused, self.nonpositive
        )
    }
}

/// Result of [`ct_upper_bound`]. `weight`, `discrepancy` and `multiplicity`
/// describe the best certified blow-up; `value` is `a/m` unless `clamped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CtCandidate {
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub weight: WeightVec,
    pub family: String,
    pub certificate: CertificateKind,
    pub discrepancy: i64,
    pub multiplicity: u64,
    pub clamped: bool,
    pub exact: bool,
    pub stats: SearchStats,
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Calls `visit` on every positive vector of the given length whose entries
/// sum to at most `bound` and whose first entry is `first`.
fn for_each_vector(len: usize, first: u64, bound: u64, visit: &mut impl FnMut(&[u64])) {
    fn rec(k: &mut Vec<u64>, len: usize, left: u64, visit: &mut impl FnMut(&[u64])) {
        if k.len() == len {
            visit(k);
            return;
        }
        let slots_after = (len - k.len() - 1) as u64;
        if left < slots_after + 1 {
            return;
        }
        for v in 1..=left - slots_after {
            k.push(v);
            rec(k, len, left - v, visit);
            k.pop();
        }
    }
    let mut k = vec![first];
    rec(&mut k, len, bound - first, visit);
}

#[derive(Clone)]
struct Best {
    value: Q,
    weight: WeightVec,
    cert: CertificateKind,
    a: i64,
    m: u64,
}

fn better(x: Option<Best>, y: Option<Best>) -> Option<Best> {
    match (x, y) {
        (Some(x), Some(y)) => {
            if (y.value, y.weight.numerators()) < (x.value, x.weight.numerators()) {
                Some(y)
            } else {
                Some(x)
            }
        }
        (x, None) => x,
        (None, y) => y,
    }
}

fn is_brieskorn_exact(f: &PolySupport, value: Q) -> bool {
    if f.len() != 3 || f.variable_count() != 3 {
        return false;
    }
    let mut pure = [0u64; 3];
    for m in f.iter() {
        let nz: Vec<usize> = (0..3).filter(|&i| m.exponent(i) > 0).collect();
        if nz.len() != 1 || pure[nz[0]] != 0 {
            return false;
        }
        pure[nz[0]] = u64::from(m.exponent(nz[0]));
    }
    pure.sort_unstable();
    matches!(brieskorn_ct(pure[0], pure[1], pure[2]), Ok(v) if v == value)
}

/// Minimise `a(w)/m(w)` over certified weights with numerator sum at most
/// `bound`, then clamp at 1. The result is an upper bound for the canonical
/// threshold of `(X, S)` at the point.
pub fn ct_upper_bound(
    s: &SingularityPresentation,
    f: &PolySupport,
    bound: u64,
) -> Result<CtCandidate, ThresholdError> {
    let dim = s.ambient_dimension();
    if f.variable_count() != dim {
        return Err(ThresholdError::BadInput(format!(
            "divisor has {} variables, ambient space has {dim}",
            f.variable_count()
        )));
    }
    if f.iter().any(|m| m.degree() == 0) {
        return Err(ThresholdError::BadInput("divisor does not pass through the point".into()));
    }
    if !is_semi_invariant(f, s.action()) {
        return Err(ThresholdError::BadInput(format!("divisor is not semi-invariant under {}", s.action())));
    }
    if bound < dim as u64 {
        return Err(ThresholdError::BadInput(format!("bound {bound} is below the dimension {dim}")));
    }
    let n = s.index();
    let firsts: Vec<u64> = (1..=bound - (dim as u64 - 1)).collect();
    let (best, stats) = firsts
        .par_iter()
        .map(|&first| {
            let mut stats = SearchStats::default();
            let mut best: Option<Best> = None;
            for_each_vector(dim, first, bound, &mut |k| {
                let Ok(w) = WeightVec::new(k.to_vec(), n) else { return };
                if n > 1 && !w.is_admissible(s.action()) {
                    return;
                }
                stats.examined += 1;
                let cert = match certify_irreducible(s, &w) {
                    Certification::Certified(c) => c,
                    Certification::Refused(_) => {
                        stats.refused += 1;
                        return;
                    }
                };
                stats.certified += 1;
                let Ok(a) = discrepancy(s, &w) else {
                    stats.nonpositive += 1;
                    return;
                };
                let m = multiplicity(s, &w, f).expect("checked above");
                let cand = Best { value: q(a, m as i64), weight: w, cert, a, m };
                best = better(best.take(), Some(cand));
            });
            (best, stats)
        })
        .reduce(|| (None, SearchStats::default()), |(b1, s1), (b2, s2)| (better(b1, b2), s1.merge(s2)));
    let best = best.ok_or(ThresholdError::NoCertifiedWeight(stats))?;
    let clamped = best.value > q(1, 1);
    let value = if clamped { q(1, 1) } else { best.value };
    let family = match s.tag() {
        ModelTag::Family(t) => t.name().to_string(),
        ModelTag::Smooth => "sm".to_string(),
        ModelTag::Index1 => "generic".to_string(),
    };
    let exact = s.tag() == ModelTag::Smooth && !clamped && is_brieskorn_exact(f, value);
    Ok(CtCandidate {
        value,
        weight: best.weight,
        family,
        certificate: best.cert,
        discrepancy: best.a,
        multiplicity: best.m,
        clamped,
        exact,
        stats,
    })
}

/// An auxiliary valuation bound: `ceil(mu m) <= m' <= floor(a_prime m / a)`,
/// optionally with `m' = value (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuxConstraint {
    pub a_prime: i64,
    #[serde(serialize_with = "ser_q")]
    pub mu: Q,
    pub residue: Option<Residue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub modulus: u64,
    pub value: u64,
}

impl AuxConstraint {
    pub fn new(a_prime: i64, mu: Q) -> Self {
        AuxConstraint { a_prime, mu, residue: None }
    }

    pub fn with_residue(mut self, modulus: u64, value: u64) -> Self {
        if modulus > 1 {
            self.residue = Some(Residue { modulus, value: value % modulus });
        }
        self
    }

    /// `(lower, upper)` window for `m'` before the residue is applied.
    pub fn window(&self, a: i64, m: i64) -> (i64, i64) {
        (ceil_q(self.mu * m), floor_q(q(self.a_prime * m, a)))
    }

    /// The smallest admissible `m'`, if any.
    pub fn first_solution(&self, a: i64, m: i64) -> Option<i64> {
        let (lo, hi) = self.window(a, m);
        let mut x = lo;
        if let Some(r) = self.residue {
            let md = r.modulus as i64;
            x += (r.value as i64 - x).rem_euclid(md);
        }
        (x <= hi).then_some(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintTrace {
    pub lower: i64,
    pub upper: i64,
    pub solution: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// Index of the first constraint without an integer solution.
    pub violated: Option<usize>,
    pub trace: Vec<ConstraintTrace>,
}

/// Whether every constraint admits an integer `m'`.
pub fn feasible_m(a: i64, m: i64, cs: &[AuxConstraint]) -> Feasibility {
    assert!(a >= 1 && m >= 1, "feasible_m needs a, m >= 1");
    let trace: Vec<ConstraintTrace> = cs
        .iter()
        .map(|c| {
            let (lower, upper) = c.window(a, m);
            ConstraintTrace { lower, upper, solution: c.first_solution(a, m) }
        })
        .collect();
    let violated = trace.iter().position(|t| t.solution.is_none());
    Feasibility { feasible: violated.is_none(), violated, trace }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BezoutSplit {
    pub s: i64,
    pub t: i64,
    pub s_bar: i64,
    pub t_bar: i64,
}

/// `a t = b s + 1`, `a t̄ = b s̄ - 1` with `0 < s < a`.
pub fn bezout_split(a: i64, b: i64) -> Result<BezoutSplit, ThresholdError> {
    if a == 1 {
        return Err(ThresholdError::Domain("a = 1 has no split; use the (1,1,b-1) weight".into()));
    }
    if !(2 <= a && a < b) || a.gcd(&b) != 1 {
        return Err(ThresholdError::BadInput(format!("need 2 <= a < b coprime, got ({a},{b})")));
    }
    let s = (-mod_inverse(b, a).expect("coprime")).rem_euclid(a);
    let t = (b * s + 1) / a;
    Ok(BezoutSplit { s, t, s_bar: a - s, t_bar: b - t })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaSplit {
    pub a1: i64,
    pub a2: i64,
    pub s1_star: i64,
    pub s2_star: i64,
}

/// `a1 + a2 = a` with `1 + a_i r_i = s_i* a`.
pub fn ca_split(r1: i64, r2: i64, a: i64) -> Result<CaSplit, ThresholdError> {
    if a < 2 || r1 < 1 || r2 < 1 || r1.gcd(&a) != 1 || r2.gcd(&a) != 1 {
        return Err(ThresholdError::BadInput(format!("need a >= 2 and r_i >= 1 coprime to a, got ({r1},{r2},{a})")));
    }
    if (r1 + r2) % a != 0 {
        return Err(ThresholdError::BadInput(format!("a = {a} does not divide r1 + r2 = {}", r1 + r2)));
    }
    let a1 = (-mod_inverse(r1, a).expect("coprime")).rem_euclid(a);
    let a2 = a - a1;
    let split = CaSplit { a1, a2, s1_star: (1 + a1 * r1) / a, s2_star: (1 + a2 * r2) / a };
    let d = (r1 + r2) / a;
    debug_assert_eq!(
        r2 * split.s1_star * a + r1 * split.s2_star * a,
        a * d + a * r1 * r2
    );
    Ok(split)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaData {
    pub s1: i64,
    pub s2: i64,
    pub q1: i64,
    pub q2: i64,
    pub s1_star: i64,
    pub s2_star: i64,
    pub delta1: i64,
    pub delta2: i64,
}

/// Solve `1 = q r + s* s` with `0 <= s* < r`.
fn split_unit(s: i64, r: i64) -> Result<(i64, i64), ThresholdError> {
    let s_star = mod_inverse(s, r)
        .ok_or_else(|| ThresholdError::BadInput(format!("gcd({s}, {r}) != 1")))?;
    Ok(((1 - s_star * s) / r, s_star))
}

pub fn delta_data(n: i64, b: i64, r1: i64, r2: i64, a: i64) -> Result<DeltaData, ThresholdError> {
    if n < 2 || r1 < 1 || r2 < 1 || a < 1 || b.gcd(&n) != 1 {
        return Err(ThresholdError::BadInput(format!("bad cA/n data ({n},{b},{r1},{r2},{a})")));
    }
    if (a - b * r1) % n != 0 || (a + b * r2) % n != 0 {
        return Err(ThresholdError::BadInput("a - b r1 and a + b r2 must be divisible by n".into()));
    }
    let (s1, s2) = ((a - b * r1) / n, (a + b * r2) / n);
    let (q1, s1_star) = split_unit(s1, r1)?;
    let (q2, s2_star) = split_unit(s2, r2)?;
    let delta1 = -n * q1 + b * s1_star;
    let delta2 = -n * q2 - b * s2_star;
    let dd = DeltaData { s1, s2, q1, q2, s1_star, s2_star, delta1, delta2 };
    if delta1 * r1 + n != a * s1_star || delta2 * r2 + n != a * s2_star {
        return Err(ThresholdError::BadInput(format!("identities fail for {dd:?}; is r1 + r2 = a d n?")));
    }
    if delta1 <= 0 && delta2 <= 0 {
        return Err(ThresholdError::BadInput(format!("neither delta is positive: {dd:?}")));
    }
    Ok(dd)
}
