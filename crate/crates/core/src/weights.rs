//! Cyclic quotient actions, blow-up weights and the classified weight families.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("index must be positive")]
    ZeroIndex,
    #[error("weight entries must be positive, got {0:?}")]
    NonPositive(Vec<u64>),
    #[error("unsupported length {0} (expected 3, 4 or 5)")]
    BadLength(usize),
    #[error("family invariant violated: {0}")]
    Invariant(String),
    #[error("no auxiliary weight: {0}")]
    Unsolvable(String),
    #[error("unknown family tag '{0}'")]
    UnknownTag(String),
}

/// The cyclic action `1/n (b_1, ..., b_k)`, residues reduced mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientAction {
    n: u64,
    b: Vec<u64>,
}

impl QuotientAction {
    pub fn new(n: u64, b: &[i64]) -> Result<Self, WeightError> {
        if n == 0 {
            return Err(WeightError::ZeroIndex);
        }
        if !(3..=5).contains(&b.len()) {
            return Err(WeightError::BadLength(b.len()));
        }
        let b = b.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect();
        Ok(QuotientAction { n, b })
    }

    /// The trivial action on `count` coordinates (index one).
    pub fn trivial(count: usize) -> Self {
        QuotientAction { n: 1, b: vec![0; count] }
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn residues(&self) -> &[u64] {
        &self.b
    }

    pub fn variable_count(&self) -> usize {
        self.b.len()
    }
}

impl fmt::Display for QuotientAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.n, parts.join(","))
    }
}

/// Weights `1/n (k_1, ..., k_len)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVec {
    k: Vec<u64>,
    n: u64,
}

impl WeightVec {
    pub fn new(k: Vec<u64>, n: u64) -> Result<Self, WeightError> {
        if n == 0 {
            return Err(WeightError::ZeroIndex);
        }
        if !(3..=5).contains(&k.len()) {
            return Err(WeightError::BadLength(k.len()));
        }
        if k.contains(&0) {
            return Err(WeightError::NonPositive(k));
        }
        Ok(WeightVec { k, n })
    }

    /// Build from signed entries, rejecting anything non-positive.
    pub fn from_signed(k: &[i64], n: i64) -> Result<Self, WeightError> {
        if k.iter().any(|&x| x <= 0) || n <= 0 {
            return Err(WeightError::NonPositive(
                k.iter().map(|&x| x.max(0) as u64).collect(),
            ));
        }
        Self::new(k.iter().map(|&x| x as u64).collect(), n as u64)
    }

    pub fn numerators(&self) -> &[u64] {
        &self.k
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn weight_of(&self, i: usize) -> Q {
        q(self.k[i] as i64, self.n as i64)
    }

    pub fn numerator_sum(&self) -> u64 {
        self.k.iter().sum()
    }

    /// The multiplier `c` with `k_i = c b_i (mod n)` for all `i`, if any.
    pub fn admissible_multiplier(&self, action: &QuotientAction) -> Option<u64> {
        if action.variable_count() != self.len() || action.index() != self.n {
            return None;
        }
        let n = self.n;
        (0..n).find(|&c| {
            self.k
                .iter()
                .zip(action.residues())
                .all(|(&k, &b)| k % n == c * b % n)
        })
    }

    pub fn is_admissible(&self, action: &QuotientAction) -> bool {
        self.admissible_multiplier(action).is_some()
    }

    /// Same weights with coordinates rearranged: entry `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightVec {
        let mut k = vec![0; self.k.len()];
        for (i, &p) in perm.iter().enumerate() {
            k[p] = self.k[i];
        }
        WeightVec { k, n: self.n }
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(u64::to_string).collect();
        if self.n == 1 {
            write!(f, "({})", parts.join(","))
        } else {
            write!(f, "1/{}({})", self.n, parts.join(","))
        }
    }
}

/// `w1 ⪰ mu · w2`: `k1_i/n1 >= mu · k2_i/n2` for every coordinate.
pub fn dominates(w1: &WeightVec, mu: Q, w2: &WeightVec) -> bool {
    w1.len() == w2.len() && (0..w1.len()).all(|i| w1.weight_of(i) >= mu * w2.weight_of(i))
}

/// Largest `mu` with `k'_i >= mu k_i` on numerators, the factor that bounds
/// the auxiliary multiplicity from below.
pub fn numerator_scaling(aux: &WeightVec, main: &WeightVec) -> Q {
    aux.k
        .iter()
        .zip(&main.k)
        .map(|(&a, &m)| q(a as i64, m as i64))
        .min()
        .expect("weights are non-empty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "sm")]
    Smooth,
    #[serde(rename = "cA")]
    CA,
    #[serde(rename = "cA/n")]
    CAn,
    #[serde(rename = "cD-1")]
    CD1,
    #[serde(rename = "cD-2")]
    CD2,
    #[serde(rename = "cD/2-1")]
    CD2q1,
    #[serde(rename = "cD/2-2")]
    CD2q2,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::Smooth,
        FamilyTag::CA,
        FamilyTag::CAn,
        FamilyTag::CD1,
        FamilyTag::CD2,
        FamilyTag::CD2q1,
        FamilyTag::CD2q2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Smooth => "sm",
            FamilyTag::CA => "cA",
            FamilyTag::CAn => "cA/n",
            FamilyTag::CD1 => "cD-1",
            FamilyTag::CD2 => "cD-2",
            FamilyTag::CD2q1 => "cD/2-1",
            FamilyTag::CD2q2 => "cD/2-2",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WeightError::UnknownTag(s.to_string()))
    }
}

/// Parameters of one member of a classified weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyParams {
    /// Weights `(1, a, b)` on a smooth point; `perm[i]` is the coordinate
    /// receiving the i-th entry of `(1, a, b)`.
    #[serde(rename = "sm")]
    Smooth { a: u64, b: u64, perm: [u8; 3] },
    #[serde(rename = "cA")]
    CA { r1: u64, r2: u64, a: u64, d: u64 },
    #[serde(rename = "cA/n")]
    CAn { n: u64, b: u64, r1: u64, r2: u64, a: u64, d: u64 },
    #[serde(rename = "cD-1")]
    CD1 { r: u64, a: u64, d: u64 },
    #[serde(rename = "cD-2")]
    CD2 { r: u64, a: u64, d: u64 },
    #[serde(rename = "cD/2-1")]
    CD2q1 { r: u64, a: u64, d: u64 },
    #[serde(rename = "cD/2-2")]
    CD2q2 { r: u64, a: u64, d: u64 },
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<(), WeightError> {
    if cond {
        Ok(())
    } else {
        Err(WeightError::Invariant(what()))
    }
}

impl FamilyParams {
    pub fn smooth(a: u64, b: u64) -> Self {
        FamilyParams::Smooth { a, b, perm: [0, 1, 2] }
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyParams::Smooth { .. } => FamilyTag::Smooth,
            FamilyParams::CA { .. } => FamilyTag::CA,
            FamilyParams::CAn { .. } => FamilyTag::CAn,
            FamilyParams::CD1 { .. } => FamilyTag::CD1,
            FamilyParams::CD2 { .. } => FamilyTag::CD2,
            FamilyParams::CD2q1 { .. } => FamilyTag::CD2q1,
            FamilyParams::CD2q2 { .. } => FamilyTag::CD2q2,
        }
    }

    /// The weighted discrepancy of the family's blow-up.
    pub fn discrepancy(&self) -> u64 {
        match *self {
            FamilyParams::Smooth { a, b, .. } => a + b,
            FamilyParams::CA { a, .. }
            | FamilyParams::CAn { a, .. }
            | FamilyParams::CD1 { a, .. }
            | FamilyParams::CD2 { a, .. }
            | FamilyParams::CD2q1 { a, .. }
            | FamilyParams::CD2q2 { a, .. } => a,
        }
    }

    pub fn d(&self) -> Option<u64> {
        match *self {
            FamilyParams::Smooth { .. } => None,
            FamilyParams::CA { d, .. }
            | FamilyParams::CAn { d, .. }
            | FamilyParams::CD1 { d, .. }
            | FamilyParams::CD2 { d, .. }
            | FamilyParams::CD2q1 { d, .. }
            | FamilyParams::CD2q2 { d, .. } => Some(d),
        }
    }

    /// Index of the centre.
    pub fn index(&self) -> u64 {
        match *self {
            FamilyParams::CAn { n, .. } => n,
            FamilyParams::CD2q1 { .. } | FamilyParams::CD2q2 { .. } => 2,
            _ => 1,
        }
    }

    /// The action of the family's normal form.
    pub fn action(&self) -> QuotientAction {
        match *self {
            FamilyParams::Smooth { .. } => QuotientAction::trivial(3),
            FamilyParams::CA { .. } | FamilyParams::CD1 { .. } => QuotientAction::trivial(4),
            FamilyParams::CD2 { .. } => QuotientAction::trivial(5),
            FamilyParams::CAn { n, b, .. } => {
                QuotientAction::new(n, &[1, -1, b as i64, 0]).expect("n >= 1")
            }
            FamilyParams::CD2q1 { .. } => QuotientAction::new(2, &[1, 1, 1, 0]).expect("valid"),
            FamilyParams::CD2q2 { .. } => {
                QuotientAction::new(2, &[1, 1, 1, 0, 1]).expect("valid")
            }
        }
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        match *self {
            FamilyParams::Smooth { a, b, perm } => {
                require(a >= 1 && a < b, || format!("need 1 <= a < b, got a={a}, b={b}"))?;
                require(a.gcd(&b) == 1, || format!("gcd(a,b) = {} != 1", a.gcd(&b)))?;
                let mut p = perm;
                p.sort_unstable();
                require(p == [0, 1, 2], || format!("{perm:?} is not a permutation"))
            }
            FamilyParams::CA { r1, r2, a, d } => {
                require(r1 >= 1 && r2 >= 1 && a >= 1, || "entries must be positive".into())?;
                require(d >= 2, || format!("need d >= 2, got {d}"))?;
                require(r1 + r2 == a * d, || format!("r1 + r2 = {} != a*d = {}", r1 + r2, a * d))?;
                require(r1.gcd(&a) == 1 && r2.gcd(&a) == 1, || "gcd(r_i, a) != 1".into())
            }
            FamilyParams::CAn { n, b, r1, r2, a, d } => {
                require(n >= 2, || format!("need n >= 2, got {n}"))?;
                require(b >= 1 && b < n && b.gcd(&n) == 1, || format!("b={b} not a unit mod {n}"))?;
                require(r1 >= 1 && r2 >= 1 && a >= 1 && d >= 1, || "entries must be positive".into())?;
                require(r1 + r2 == a * d * n, || {
                    format!("r1 + r2 = {} != a*d*n = {}", r1 + r2, a * d * n)
                })?;
                require(a % n == (b * r1) % n, || format!("a = {a} != b*r1 (mod {n})"))?;
                let (s1, s2) = self.cyclic_quotients().expect("cA/n");
                require(crate::arith::gcd(s1, r1 as i64) == 1, || {
                    format!("gcd(s1, r1) = gcd({s1}, {r1}) != 1")
                })?;
                require(crate::arith::gcd(s2, r2 as i64) == 1, || {
                    format!("gcd(s2, r2) = gcd({s2}, {r2}) != 1")
                })
            }
            FamilyParams::CD1 { r, a, d } => {
                require(r >= 1, || "r must be positive".into())?;
                require(2 * r + 1 == a * d, || format!("2r+1 = {} != a*d = {}", 2 * r + 1, a * d))?;
                require(d >= 3, || format!("need d >= 3, got {d}"))?;
                require(a % 2 == 1, || format!("a = {a} must be odd"))
            }
            FamilyParams::CD2 { r, a, d } => {
                require(r >= 1 && a >= 1, || "entries must be positive".into())?;
                require(r + 1 == a * d, || format!("r+1 = {} != a*d = {}", r + 1, a * d))?;
                require(d >= 2, || format!("need d >= 2, got {d}"))
            }
            FamilyParams::CD2q1 { r, a, d } => {
                require(r >= 1 && d >= 1, || "entries must be positive".into())?;
                require(r + 1 == a * d, || format!("r+1 = {} != a*d = {}", r + 1, a * d))?;
                require(a % 2 == 1 && r % 2 == 1, || format!("a = {a} and r = {r} must be odd"))
            }
            FamilyParams::CD2q2 { r, a, d } => {
                require(r >= 1 && a >= 1, || "entries must be positive".into())?;
                require(r + 2 == a * d, || format!("r+2 = {} != a*d = {}", r + 2, a * d))
            }
        }
    }

    /// `(s1, s2) = ((a - b r1)/n, (a + b r2)/n)` for the cA/n family.
    pub fn cyclic_quotients(&self) -> Option<(i64, i64)> {
        match *self {
            FamilyParams::CAn { n, b, r1, r2, a, .. } => {
                let (n, b, r1, r2, a) = (n as i64, b as i64, r1 as i64, r2 as i64, a as i64);
                Some(((a - b * r1) / n, (a + b * r2) / n))
            }
            _ => None,
        }
    }

    /// The blow-up weight of the family member.
    pub fn family_weight(&self) -> Result<WeightVec, WeightError> {
        self.validate()?;
        let w = match *self {
            FamilyParams::Smooth { a, b, perm } => {
                let perm: Vec<usize> = perm.iter().map(|&p| p as usize).collect();
                WeightVec::new(vec![1, a, b], 1)?.permuted(&perm)
            }
            FamilyParams::CA { r1, r2, a, .. } => WeightVec::new(vec![r1, r2, a, 1], 1)?,
            FamilyParams::CAn { n, r1, r2, a, .. } => WeightVec::new(vec![r1, r2, a, n], n)?,
            FamilyParams::CD1 { r, a, .. } => WeightVec::new(vec![r + 1, r, a, 1], 1)?,
            FamilyParams::CD2 { r, a, .. } => WeightVec::new(vec![r + 1, r, a, 1, r + 2], 1)?,
            FamilyParams::CD2q1 { r, a, .. } => WeightVec::new(vec![r + 2, r, a, 2], 2)?,
            FamilyParams::CD2q2 { r, a, .. } => WeightVec::new(vec![r + 2, r, a, 2, r + 4], 2)?,
        };
        Ok(w)
    }

    /// Sort key implementing the enumeration order `(a, d, r1, n, b)`.
    pub fn order_key(&self) -> (u64, u64, u64, u64, u64) {
        match *self {
            FamilyParams::Smooth { a, b, .. } => (a, b, 0, 0, 0),
            FamilyParams::CA { r1, a, d, .. } => (a, d, r1, 0, 0),
            FamilyParams::CAn { n, b, r1, a, d, .. } => (a, d, r1, n, b),
            FamilyParams::CD1 { r, a, d }
            | FamilyParams::CD2 { r, a, d }
            | FamilyParams::CD2q1 { r, a, d }
            | FamilyParams::CD2q2 { r, a, d } => (a, d, r, 0, 0),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyParams::Smooth { a, b, .. } => write!(f, "sm(a={a}, b={b})"),
            FamilyParams::CA { r1, r2, a, d } => write!(f, "cA(r1={r1}, r2={r2}, a={a}, d={d})"),
            FamilyParams::CAn { n, b, r1, r2, a, d } => {
                write!(f, "cA/n(n={n}, b={b}, r1={r1}, r2={r2}, a={a}, d={d})")
            }
            FamilyParams::CD1 { r, a, d }
            | FamilyParams::CD2 { r, a, d }
            | FamilyParams::CD2q1 { r, a, d }
            | FamilyParams::CD2q2 { r, a, d } => {
                write!(f, "{}(r={r}, a={a}, d={d})", self.tag())
            }
        }
    }
}

/// Enumeration limits. For the smooth family `a_max` bounds the discrepancy
/// `a + b`; elsewhere it bounds `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBounds {
    pub a_max: u64,
    pub d_max: u64,
    pub n_max: u64,
    /// Smallest weighted discrepancy to emit (5 for classification runs).
    pub min_discrepancy: u64,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        FamilyBounds { a_max: 25, d_max: 6, n_max: 6, min_discrepancy: 1 }
    }
}

impl FamilyBounds {
    pub fn classification(a_max: u64, d_max: u64, n_max: u64) -> Self {
        FamilyBounds { a_max, d_max, n_max, min_discrepancy: 5 }
    }
}

/// Every admissible family member within `bounds`, in lexicographic order of
/// `(a, d, r1[, n, b])` (`(a, b)` for the smooth family).
pub fn enumerate_family(tag: FamilyTag, bounds: &FamilyBounds) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    let amin = bounds.min_discrepancy.max(1);
    match tag {
        FamilyTag::Smooth => {
            for a in 1..=bounds.a_max {
                for b in a + 1..=bounds.a_max.saturating_sub(a) {
                    if a.gcd(&b) == 1 && a + b >= amin {
                        out.push(FamilyParams::smooth(a, b));
                    }
                }
            }
        }
        FamilyTag::CA => {
            for a in amin..=bounds.a_max {
                for d in 2..=bounds.d_max {
                    for r1 in 1..a * d {
                        out.push(FamilyParams::CA { r1, r2: a * d - r1, a, d });
                    }
                }
            }
        }
        FamilyTag::CAn => {
            for a in amin..=bounds.a_max {
                for d in 1..=bounds.d_max {
                    for n in 2..=bounds.n_max {
                        for b in (1..n).filter(|b| b.gcd(&n) == 1) {
                            // a = b r1 (mod n) pins r1 to one residue class.
                            let binv = crate::arith::mod_inverse(b as i64, n as i64)
                                .expect("b is a unit") as u64;
                            let r0 = (a % n * binv) % n;
                            let first = if r0 == 0 { n } else { r0 };
                            for r1 in (first..a * d * n).step_by(n as usize) {
                                out.push(FamilyParams::CAn { n, b, r1, r2: a * d * n - r1, a, d });
                            }
                        }
                    }
                }
            }
        }
        FamilyTag::CD1 => {
            for a in amin..=bounds.a_max {
                for d in 3..=bounds.d_max {
                    if (a * d) % 2 == 1 {
                        out.push(FamilyParams::CD1 { r: (a * d - 1) / 2, a, d });
                    }
                }
            }
        }
        FamilyTag::CD2 => {
            for a in amin..=bounds.a_max {
                for d in 2..=bounds.d_max {
                    out.push(FamilyParams::CD2 { r: a * d - 1, a, d });
                }
            }
        }
        FamilyTag::CD2q1 => {
            for a in amin..=bounds.a_max {
                for d in 1..=bounds.d_max {
                    if a * d >= 2 {
                        out.push(FamilyParams::CD2q1 { r: a * d - 1, a, d });
                    }
                }
            }
        }
        FamilyTag::CD2q2 => {
            for a in amin..=bounds.a_max {
                for d in 1..=bounds.d_max {
                    if a * d >= 3 {
                        out.push(FamilyParams::CD2q2 { r: a * d - 2, a, d });
                    }
                }
            }
        }
    }
    // The multiplier must be a unit so that the weight has index exactly n.
    out.retain(|p| {
        p.validate().is_ok()
            && p.family_weight()
                .ok()
                .and_then(|w| w.admissible_multiplier(&p.action()))
                .is_some_and(|c| c.gcd(&p.index()) == 1)
    });
    out.sort_by_key(FamilyParams::order_key);
    out
}

/// The auxiliary weight `w^i_j` comparing member `params_i` against a member
/// of the same family whose structural integer is `d_j`.
pub fn auxiliary_weight(params_i: &FamilyParams, d_j: u64) -> Result<WeightVec, WeightError> {
    params_i.validate()?;
    let unsolvable = |msg: String| Err(WeightError::Unsolvable(msg));
    match *params_i {
        FamilyParams::Smooth { .. } => unsolvable("smooth points have no auxiliary weight".into()),
        FamilyParams::CA { r1, a, .. } => {
            if a * d_j <= r1 {
                return unsolvable(format!("a_i*d_j - r1 = {}*{} - {} <= 0", a, d_j, r1));
            }
            WeightVec::new(vec![r1, a * d_j - r1, a, 1], 1)
        }
        FamilyParams::CAn { n, r1, a, .. } => {
            if a * d_j * n <= r1 {
                return unsolvable(format!("a_i*d_j*n - r1 <= 0 for d_j = {d_j}"));
            }
            WeightVec::new(vec![r1, a * d_j * n - r1, a, n], n)
        }
        FamilyParams::CD1 { a, .. } => {
            if (a * d_j).is_multiple_of(2) || a * d_j < 3 {
                return unsolvable(format!("2s+1 = {} has no positive solution", a * d_j));
            }
            let s = (a * d_j - 1) / 2;
            WeightVec::new(vec![s + 1, s, a, 1], 1)
        }
        FamilyParams::CD2 { a, .. } => {
            if a * d_j < 2 {
                return unsolvable(format!("s+1 = {} has no positive solution", a * d_j));
            }
            let s = a * d_j - 1;
            WeightVec::new(vec![s + 1, s, a, 1, s + 2], 1)
        }
        FamilyParams::CD2q1 { a, .. } => {
            if a * d_j < 2 || (a * d_j - 1).is_multiple_of(2) {
                return unsolvable(format!("s+1 = {} needs s odd and positive", a * d_j));
            }
            let s = a * d_j - 1;
            WeightVec::new(vec![s + 2, s, a, 2], 2)
        }
        FamilyParams::CD2q2 { a, .. } => {
            if a * d_j < 3 || (a * d_j).is_multiple_of(2) {
                return unsolvable(format!("s+2 = {} needs s odd and positive", a * d_j));
            }
            let s = a * d_j - 2;
            WeightVec::new(vec![s + 2, s, a, 2, s + 4], 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: &[u64], n: u64) -> WeightVec {
        WeightVec::new(k.to_vec(), n).unwrap()
    }

    #[test]
    fn family_weights_match_shapes() {
        let ca = FamilyParams::CA { r1: 3, r2: 5, a: 4, d: 2 };
        assert_eq!(ca.family_weight().unwrap(), w(&[3, 5, 4, 1], 1));
        let can = FamilyParams::CAn { n: 2, b: 1, r1: 3, r2: 11, a: 7, d: 1 };
        assert_eq!(can.family_weight().unwrap(), w(&[3, 11, 7, 2], 2));
        let q2 = FamilyParams::CD2q2 { r: 8, a: 5, d: 2 };
        assert_eq!(q2.family_weight().unwrap(), w(&[10, 8, 5, 2, 12], 2));
    }

    #[test]
    fn invalid_params_are_reported() {
        let bad = FamilyParams::CA { r1: 2, r2: 6, a: 4, d: 2 };
        let err = bad.family_weight().unwrap_err();
        assert!(err.to_string().contains("gcd"), "{err}");
        let bad = FamilyParams::CD1 { r: 5, a: 11, d: 1 };
        assert!(bad.validate().is_err());
        let bad = FamilyParams::CAn { n: 2, b: 1, r1: 2, r2: 11, a: 7, d: 1 };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn domination() {
        assert!(dominates(&w(&[1, 5, 3, 2], 2), q(1, 3), &w(&[3, 11, 7, 2], 2)));
        let x = w(&[4, 7, 1, 3], 5);
        assert!(dominates(&x, q(1, 1), &x));
        assert!(!dominates(&w(&[1, 1, 1, 1], 1), q(2, 1), &w(&[1, 1, 1, 1], 1)));
    }

    #[test]
    fn scaling_is_the_best_domination_factor() {
        let aux = w(&[1, 5, 3, 2], 2);
        let main = w(&[3, 11, 7, 2], 2);
        let mu = numerator_scaling(&aux, &main);
        assert_eq!(mu, q(1, 3));
        assert!(dominates(&aux, mu, &main));
        assert!(!dominates(&aux, mu + q(1, 1000), &main));
    }

    #[test]
    fn enumerate_ca_slice() {
        let b = FamilyBounds { a_max: 4, d_max: 2, n_max: 1, min_discrepancy: 4 };
        let got: Vec<_> = enumerate_family(FamilyTag::CA, &b);
        let want: Vec<_> = [(1, 7), (3, 5), (5, 3), (7, 1)]
            .iter()
            .map(|&(r1, r2)| FamilyParams::CA { r1, r2, a: 4, d: 2 })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn enumerate_cd1_forces_odd_d() {
        let b = FamilyBounds { a_max: 5, d_max: 7, n_max: 1, min_discrepancy: 5 };
        let got = enumerate_family(FamilyTag::CD1, &b);
        let rd: Vec<_> = got
            .iter()
            .map(|p| match *p {
                FamilyParams::CD1 { r, d, .. } => (d, r),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(rd, vec![(3, 7), (5, 12), (7, 17)]);
    }

    #[test]
    fn enumerate_smooth_pairs() {
        let b = FamilyBounds { a_max: 5, d_max: 1, n_max: 1, min_discrepancy: 1 };
        let got: Vec<_> = enumerate_family(FamilyTag::Smooth, &b)
            .into_iter()
            .map(|p| match p {
                FamilyParams::Smooth { a, b, .. } => (a, b),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![(1, 2), (1, 3), (1, 4), (2, 3)]);
    }

    #[test]
    fn can_weights_are_admissible() {
        let b = FamilyBounds { a_max: 9, d_max: 2, n_max: 5, min_discrepancy: 1 };
        let all = enumerate_family(FamilyTag::CAn, &b);
        assert!(!all.is_empty());
        for p in all {
            let w = p.family_weight().unwrap();
            let FamilyParams::CAn { r1, .. } = p else { unreachable!() };
            // x carries character 1, so the multiplier is r1 mod n.
            assert_eq!(w.admissible_multiplier(&p.action()), Some(r1 % w.index()));
        }
    }

    #[test]
    fn auxiliary_weights() {
        let ca = FamilyParams::CA { r1: 3, r2: 5, a: 4, d: 2 };
        assert_eq!(auxiliary_weight(&ca, 3).unwrap(), w(&[3, 9, 4, 1], 1));
        let cd = FamilyParams::CD1 { r: 7, a: 5, d: 3 };
        assert_eq!(auxiliary_weight(&cd, 5).unwrap(), w(&[13, 12, 5, 1], 1));
        let can = FamilyParams::CAn { n: 2, b: 1, r1: 3, r2: 11, a: 7, d: 1 };
        assert_eq!(auxiliary_weight(&can, 2).unwrap(), w(&[3, 25, 7, 2], 2));
        let cd2 = FamilyParams::CD2 { r: 9, a: 5, d: 2 };
        assert_eq!(auxiliary_weight(&cd2, 3).unwrap(), w(&[15, 14, 5, 1, 16], 1));
        assert!(auxiliary_weight(&cd, 4).is_err());
        assert!(auxiliary_weight(&FamilyParams::smooth(2, 3), 2).is_err());
    }

    #[test]
    fn tags_round_trip_through_names() {
        for t in FamilyTag::ALL {
            assert_eq!(t.name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("cE".parse::<FamilyTag>().is_err());
    }
}
