//! Weighted discrepancies, multiplicities, initial forms and irreducibility
//! certificates for weighted blow-ups of (quotients of) affine space.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q, Q};
use crate::poly::{is_semi_invariant, Monomial, PolySupport};
use crate::weights::{FamilyParams, FamilyTag, QuotientAction, WeightVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("weight has {weight} entries but the ambient space has {ambient} coordinates")]
    LengthMismatch { weight: usize, ambient: usize },
    #[error("weight index {weight} differs from the action index {action}")]
    IndexMismatch { weight: u64, action: u64 },
    #[error("discrepancy {0} is not positive")]
    NonPositiveDiscrepancy(i64),
    #[error("divisor is not semi-invariant under {0}")]
    NotSemiInvariant(String),
    #[error("presentation invalid: {0}")]
    Invalid(String),
}

/// Kind of local model a presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelTag {
    /// A smooth point of a threefold, coordinates `x, y, z`.
    Smooth,
    /// An arbitrary index-one hypersurface singularity in `x, y, z, u`.
    Index1,
    /// A normal form from one of the classified families.
    Family(FamilyTag),
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelTag::Smooth => f.write_str("sm"),
            ModelTag::Index1 => f.write_str("index1"),
            ModelTag::Family(t) => write!(f, "{t}"),
        }
    }
}

/// A local model `(equations = 0) ⊂ C^k / action`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityPresentation {
    tag: ModelTag,
    equations: Vec<PolySupport>,
    action: QuotientAction,
    d: Option<u64>,
}

fn support(count: usize, exps: &[&[u32]]) -> PolySupport {
    PolySupport::from_exponents(count, exps).expect("valid support")
}

impl SingularityPresentation {
    pub fn smooth() -> Self {
        SingularityPresentation {
            tag: ModelTag::Smooth,
            equations: Vec::new(),
            action: QuotientAction::trivial(3),
            d: None,
        }
    }

    /// An index-one hypersurface `(phi = 0) ⊂ C^4`.
    pub fn index1(phi: PolySupport) -> Result<Self, BlowupError> {
        Self::new(ModelTag::Index1, vec![phi], QuotientAction::trivial(4), None)
    }

    pub fn new(
        tag: ModelTag,
        equations: Vec<PolySupport>,
        action: QuotientAction,
        d: Option<u64>,
    ) -> Result<Self, BlowupError> {
        let s = SingularityPresentation { tag, equations, action, d };
        s.validate()?;
        Ok(s)
    }

    /// The minimal normal form of a family member; every listed monomial
    /// attains the family weight of its equation.
    pub fn normal_form(p: &FamilyParams) -> Result<Self, BlowupError> {
        p.validate().map_err(|e| BlowupError::Invalid(e.to_string()))?;
        let d = p.d();
        let eqs = match *p {
            FamilyParams::Smooth { .. } => Vec::new(),
            FamilyParams::CA { a, d, .. } => {
                let (d, ad) = (d as u32, (a * d) as u32);
                vec![support(4, &[&[1, 1, 0, 0], &[0, 0, d, 0], &[0, 0, 0, ad]])]
            }
            FamilyParams::CAn { n, a, d, .. } => {
                let (dn, ad) = ((d * n) as u32, (a * d) as u32);
                vec![support(4, &[&[1, 1, 0, 0], &[0, 0, dn, 0], &[0, 0, 0, ad]])]
            }
            FamilyParams::CD1 { d, .. } => {
                vec![support(4, &[&[2, 0, 0, 0], &[0, 2, 0, 1], &[0, 0, d as u32, 0]])]
            }
            FamilyParams::CD2 { d, .. } | FamilyParams::CD2q2 { d, .. } => {
                let d = d as u32;
                vec![
                    support(5, &[&[2, 0, 0, 0, 0], &[0, 1, 0, 0, 1], &[0, 0, 2 * d, 0, 0]]),
                    support(5, &[&[0, 1, 0, 1, 0], &[0, 0, d, 0, 0], &[0, 0, 0, 0, 1]]),
                ]
            }
            FamilyParams::CD2q1 { d, .. } => {
                let d = d as u32;
                vec![support(4, &[&[2, 0, 0, 0], &[0, 2, 0, 1], &[0, 0, 2 * d, 0]])]
            }
        };
        let tag = match p.tag() {
            FamilyTag::Smooth => ModelTag::Smooth,
            t => ModelTag::Family(t),
        };
        Self::new(tag, eqs, p.action(), d)
    }

    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn equations(&self) -> &[PolySupport] {
        &self.equations
    }

    pub fn action(&self) -> &QuotientAction {
        &self.action
    }

    pub fn d(&self) -> Option<u64> {
        self.d
    }

    pub fn ambient_dimension(&self) -> usize {
        self.action.variable_count()
    }

    pub fn index(&self) -> u64 {
        self.action.index()
    }

    fn validate(&self) -> Result<(), BlowupError> {
        let bad = |m: String| Err(BlowupError::Invalid(m));
        let dim = self.ambient_dimension();
        for e in &self.equations {
            if e.variable_count() != dim {
                return bad(format!("equation {e} does not live in {dim} variables"));
            }
            if !is_semi_invariant(e, &self.action) {
                return bad(format!("equation {e} is not semi-invariant under {}", self.action));
            }
        }
        let (want_eqs, want_dim) = match self.tag {
            ModelTag::Smooth => (0, 3),
            ModelTag::Index1 => (1, 4),
            ModelTag::Family(FamilyTag::Smooth) => return bad("use ModelTag::Smooth".into()),
            ModelTag::Family(FamilyTag::CD2 | FamilyTag::CD2q2) => (2, 5),
            ModelTag::Family(_) => (1, 4),
        };
        if self.equations.len() != want_eqs || dim != want_dim {
            return bad(format!(
                "{} needs {want_eqs} equation(s) in {want_dim} variables",
                self.tag
            ));
        }
        if matches!(self.tag, ModelTag::Smooth | ModelTag::Index1) {
            if self.index() != 1 {
                return bad(format!("{} must have index one", self.tag));
            }
            return Ok(());
        }
        let ModelTag::Family(fam) = self.tag else { unreachable!() };
        let Some(d) = self.d.filter(|&d| d >= 1) else {
            return bad("family presentations need d >= 1".into());
        };
        let d32 = d as u32;
        let n = self.index();
        let need = |eq: usize, exps: &[u32], what: &str| -> Result<(), BlowupError> {
            if self.equations[eq].contains_exps(exps) {
                Ok(())
            } else {
                Err(BlowupError::Invalid(format!("{fam} equation must contain {what}")))
            }
        };
        let need_index = |want: u64| -> Result<(), BlowupError> {
            if n == want {
                Ok(())
            } else {
                Err(BlowupError::Invalid(format!("{fam} needs index {want}, got {n}")))
            }
        };
        match fam {
            FamilyTag::CA => {
                need_index(1)?;
                need(0, &[1, 1, 0, 0], "xy")?;
                need(0, &[0, 0, d32, 0], "z^d")
            }
            FamilyTag::CAn => {
                let r = self.action.residues();
                if n < 2 || r[0] != 1 || r[1] != n - 1 || r[3] != 0 || r[2].gcd(&n) != 1 {
                    return bad(format!("cA/n needs an action 1/n(1,-1,b,0), got {}", self.action));
                }
                need(0, &[1, 1, 0, 0], "xy")?;
                need(0, &[0, 0, (d * n) as u32, 0], "z^(dn)")
            }
            FamilyTag::CD1 => {
                need_index(1)?;
                need(0, &[0, 2, 0, 1], "y^2u")?;
                need(0, &[0, 0, d32, 0], "z^d")
            }
            FamilyTag::CD2 | FamilyTag::CD2q2 => {
                need_index(if fam == FamilyTag::CD2 { 1 } else { 2 })?;
                need(1, &[0, 1, 0, 1, 0], "yu")?;
                need(1, &[0, 0, d32, 0, 0], "z^d")?;
                need(1, &[0, 0, 0, 0, 1], "t")
            }
            FamilyTag::CD2q1 => {
                need_index(2)?;
                need(0, &[0, 2, 0, 1], "y^2u")?;
                need(0, &[0, 0, 2 * d32, 0], "z^(2d)")
            }
            FamilyTag::Smooth => unreachable!(),
        }
    }
}

/// `n · w(m)`, the integer numerator of a monomial's weight.
pub fn numerator_weight(w: &WeightVec, m: &Monomial) -> u64 {
    w.numerators()
        .iter()
        .zip(m.exponents())
        .map(|(&k, &e)| k * u64::from(e))
        .sum()
}

pub fn monomial_weight(w: &WeightVec, m: &Monomial) -> Q {
    q(numerator_weight(w, m) as i64, w.index() as i64)
}

/// `n · w(f)`: the minimum numerator weight over the support.
pub fn poly_numerator_weight(w: &WeightVec, f: &PolySupport) -> u64 {
    f.iter()
        .map(|m| numerator_weight(w, m))
        .min()
        .expect("supports are non-empty")
}

pub fn poly_weight(w: &WeightVec, f: &PolySupport) -> Q {
    q(poly_numerator_weight(w, f) as i64, w.index() as i64)
}

/// The monomials of `f` of minimal weight.
pub fn initial_form(w: &WeightVec, f: &PolySupport) -> PolySupport {
    let min = poly_numerator_weight(w, f);
    PolySupport::new(
        f.variable_count(),
        f.iter().filter(|m| numerator_weight(w, m) == min).cloned(),
    )
    .expect("the minimum is attained")
}

fn check_shape(s: &SingularityPresentation, w: &WeightVec) -> Result<(), BlowupError> {
    if w.len() != s.ambient_dimension() {
        return Err(BlowupError::LengthMismatch { weight: w.len(), ambient: s.ambient_dimension() });
    }
    if w.index() != s.index() {
        return Err(BlowupError::IndexMismatch { weight: w.index(), action: s.index() });
    }
    Ok(())
}

/// Weighted discrepancy `a = Σk - Σ n·w(equation) - n`.
pub fn discrepancy(s: &SingularityPresentation, w: &WeightVec) -> Result<i64, BlowupError> {
    check_shape(s, w)?;
    let eq_total: u64 = s.equations.iter().map(|e| poly_numerator_weight(w, e)).sum();
    let a = w.numerator_sum() as i64 - eq_total as i64 - w.index() as i64;
    if a <= 0 {
        return Err(BlowupError::NonPositiveDiscrepancy(a));
    }
    Ok(a)
}

/// Weighted multiplicity `m = n · w(f)`.
pub fn multiplicity(
    s: &SingularityPresentation,
    w: &WeightVec,
    f: &PolySupport,
) -> Result<u64, BlowupError> {
    check_shape(s, w)?;
    if f.variable_count() != s.ambient_dimension() {
        return Err(BlowupError::Invalid(format!(
            "divisor lives in {} variables, ambient space has {}",
            f.variable_count(),
            s.ambient_dimension()
        )));
    }
    if !is_semi_invariant(f, s.action()) {
        return Err(BlowupError::NotSemiInvariant(s.action().to_string()));
    }
    Ok(poly_numerator_weight(w, f))
}

/// Which argument certifies that the exceptional divisor is irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    /// The weight satisfies the hypotheses of the family's comparison lemma.
    #[serde(rename = "L1")]
    FamilyLemma,
    /// A primitive weight `(1, a, b)` over a smooth point.
    #[serde(rename = "L2")]
    Smooth,
    /// Index one, initial form `A·v + B` with `A` a monomial coprime to `B`.
    #[serde(rename = "L3")]
    GenericLinear,
}

impl CertificateKind {
    pub fn code(self) -> &'static str {
        match self {
            CertificateKind::FamilyLemma => "L1",
            CertificateKind::Smooth => "L2",
            CertificateKind::GenericLinear => "L3",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(CertificateKind),
    Refused(String),
}

impl Certification {
    pub fn kind(&self) -> Option<CertificateKind> {
        match self {
            Certification::Certified(k) => Some(*k),
            Certification::Refused(_) => None,
        }
    }
}

fn initial_contains(w: &WeightVec, eq: &PolySupport, required: &[&[u32]]) -> bool {
    let init = initial_form(w, eq);
    required.iter().all(|e| init.contains_exps(e))
}

/// Lemma-shaped weights for the family normal forms.
fn family_lemma(s: &SingularityPresentation, fam: FamilyTag, w: &WeightVec) -> Result<(), String> {
    let k = w.numerators();
    let n = s.index();
    let d = s.d().ok_or("presentation carries no d")?;
    let d32 = d as u32;
    let eqs = s.equations();
    let shape = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("weight {w} is not of the form {what}")) };
    match fam {
        FamilyTag::CA | FamilyTag::CAn => {
            let dn = d * n;
            shape(k[3] == n && k[0] + k[1] == k[2] * dn, "(r1', r2', a', n)/n with r1'+r2' = a'dn")?;
            if fam == FamilyTag::CAn {
                let b = s.action().residues()[2];
                shape(k[2] % n == (b * k[0]) % n, "a' = b r1' (mod n)")?;
            }
            // The initial form must read xy + h(z, u) with z^(dn) in h.
            let init = initial_form(w, &eqs[0]);
            let xy_ok = init.contains_exps(&[1, 1, 0, 0]) && init.contains_exps(&[0, 0, dn as u32, 0]);
            let rest_ok = init
                .iter()
                .all(|m| m.exponents() == [1, 1, 0, 0] || (m.exponent(0) == 0 && m.exponent(1) == 0));
            if xy_ok && rest_ok {
                Ok(())
            } else {
                Err(format!("initial form {init} is not xy + h(z,u) with z^{dn} in h"))
            }
        }
        FamilyTag::CD1 => {
            shape(n == 1 && k[0] == k[1] + 1 && k[3] == 1 && 2 * k[1] + 1 == k[2] * d, "(r'+1, r', a', 1) with 2r'+1 = a'd")?;
            if initial_contains(w, &eqs[0], &[&[0, 2, 0, 1], &[0, 0, d32, 0]]) {
                Ok(())
            } else {
                Err("initial form misses y^2u or z^d".into())
            }
        }
        FamilyTag::CD2 => {
            shape(n == 1 && k[0] == k[1] + 1 && k[3] == 1 && k[4] == k[1] + 2 && k[1] + 1 == k[2] * d, "(r'+1, r', a', 1, r'+2) with r'+1 = a'd")?;
            let phi1 = poly_numerator_weight(w, &eqs[0]);
            if phi1 == 2 * (k[1] + 1) && initial_contains(w, &eqs[1], &[&[0, 1, 0, 1, 0], &[0, 0, d32, 0, 0]]) {
                Ok(())
            } else {
                Err("initial forms do not match the lemma".into())
            }
        }
        FamilyTag::CD2q1 => {
            shape(n == 2 && k[0] == k[1] + 2 && k[3] == 2 && k[1] + 1 == k[2] * d && k[1] % 2 == 1 && k[2] % 2 == 1, "1/2(r'+2, r', a', 2) with r'+1 = a'd, a' and r' odd")?;
            if initial_contains(w, &eqs[0], &[&[0, 2, 0, 1], &[0, 0, 2 * d32, 0]]) {
                Ok(())
            } else {
                Err("initial form misses y^2u or z^(2d)".into())
            }
        }
        FamilyTag::CD2q2 => {
            shape(n == 2 && k[0] == k[1] + 2 && k[3] == 2 && k[4] == k[1] + 4 && k[1] + 2 == k[2] * d && k[1] % 2 == 1, "1/2(r'+2, r', a', 2, r'+4) with r'+2 = a'd, r' odd")?;
            let ok1 = initial_contains(w, &eqs[0], &[&[2, 0, 0, 0, 0], &[0, 1, 0, 0, 1], &[0, 0, 2 * d32, 0, 0]]);
            let ok2 = initial_contains(w, &eqs[1], &[&[0, 1, 0, 1, 0], &[0, 0, d32, 0, 0]]);
            if ok1 && ok2 {
                Ok(())
            } else {
                Err("initial forms do not match the lemma".into())
            }
        }
        FamilyTag::Smooth => Err("not a singular family".into()),
    }
}

fn smooth_rule(w: &WeightVec) -> Result<(), String> {
    let mut k = w.numerators().to_vec();
    k.sort_unstable();
    if w.index() == 1 && k.len() == 3 && k[0] == 1 && k[1].gcd(&k[2]) == 1 {
        Ok(())
    } else {
        Err(format!("{w} is not a permutation of (1, a, b) with gcd(a, b) = 1"))
    }
}

/// Initial form `A·v + B`: one monomial linear in `v`, the rest free of `v`,
/// and no variable of `A` dividing all of `B`.
fn linear_rule(init: &PolySupport) -> Result<(), String> {
    for v in 0..init.variable_count() {
        if init.iter().any(|m| m.exponent(v) > 1) {
            continue;
        }
        let (linear, rest): (Vec<&Monomial>, Vec<&Monomial>) =
            init.iter().partition(|m| m.exponent(v) == 1);
        if linear.len() != 1 || rest.is_empty() {
            continue;
        }
        let a = linear[0];
        let shared = (0..a.len())
            .filter(|&i| i != v && a.exponent(i) > 0)
            .any(|i| rest.iter().all(|m| m.exponent(i) > 0));
        if !shared {
            return Ok(());
        }
    }
    Err(format!("initial form {init} is not of the form A*v + B with coprime parts"))
}

/// Certify that the exceptional divisor of the weighted blow-up is
/// irreducible, or explain why no rule applies.
pub fn certify_irreducible(s: &SingularityPresentation, w: &WeightVec) -> Certification {
    if let Err(e) = check_shape(s, w) {
        return Certification::Refused(e.to_string());
    }
    let mut reasons = Vec::new();
    match s.tag() {
        ModelTag::Smooth => match smooth_rule(w) {
            Ok(()) => return Certification::Certified(CertificateKind::Smooth),
            Err(e) => reasons.push(e),
        },
        ModelTag::Family(fam) => match family_lemma(s, fam, w) {
            Ok(()) => return Certification::Certified(CertificateKind::FamilyLemma),
            Err(e) => reasons.push(e),
        },
        ModelTag::Index1 => {}
    }
    if s.index() == 1 && s.equations().len() == 1 {
        match linear_rule(&initial_form(w, &s.equations()[0])) {
            Ok(()) => return Certification::Certified(CertificateKind::GenericLinear),
            Err(e) => reasons.push(e),
        }
    }
    if reasons.is_empty() {
        reasons.push("no certification rule applies".into());
    }
    Certification::Refused(reasons.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec()).unwrap()
    }

    fn w(k: &[u64], n: u64) -> WeightVec {
        WeightVec::new(k.to_vec(), n).unwrap()
    }

    fn p(s: &str, c: usize) -> PolySupport {
        parse_poly(s, c).unwrap()
    }

    fn ca_model(phi: &str, d: u64) -> SingularityPresentation {
        SingularityPresentation::new(
            ModelTag::Family(FamilyTag::CA),
            vec![p(phi, 4)],
            QuotientAction::trivial(4),
            Some(d),
        )
        .unwrap()
    }

    #[test]
    fn monomial_and_poly_weights() {
        assert_eq!(monomial_weight(&w(&[1, 2, 3], 1), &mono(&[1, 1, 1])), q(6, 1));
        assert_eq!(monomial_weight(&w(&[3, 11, 7, 2], 2), &mono(&[0, 1, 0, 0])), q(11, 2));
        assert_eq!(monomial_weight(&w(&[1, 5, 3, 2], 1), &mono(&[0, 0, 0, 3])), q(6, 1));
        let phi = p("x*y + x^7 + z^2 + u^3", 4);
        assert_eq!(poly_weight(&w(&[1, 5, 3, 2], 1), &phi), q(6, 1));
        assert_eq!(poly_weight(&w(&[3, 5, 4, 1], 1), &p("x*y + z^2", 4)), q(8, 1));
        assert_eq!(poly_weight(&w(&[3, 5, 4, 1], 1), &p("y", 4)), q(5, 1));
    }

    #[test]
    fn initial_forms() {
        let phi = p("x*y + x^7 + z^2 + u^3", 4);
        assert_eq!(initial_form(&w(&[1, 5, 3, 2], 1), &phi), p("x*y + z^2 + u^3", 4));
        let f = p("x^2 + y*z + u^3 + x*y*z", 4);
        assert_eq!(initial_form(&w(&[1, 1, 1, 1], 1), &f), p("x^2 + y*z", 4));
        let g = p("x*y + z^2", 4);
        assert_eq!(initial_form(&w(&[3, 5, 4, 1], 1), &g), g);
    }

    #[test]
    fn discrepancies() {
        let sm = SingularityPresentation::smooth();
        assert_eq!(discrepancy(&sm, &w(&[1, 2, 3], 1)), Ok(5));
        assert_eq!(discrepancy(&ca_model("x*y + z^2", 2), &w(&[3, 5, 4, 1], 1)), Ok(4));
        let q2 = FamilyParams::CD2q2 { r: 8, a: 5, d: 2 };
        // The quotient normal form needs d odd; evaluate the formula on the
        // bare equations instead.
        let model = SingularityPresentation {
            tag: ModelTag::Family(FamilyTag::CD2q2),
            equations: vec![
                p("x^2 + y*t + z^4", 5),
                p("y*u + z^2 + t", 5),
            ],
            action: q2.action(),
            d: Some(2),
        };
        assert_eq!(discrepancy(&model, &q2.family_weight().unwrap()), Ok(5));
        assert_eq!(
            discrepancy(
                &SingularityPresentation::index1(p("x^3 + y^3 + z^3 + u^3", 4)).unwrap(),
                &w(&[1, 1, 1, 1], 1)
            ),
            Err(BlowupError::NonPositiveDiscrepancy(0))
        );
    }

    #[test]
    fn multiplicities() {
        let cand = FamilyParams::CAn { n: 2, b: 1, r1: 3, r2: 11, a: 7, d: 1 };
        let model = SingularityPresentation::normal_form(&cand).unwrap();
        assert_eq!(multiplicity(&model, &cand.family_weight().unwrap(), &p("y", 4)), Ok(11));
        let sm = SingularityPresentation::smooth();
        assert_eq!(multiplicity(&sm, &w(&[3, 2, 1], 1), &p("x^2 + y^3 + z^6", 3)), Ok(6));
        let idx1 = SingularityPresentation::index1(p("x*y + x^7 + z^2 + u^3", 4)).unwrap();
        assert_eq!(multiplicity(&idx1, &w(&[1, 5, 3, 2], 1), &p("y", 4)), Ok(5));
        assert!(matches!(
            multiplicity(&model, &cand.family_weight().unwrap(), &p("x + y^2", 4)),
            Err(BlowupError::NotSemiInvariant(_))
        ));
    }

    #[test]
    fn certificates() {
        let ca = ca_model("x*y + z^2", 2);
        assert_eq!(certify_irreducible(&ca, &w(&[1, 3, 2, 1], 1)).kind(), Some(CertificateKind::FamilyLemma));
        let idx1 = SingularityPresentation::index1(p("x*y + x^7 + z^2 + u^3", 4)).unwrap();
        assert_eq!(certify_irreducible(&idx1, &w(&[1, 5, 3, 2], 1)).kind(), Some(CertificateKind::GenericLinear));
        let red = SingularityPresentation::index1(p("x^2 + x*y", 4)).unwrap();
        assert!(matches!(certify_irreducible(&red, &w(&[1, 1, 1, 1], 1)), Certification::Refused(_)));
        let sm = SingularityPresentation::smooth();
        assert_eq!(certify_irreducible(&sm, &w(&[3, 1, 2], 1)).kind(), Some(CertificateKind::Smooth));
        assert!(certify_irreducible(&sm, &w(&[2, 2, 1], 1)).kind().is_none());
        assert!(certify_irreducible(&sm, &w(&[2, 3, 4], 1)).kind().is_none());
    }

    #[test]
    fn family_lemma_shape_is_checked() {
        let ca = ca_model("x*y + z^2", 2);
        // r1' + r2' = 5 != a'd = 4
        assert!(certify_irreducible(&ca, &w(&[2, 3, 2, 1], 1)).kind() != Some(CertificateKind::FamilyLemma));
        let can = FamilyParams::CAn { n: 2, b: 1, r1: 3, r2: 11, a: 7, d: 1 };
        let model = SingularityPresentation::normal_form(&can).unwrap();
        assert!(certify_irreducible(&model, &w(&[1, 5, 3, 2], 2)).kind().is_some());
        // a' = 2 but b r1' = 1 (mod 2)
        assert!(certify_irreducible(&model, &w(&[1, 3, 2, 2], 2)).kind().is_none());
    }

    #[test]
    fn normal_forms_are_valid() {
        let ps = [
            FamilyParams::CA { r1: 3, r2: 5, a: 4, d: 2 },
            FamilyParams::CAn { n: 3, b: 2, r1: 2, r2: 19, a: 7, d: 1 },
            FamilyParams::CD1 { r: 7, a: 5, d: 3 },
            FamilyParams::CD2 { r: 9, a: 5, d: 2 },
            FamilyParams::CD2q1 { r: 9, a: 5, d: 2 },
            FamilyParams::CD2q2 { r: 13, a: 5, d: 3 },
        ];
        for fp in ps {
            let m = SingularityPresentation::normal_form(&fp).unwrap();
            let fw = fp.family_weight().unwrap();
            assert_eq!(discrepancy(&m, &fw), Ok(fp.discrepancy() as i64), "{fp}");
            assert_eq!(certify_irreducible(&m, &fw).kind(), Some(CertificateKind::FamilyLemma), "{fp}");
        }
    }

    #[test]
    fn presentation_invariants() {
        let err = SingularityPresentation::new(
            ModelTag::Family(FamilyTag::CA),
            vec![p("x*y + z^3", 4)],
            QuotientAction::trivial(4),
            Some(2),
        );
        assert!(err.is_err());
        let err = SingularityPresentation::new(
            ModelTag::Family(FamilyTag::CD2q1),
            vec![p("x + y^2*u + z^4", 4)],
            QuotientAction::new(2, &[1, 1, 1, 0]).unwrap(),
            Some(2),
        );
        assert!(err.is_err());
    }
}
