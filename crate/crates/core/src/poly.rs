//! Monomials, polynomial supports and extended Newton diagrams.
//!
//! Polynomials are represented only by their support: coefficients are read,
//! combined exactly and then dropped. Variables are fixed as `x, y, z, u, t`
//! in that order; a support carries 3 (smooth ambient space), 4 or 5 of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::weights::QuotientAction;

/// Variable names in coordinate order.
pub const VARIABLES: [char; 5] = ['x', 'y', 'z', 'u', 't'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { pos: usize, name: char },
    #[error("variable '{name}' at {pos} is not available with {count} variables")]
    VariableOutOfRange { pos: usize, name: char, count: usize },
    #[error("integer overflow at {pos}")]
    Overflow { pos: usize },
    #[error("polynomial is zero after cancellation")]
    Empty,
    #[error("unsupported variable count {0} (expected 3, 4 or 5)")]
    BadVariableCount(usize),
    #[error("monomials have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

fn check_count(count: usize) -> Result<(), PolyError> {
    if (3..=5).contains(&count) {
        Ok(())
    } else {
        Err(PolyError::BadVariableCount(count))
    }
}

/// An exponent vector `x^i1 y^i2 z^i3 u^i4 [t^i5]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self, PolyError> {
        check_count(exponents.len())?;
        Ok(Monomial(exponents))
    }

    /// The monomial `1` in `count` variables.
    pub fn one(count: usize) -> Result<Self, PolyError> {
        Self::new(vec![0; count])
    }

    /// A single variable, e.g. `var(4, 1)` is `y`.
    pub fn var(count: usize, index: usize) -> Result<Self, PolyError> {
        let mut e = vec![0; count];
        e[index] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VARIABLES[i])?;
            } else {
                write!(f, "{}^{}", VARIABLES[i], e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Support of a polynomial with generic nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySupport {
    count: usize,
    support: BTreeSet<Monomial>,
}

impl PolySupport {
    pub fn new(
        count: usize,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, PolyError> {
        check_count(count)?;
        let support: BTreeSet<Monomial> = monomials.into_iter().collect();
        if let Some(m) = support.iter().find(|m| m.len() != count) {
            return Err(PolyError::LengthMismatch(count, m.len()));
        }
        if support.is_empty() {
            return Err(PolyError::Empty);
        }
        Ok(PolySupport { count, support })
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(count: usize, exps: &[&[u32]]) -> Result<Self, PolyError> {
        let monos = exps
            .iter()
            .map(|e| Monomial::new(e.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(count, monos)
    }

    pub fn variable_count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.support.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.support.contains(m)
    }

    /// Whether the support contains the monomial with these exponents.
    pub fn contains_exps(&self, exps: &[u32]) -> bool {
        exps.len() == self.count && self.support.contains(&Monomial(exps.to_vec()))
    }

    /// Multiply every monomial by `m`.
    pub fn times(&self, m: &Monomial) -> PolySupport {
        PolySupport {
            count: self.count,
            support: self.support.iter().map(|s| s.mul(m)).collect(),
        }
    }
}

impl fmt::Display for PolySupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    count: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn integer(&mut self) -> Result<i128, PolyError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: i128 = 0;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(i128::from(c - b'0')))
                .ok_or(PolyError::Overflow { pos: start })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected integer"));
        }
        Ok(value)
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<(i128, Vec<u32>), PolyError> {
        let mut coeff: i128 = 1;
        let mut exps = vec![0u32; self.count];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let v = self.integer()?;
                    coeff = coeff.checked_mul(v).ok_or(PolyError::Overflow { pos: start })?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let pos = self.pos;
                    let name = c as char;
                    let idx = VARIABLES
                        .iter()
                        .position(|&v| v == name)
                        .ok_or(PolyError::UnknownVariable { pos, name })?;
                    if idx >= self.count {
                        return Err(PolyError::VariableOutOfRange { pos, name, count: self.count });
                    }
                    self.pos += 1;
                    let mut power = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let p = self.integer()?;
                        power = u32::try_from(p).map_err(|_| PolyError::Overflow { pos })?;
                    }
                    exps[idx] = exps[idx]
                        .checked_add(power)
                        .ok_or(PolyError::Overflow { pos })?;
                }
                Some(_) => return Err(self.syntax("expected integer or variable")),
                None => return Err(self.syntax("unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, exps));
            }
        }
    }
}

/// Parse `expr := term (('+'|'-') term)*` into a support. A leading sign is
/// accepted. Monomials whose combined coefficient is zero are dropped.
pub fn parse_poly(text: &str, variable_count: usize) -> Result<PolySupport, PolyError> {
    check_count(variable_count)?;
    let mut p = Parser { src: text.as_bytes(), pos: 0, count: variable_count };
    let mut acc: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
    let mut sign: i128 = 1;
    match p.peek() {
        Some(b'-') => {
            sign = -1;
            p.pos += 1;
        }
        Some(b'+') => p.pos += 1,
        _ => {}
    }
    loop {
        let pos = p.pos;
        let (c, e) = p.term()?;
        let entry = acc.entry(e).or_insert(0);
        *entry = entry
            .checked_add(sign * c)
            .ok_or(PolyError::Overflow { pos })?;
        match p.peek() {
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            None => break,
            Some(_) => return Err(p.syntax("expected '+', '-' or '*'")),
        }
        p.pos += 1;
    }
    let monos = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(e, _)| Monomial(e));
    PolySupport::new(variable_count, monos)
}

/// Character `sum_j i_j b_j mod n` of a monomial under a cyclic action.
pub fn character(m: &Monomial, action: &QuotientAction) -> u64 {
    let n = action.index();
    m.exponents()
        .iter()
        .zip(action.residues())
        .fold(0u64, |acc, (&e, &b)| (acc + u64::from(e) % n * b) % n)
}

/// True when every monomial of `f` has the same character under `action`.
pub fn is_semi_invariant(f: &PolySupport, action: &QuotientAction) -> bool {
    let mut chars = f.iter().map(|m| character(m, action));
    match chars.next() {
        Some(c0) => chars.all(|c| c == c0),
        None => true,
    }
}

/// The extended Newton diagram, stored as its antichain of minimal exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonDiagram {
    count: usize,
    generators: Vec<Monomial>,
}

impl NewtonDiagram {
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn variable_count(&self) -> usize {
        self.count
    }

    /// `v` lies in the diagram iff it dominates some generator.
    pub fn contains_point(&self, v: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(v))
    }
}

pub fn gamma_plus(f: &PolySupport) -> NewtonDiagram {
    let pts: Vec<&Monomial> = f.iter().collect();
    let generators = pts
        .iter()
        .filter(|v| !pts.iter().any(|o| o != *v && o.divides(v)))
        .map(|v| (*v).clone())
        .collect();
    NewtonDiagram { count: f.variable_count(), generators }
}

/// `inner ⊆ outer` as upward-closed sets.
pub fn diagram_contains(outer: &NewtonDiagram, inner: &NewtonDiagram) -> bool {
    outer.count == inner.count && inner.generators.iter().all(|g| outer.contains_point(g))
}
