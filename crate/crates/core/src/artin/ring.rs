use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::CoeffRing;

/// Exponent vector of a monomial, one entry per ring variable.
pub type Exponents = Vec<u32>;

/// `GF(2)[vars]/(relations)` with monomial relations. Every variable has a
/// pure power among the relations, so the quotient is finite dimensional and
/// local with maximal ideal generated by the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinRing {
    vars: Vec<String>,
    relations: Vec<Exponents>,
}

/// Normal form: a set of exponent vectors, none divisible by a relation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    monomials: BTreeSet<Exponents>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl ExactSizeIterator<Item = &Exponents> {
        self.monomials.iter()
    }

    /// True if the monomial `1` is present, i.e. the element is a unit.
    pub fn has_constant_term(&self) -> bool {
        self.monomials.iter().any(|e| e.iter().all(|&x| x == 0))
    }

    fn toggle(&mut self, e: Exponents) {
        if !self.monomials.remove(&e) {
            self.monomials.insert(e);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    vars: Vec<String>,
    relations: Vec<String>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl ArtinRing {
    pub fn new(vars: Vec<String>, relations: Vec<Exponents>) -> Result<Self> {
        let k = vars.len();
        let mut seen = BTreeSet::new();
        for v in &vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        for r in &relations {
            if r.len() != k {
                return Err(Error::InvalidRing(format!("relation has {} exponents for {k} variables", r.len())));
            }
            if r.iter().all(|&e| e == 0) {
                return Err(Error::InvalidRing("the relation 1 makes the ring zero, not local".into()));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            let pure = relations
                .iter()
                .any(|r| r[i] > 0 && r.iter().enumerate().all(|(j, &e)| j == i || e == 0));
            if !pure {
                return Err(Error::InvalidRing(format!(
                    "no pure power of `{v}` among the relations; the quotient would not be Artin"
                )));
            }
        }
        Ok(ArtinRing { vars, relations })
    }

    /// `GF(2)[t]/(t^n)`.
    pub fn truncated(var: &str, n: u32) -> Result<Self> {
        ArtinRing::new(vec![var.to_string()], vec![vec![n]])
    }

    /// Parses `{"vars":["u","v"],"relations":["u^2","v^3"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RingJson = serde_json::from_str(text)?;
        let mut relations = Vec::new();
        for r in &raw.relations {
            relations.push(crate::expr::parse_monomial(r, &raw.vars)?);
        }
        ArtinRing::new(raw.vars, relations)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let relations = self.relations.iter().map(|r| self.format_monomial(r)).collect();
        serde_json::to_value(RingJson { vars: self.vars.clone(), relations }).expect("serialisable")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[Exponents] {
        &self.relations
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_standard(&self, e: &[u32]) -> bool {
        !self.relations.iter().any(|r| divides(r, e))
    }

    /// The monomial `e` in normal form (zero if it lies in the ideal).
    pub fn monomial(&self, e: Exponents) -> RingElement {
        assert_eq!(e.len(), self.vars.len());
        let mut out = RingElement::default();
        if self.is_standard(&e) {
            out.monomials.insert(e);
        }
        out
    }

    pub fn var(&self, i: usize) -> RingElement {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        self.monomial(e)
    }

    pub fn from_monomials<I: IntoIterator<Item = Exponents>>(&self, it: I) -> RingElement {
        let mut out = RingElement::default();
        for e in it {
            if self.is_standard(&e) {
                out.toggle(e);
            }
        }
        out
    }

    /// All standard monomials; a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Exponents> {
        let k = self.vars.len();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([vec![0u32; k]]);
        seen.insert(vec![0u32; k]);
        while let Some(e) = queue.pop_front() {
            for i in 0..k {
                let mut next = e.clone();
                next[i] += 1;
                if self.is_standard(&next) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn dimension(&self) -> usize {
        self.standard_monomials().len()
    }

    /// Least `s` with `m^s = 0`: one more than the top degree of a standard monomial.
    pub fn m_index(&self) -> u32 {
        let top = self
            .standard_monomials()
            .iter()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        top + 1
    }

    pub fn format_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(e)
            .filter(|(_, &x)| x > 0)
            .map(|(v, &x)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text: higher total degree first, ties in descending
    /// exponent order; `0` for zero.
    pub fn format(&self, a: &RingElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut ms: Vec<&Exponents> = a.monomials.iter().collect();
        ms.sort_by(|x, y| {
            let dx: u32 = x.iter().sum();
            let dy: u32 = y.iter().sum();
            dy.cmp(&dx).then_with(|| y.cmp(x))
        });
        ms.iter().map(|e| self.format_monomial(e)).collect::<Vec<_>>().join(" + ")
    }

    pub fn parse(&self, text: &str) -> Result<RingElement> {
        let monos = crate::expr::parse_ring_element(text, &self.vars)?;
        Ok(self.from_monomials(monos))
    }
}

impl CoeffRing for ArtinRing {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        RingElement::default()
    }

    fn one(&self) -> RingElement {
        self.monomial(vec![0; self.vars.len()])
    }

    fn is_zero(&self, a: &RingElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { monomials: a.monomials.symmetric_difference(&b.monomials).cloned().collect() }
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::default();
        for x in &a.monomials {
            for y in &b.monomials {
                let e: Exponents = x.iter().zip(y).map(|(p, q)| p + q).collect();
                if self.is_standard(&e) {
                    out.toggle(e);
                }
            }
        }
        out
    }
}
