use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ArtinRing, RingElement};
use crate::error::{check_range, Error, Result};
use crate::f2::CoeffRing;
use crate::gamma::{DpElement, Generator, Monomial};

/// Largest iteration count [`gamma2_oracle_expand`] accepts.
pub const ORACLE_MAX_S: u32 = 4;
/// Largest number of terms [`gamma2_oracle_expand`] accepts.
pub const ORACLE_MAX_TERMS: usize = 6;

/// Degree used for generators whose JSON omits one.
const DEFAULT_CHAIN_DEGREE: u64 = 2;

/// An abstract chain generator of positive degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainGen {
    pub name: String,
    pub degree: u64,
}

impl Generator for ChainGen {
    fn degree(&self) -> u64 {
        self.degree
    }
}

impl fmt::Display for ChainGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// `Σ tᵢ·xᵢ` with every `tᵢ` in the maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedElement {
    terms: BTreeMap<ChainGen, RingElement>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    gen: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<u64>,
}

impl MixedElement {
    /// Terms on the same generator are summed; zero coefficients are dropped.
    pub fn new(ring: &ArtinRing, pairs: Vec<(RingElement, ChainGen)>) -> Result<Self> {
        let mut terms: BTreeMap<ChainGen, RingElement> = BTreeMap::new();
        let mut degrees: BTreeMap<String, u64> = BTreeMap::new();
        for (coef, gen) in pairs {
            check_range(gen.degree)?;
            if gen.degree == 0 {
                return Err(Error::precondition(format!("generator `{}` must have positive degree", gen.name)));
            }
            if *degrees.entry(gen.name.clone()).or_insert(gen.degree) != gen.degree {
                return Err(Error::precondition(format!("generator `{}` given two degrees", gen.name)));
            }
            if coef.has_constant_term() {
                return Err(Error::precondition(format!(
                    "coefficient {} of `{}` is not in the maximal ideal",
                    ring.format(&coef),
                    gen.name
                )));
            }
            let sum = match terms.remove(&gen) {
                Some(old) => ring.add(&old, &coef),
                None => coef,
            };
            if !sum.is_zero() {
                terms.insert(gen, sum);
            }
        }
        Ok(MixedElement { terms })
    }

    /// Parses `[{"coef":"t","gen":"x1"}, …]`; an optional `"degree"` sets the
    /// generator degree (default 2).
    pub fn from_json(ring: &ArtinRing, text: &str) -> Result<Self> {
        let raw: Vec<TermJson> = serde_json::from_str(text)?;
        let mut pairs = Vec::new();
        for t in raw {
            crate::expr::check_identifier(&t.gen)?;
            let coef = ring.parse(&t.coef)?;
            pairs.push((coef, ChainGen { name: t.gen, degree: t.degree.unwrap_or(DEFAULT_CHAIN_DEGREE) }));
        }
        MixedElement::new(ring, pairs)
    }

    pub fn to_json(&self, ring: &ArtinRing) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(g, c)| TermJson { coef: ring.format(c), gen: g.name.clone(), degree: Some(g.degree) })
            .collect();
        serde_json::to_value(terms).expect("serialisable")
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&ChainGen, &RingElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn format(&self, ring: &ArtinRing) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(g, c)| format!("({}) {}", ring.format(c), g.name))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `w` as an element of the free divided power algebra over the ring.
    pub fn to_divided_power(&self, ring: &ArtinRing) -> DpElement<ChainGen, RingElement> {
        let mut out = DpElement::zero();
        for (g, c) in &self.terms {
            out.add_term(Monomial::factor(g.clone(), 0), c.clone(), ring);
        }
        out
    }
}

fn nilpotency_exponent(ring: &ArtinRing, t: &RingElement) -> u32 {
    let mut s = 0;
    let mut power = t.clone();
    while !power.is_zero() {
        power = ring.mul(&power, &power);
        s += 1;
    }
    s
}

/// Least `s` with `tᵢ^{2^s} = 0` for every coefficient: by the identity
/// `γ₂^s(w) ≡ Σ tᵢ^{2^s}γ₂^s(xᵢ)` modulo products, the least `s` for which
/// `γ₂^s(w)` is a sum of products. Zero for `w = 0`.
pub fn gamma2_nilpotency_index(ring: &ArtinRing, w: &MixedElement) -> u32 {
    w.terms.values().map(|t| nilpotency_exponent(ring, t)).max().unwrap_or(0)
}

/// `γ₂` applied `s` times to `w` in the free divided power algebra over the
/// ring, expanding with the sum, scalar, product and composite rules and no
/// truncation.
pub fn gamma2_oracle_expand(
    ring: &ArtinRing,
    w: &MixedElement,
    s: u32,
) -> Result<DpElement<ChainGen, RingElement>> {
    if s > ORACLE_MAX_S || w.len() > ORACLE_MAX_TERMS {
        return Err(Error::Infeasible(format!(
            "γ₂^{s} on {} terms exceeds the limits s ≤ {ORACLE_MAX_S}, terms ≤ {ORACLE_MAX_TERMS}",
            w.len()
        )));
    }
    let mut x = w.to_divided_power(ring);
    for _ in 0..s {
        x = x.gamma2(ring)?;
    }
    Ok(x)
}

/// `Σ tᵢ^{2^s}·γ_{2^s}(xᵢ)`.
pub fn closed_form_projection(ring: &ArtinRing, w: &MixedElement, s: u32) -> DpElement<ChainGen, RingElement> {
    let mut out = DpElement::zero();
    for (g, t) in &w.terms {
        out.add_term(Monomial::factor(g.clone(), s), ring.pow(t, 1 << s), ring);
    }
    out
}

/// Least `s ≤ max_s` whose oracle expansion vanishes modulo products.
pub fn oracle_index(ring: &ArtinRing, w: &MixedElement, max_s: u32) -> Result<Option<u32>> {
    for s in 0..=max_s {
        if gamma2_oracle_expand(ring, w, s)?.modulo_products().is_zero() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub element: String,
    pub index: u32,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AndreReport {
    pub m_index: u32,
    /// `⌈log₂ m_index⌉`: every `t ∈ m` has `t^{2^bound} = 0`.
    pub bound: u32,
    pub witnesses: Vec<WitnessReport>,
    pub reasoning: Vec<&'static str>,
}

impl AndreReport {
    pub fn consistent(&self) -> bool {
        self.witnesses.iter().all(|w| w.within_bound)
    }
}

fn ceil_log2(n: u32) -> u32 {
    if n <= 1 {
        0
    } else {
        32 - (n - 1).leading_zeros()
    }
}

/// Divided square nilpotency indices of chain-level witnesses, with the bound
/// the nilpotency of the maximal ideal forces on them.
pub fn andre_report(ring: &ArtinRing, witnesses: &[MixedElement]) -> AndreReport {
    let m_index = ring.m_index();
    let bound = ceil_log2(m_index);
    let witnesses = witnesses
        .par_iter()
        .map(|w| {
            let index = gamma2_nilpotency_index(ring, w);
            WitnessReport { element: w.format(ring), index, within_bound: index <= bound }
        })
        .collect();
    AndreReport {
        m_index,
        bound,
        witnesses,
        reasoning: vec![
            "the maximal ideal m of the Artin ring is nilpotent: m^m_index = 0",
            "for w = Σ tᵢxᵢ with tᵢ in m, γ₂^s(w) ≡ Σ tᵢ^(2^s)·γ₂^s(xᵢ) modulo decomposables",
            "so γ₂^s(w) is decomposable once 2^s ≥ m_index, and γ₂ kills decomposables of positive degree",
            "γ₂ is therefore nilpotent on m·C≥2 of the resolution",
            "∂α₁^s(y) = γ₂^s(∂y) turns this into nilpotency of α₁, the André operation, on Q Tor",
        ],
    }
}
