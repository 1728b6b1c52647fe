//! Free divided power algebras in characteristic 2.
//!
//! A basis monomial is a product `∏ γ_{2^e}(g)` over distinct pairs `(g, e)`;
//! `γ_k` for other `k` is expanded through the binary digits of `k`. A repeated
//! pair multiplies to zero since `γ_{2^e}(g)² = binom(2^{e+1}, 2^e)·γ_{2^{e+1}}(g)`
//! and that binomial is even.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug, Display};

use crate::error::{Error, Result};
use crate::f2::CoeffRing;

/// A free generator with a positive degree.
pub trait Generator: Clone + Ord + Debug {
    fn degree(&self) -> u64;
    fn weight(&self) -> u64 {
        1
    }
}

/// `γ_{2^log2}(gen)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaFactor<G> {
    pub gen: G,
    pub log2: u32,
}

impl<G: Generator> GammaFactor<G> {
    pub fn new(gen: G, log2: u32) -> Self {
        GammaFactor { gen, log2 }
    }

    pub fn degree(&self) -> u64 {
        self.gen.degree() << self.log2
    }

    pub fn weight(&self) -> u64 {
        self.gen.weight() << self.log2
    }
}

impl<G: Display> Display for GammaFactor<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2 == 0 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "g{}({})", 1u64 << self.log2, self.gen)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<G> {
    factors: BTreeSet<GammaFactor<G>>,
}

impl<G: Generator> Monomial<G> {
    pub fn one() -> Self {
        Monomial { factors: BTreeSet::new() }
    }

    pub fn factor(gen: G, log2: u32) -> Self {
        Monomial { factors: [GammaFactor::new(gen, log2)].into_iter().collect() }
    }

    /// `None` if a factor repeats (the product is zero).
    pub fn from_factors<I: IntoIterator<Item = GammaFactor<G>>>(it: I) -> Option<Self> {
        let mut factors = BTreeSet::new();
        for f in it {
            if !factors.insert(f) {
                return None;
            }
        }
        Some(Monomial { factors })
    }

    pub fn factors(&self) -> impl ExactSizeIterator<Item = &GammaFactor<G>> {
        self.factors.iter()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_one()
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(GammaFactor::degree).sum()
    }

    pub fn weight(&self) -> u64 {
        self.factors.iter().map(GammaFactor::weight).sum()
    }

    /// `None` when the product vanishes.
    pub fn mul(&self, other: &Monomial<G>) -> Option<Monomial<G>> {
        if !self.factors.is_disjoint(&other.factors) {
            return None;
        }
        Some(Monomial { factors: self.factors.union(&other.factors).cloned().collect() })
    }

    /// The single factor, if there is exactly one.
    pub fn as_factor(&self) -> Option<&GammaFactor<G>> {
        if self.factors.len() == 1 {
            self.factors.iter().next()
        } else {
            None
        }
    }
}

impl<G: Display> Display for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, x) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All monomials over `gens` of degree at most `max_degree`, ordered by
/// degree and then by monomial.
///
/// # Panics
/// If a generator has degree 0.
pub fn enumerate_monomials<G: Generator>(gens: &[G], max_degree: u64) -> Vec<Monomial<G>> {
    let mut atoms = Vec::new();
    for g in gens {
        assert!(g.degree() > 0, "generator of degree 0");
        let mut e = 0;
        while g.degree() << e <= max_degree {
            atoms.push(GammaFactor::new(g.clone(), e));
            e += 1;
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets(&atoms, 0, max_degree, &mut chosen, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

fn subsets<G: Generator>(
    atoms: &[GammaFactor<G>],
    start: usize,
    budget: u64,
    chosen: &mut Vec<GammaFactor<G>>,
    out: &mut Vec<Monomial<G>>,
) {
    out.push(Monomial { factors: chosen.iter().cloned().collect() });
    for k in start..atoms.len() {
        let d = atoms[k].degree();
        if d <= budget {
            chosen.push(atoms[k].clone());
            subsets(atoms, k + 1, budget - d, chosen, out);
            chosen.pop();
        }
    }
}

/// A combination of monomials with coefficients in a ring of characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpElement<G, C> {
    terms: BTreeMap<Monomial<G>, C>,
}

impl<G, C> Default for DpElement<G, C> {
    fn default() -> Self {
        DpElement { terms: BTreeMap::new() }
    }
}

impl<G: Generator, C: Clone + PartialEq + Debug> DpElement<G, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one<R: CoeffRing<Elem = C>>(ring: &R) -> Self {
        Self::monomial(Monomial::one(), ring.one(), ring)
    }

    pub fn monomial<R: CoeffRing<Elem = C>>(m: Monomial<G>, c: C, ring: &R) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c, ring);
        out
    }

    pub fn generator<R: CoeffRing<Elem = C>>(g: G, ring: &R) -> Self {
        Self::monomial(Monomial::factor(g, 0), ring.one(), ring)
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

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial<G>, &C)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl ExactSizeIterator<Item = &Monomial<G>> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial<G>) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term<R: CoeffRing<Elem = C>>(&mut self, m: Monomial<G>, c: C, ring: &R) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = ring.add(&old, &c);
                if !ring.is_zero(&sum) {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn add<R: CoeffRing<Elem = C>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone(), ring);
        }
        out
    }

    pub fn scale<R: CoeffRing<Elem = C>>(&self, c: &C, ring: &R) -> Self {
        let mut out = Self::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), ring.mul(c, d), ring);
        }
        out
    }

    pub fn mul<R: CoeffRing<Elem = C>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(m) = a.mul(b) {
                    out.add_term(m, ring.mul(ca, cb), ring);
                }
            }
        }
        out
    }

    /// The common degree of all terms; `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    fn require_augmented(&self) -> Result<()> {
        if self.terms.keys().any(Monomial::is_one) {
            return Err(Error::precondition("divided powers need an element without constant term"));
        }
        Ok(())
    }

    /// The divided square:
    /// `γ₂(Σ cⱼmⱼ) = Σ cⱼ²γ₂(mⱼ) + Σ_{j<l} cⱼc_l mⱼm_l`, where `γ₂` of a
    /// product of two or more factors is zero and `γ₂γ_{2^e} = γ_{2^{e+1}}`.
    pub fn gamma2<R: CoeffRing<Elem = C>>(&self, ring: &R) -> Result<Self> {
        self.require_augmented()?;
        let terms: Vec<_> = self.terms.iter().collect();
        let mut out = Self::zero();
        for (k, (m, c)) in terms.iter().enumerate() {
            if let Some(f) = m.as_factor() {
                let sq = Monomial::factor(f.gen.clone(), f.log2 + 1);
                out.add_term(sq, ring.mul(c, c), ring);
            }
            for (m2, c2) in &terms[k + 1..] {
                if let Some(p) = m.mul(m2) {
                    out.add_term(p, ring.mul(c, c2), ring);
                }
            }
        }
        Ok(out)
    }

    /// `γ_k` as the product of `γ₂^{e}` over the binary digits `2^e` of `k`.
    pub fn gamma<R: CoeffRing<Elem = C>>(&self, k: u64, ring: &R) -> Result<Self> {
        self.require_augmented()?;
        match k {
            0 => return Ok(Self::one(ring)),
            1 => return Ok(self.clone()),
            _ => {}
        }
        let mut out = Self::one(ring);
        let mut iterate = self.clone();
        let mut rest = k;
        while rest > 0 {
            if rest & 1 == 1 {
                out = out.mul(&iterate, ring);
                if out.is_zero() {
                    return Ok(out);
                }
            }
            rest >>= 1;
            if rest > 0 {
                iterate = iterate.gamma2(ring)?;
            }
        }
        Ok(out)
    }

    /// Drops every monomial that is a product of two or more factors.
    pub fn modulo_products(&self) -> Self {
        DpElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == 1)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image in the indecomposables: only bare generators survive, since
    /// products and divided powers `γ_{2^e}`, `e ≥ 1`, are decomposable.
    pub fn indecomposable_part(&self) -> Self {
        DpElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.as_factor().is_some_and(|f| f.log2 == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<G: Display, C> DpElement<G, C> {
    /// Renders with a caller-supplied coefficient printer; `None` from the
    /// printer means the coefficient is 1 and is omitted.
    pub fn display_with<F>(&self, coef: F) -> String
    where
        F: Fn(&C) -> Option<String>,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match coef(c) {
                None => m.to_string(),
                Some(s) if m.factors.is_empty() => format!("({s})"),
                Some(s) => format!("({s}) {m}"),
            })
            .collect();
        parts.join(" + ")
    }
}
