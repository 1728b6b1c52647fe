//! The homotopy `𝒮(W)` of free simplicial commutative algebras over GF(2).
//!
//! For a single generator `x_n` of degree `n`, `𝒮(F(n))` is the free divided
//! power algebra on the classes `δ_I x_n` with `I` admissible and of excess
//! below `n`; for general `W` one takes one such generator per basis vector.
//! Weight is 1 on `x_n` and doubles under each `δ_i`.

mod action;
mod axioms;
pub mod divided_power;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use action::{delta_act, nilpotency_probe, q_project, ProbeKind, ProbeOutcome, ProbeReport};
pub use axioms::{gamma_axiom_suite, AxiomOutcome, AxiomReport, SamplePool};
pub use divided_power::{enumerate_monomials, DpElement, GammaFactor, Generator, Monomial};

use crate::delta::DeltaWord;
use crate::error::{check_range, Error, Result};
use crate::f2::{GradedDims, Gf2};

/// A polynomial generator `x_{n,index}` of `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseGen {
    pub degree: u64,
    pub index: u32,
}

impl BaseGen {
    pub fn new(degree: u64) -> Self {
        BaseGen { degree, index: 0 }
    }

    pub fn with_index(degree: u64, index: u32) -> Self {
        BaseGen { degree, index }
    }
}

impl fmt::Display for BaseGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "x{}", self.degree)
        } else {
            write!(f, "x{}:{}", self.degree, self.index)
        }
    }
}

/// `δ_I x_n` with `I` admissible and `e(I) < n`: a free divided power
/// generator of `𝒮(W)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeGenerator {
    base: BaseGen,
    word: DeltaWord,
}

impl FreeGenerator {
    pub fn new(base: BaseGen, word: DeltaWord) -> Result<Self> {
        check_range(base.degree)?;
        if base.degree == 0 {
            return Err(Error::precondition("generator degree must be positive"));
        }
        if !word.is_admissible() {
            return Err(Error::precondition(format!("{word} is not admissible")));
        }
        if !word.is_empty() && word.excess() >= base.degree as i64 {
            return Err(Error::precondition(format!(
                "excess {} of {word} is not below the degree {}",
                word.excess(),
                base.degree
            )));
        }
        Ok(FreeGenerator { base, word })
    }

    pub fn base_generator(base: BaseGen) -> Self {
        FreeGenerator { base, word: DeltaWord::identity() }
    }

    pub fn base(&self) -> BaseGen {
        self.base
    }

    pub fn word(&self) -> &DeltaWord {
        &self.word
    }
}

impl Generator for FreeGenerator {
    fn degree(&self) -> u64 {
        self.base.degree + self.word.degree()
    }

    fn weight(&self) -> u64 {
        1 << self.word.len()
    }
}

impl fmt::Display for FreeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} {}", self.word, self.base)
        }
    }
}

pub type SMonomial = Monomial<FreeGenerator>;
/// Element of `𝒮(W)`; the coefficient of every stored monomial is 1.
pub type SElement = DpElement<FreeGenerator, bool>;

impl SElement {
    pub fn from_generator(g: FreeGenerator) -> Self {
        SElement::generator(g, &Gf2)
    }

    pub fn from_monomials<I: IntoIterator<Item = SMonomial>>(it: I) -> Self {
        let mut out = SElement::zero();
        for m in it {
            out.add_term(m, true, &Gf2);
        }
        out
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|_| None))
    }
}

/// All admissible words of degree at most `max_degree`, the empty word included.
pub fn admissible_words(max_degree: u64) -> Vec<DeltaWord> {
    fn grow(word: Vec<u64>, degree: u64, max: u64, out: &mut Vec<DeltaWord>) {
        // prepend a new outermost index a ≥ 2·(current first)
        let min = word.first().map_or(2, |&i| 2 * i);
        let mut a = min;
        while degree + a <= max {
            let mut next = Vec::with_capacity(word.len() + 1);
            next.push(a);
            next.extend_from_slice(&word);
            out.push(DeltaWord::from_raw(next.clone()));
            grow(next, degree + a, max, out);
            a += 1;
        }
    }
    let mut out = vec![DeltaWord::identity()];
    grow(Vec::new(), 0, max_degree, &mut out);
    out
}

/// Free divided power generators `δ_I x` of `𝒮` on one generator `x` with
/// `deg δ_I x ≤ max_degree`, sorted by degree then word.
pub fn s_generators_for(base: BaseGen, max_degree: u64) -> Vec<FreeGenerator> {
    if base.degree > max_degree {
        return Vec::new();
    }
    let n = base.degree as i64;
    let mut gens: Vec<FreeGenerator> = admissible_words(max_degree - base.degree)
        .into_iter()
        .filter(|w| w.is_empty() || w.excess() < n)
        .map(|word| FreeGenerator { base, word })
        .collect();
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.word.cmp(&b.word)));
    gens
}

pub fn s_generators(n: u64, max_degree: u64) -> Result<Vec<FreeGenerator>> {
    check_range(n)?;
    check_range(max_degree)?;
    if n == 0 {
        return Err(Error::precondition("generator degree must be positive"));
    }
    Ok(s_generators_for(BaseGen::new(n), max_degree))
}

/// The polynomial generators of `W`, one per unit of dimension.
pub fn base_generators(w: &GradedDims) -> Result<Vec<BaseGen>> {
    let mut out = Vec::new();
    for (degree, mult) in w.iter() {
        check_range(degree)?;
        if degree == 0 {
            return Err(Error::precondition("generator degrees must be at least 1"));
        }
        let mult = u32::try_from(check_range(mult)?).expect("checked");
        out.extend((0..mult).map(|index| BaseGen::with_index(degree, index)));
    }
    Ok(out)
}

pub fn free_generators(w: &GradedDims, max_degree: u64) -> Result<Vec<FreeGenerator>> {
    check_range(max_degree)?;
    Ok(base_generators(w)?
        .into_iter()
        .flat_map(|b| s_generators_for(b, max_degree))
        .collect())
}

/// Dimensions of `𝒮(W)` split by weight: `weight -> (degree -> dim)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightedDims {
    by_weight: BTreeMap<u64, GradedDims>,
}

impl WeightedDims {
    pub fn get(&self, weight: u64, degree: u64) -> u64 {
        self.by_weight.get(&weight).map_or(0, |d| d.get(degree))
    }

    pub fn add(&mut self, weight: u64, degree: u64, dim: u64) {
        if dim > 0 {
            self.by_weight.entry(weight).or_default().add(degree, dim);
        }
    }

    pub fn slice(&self, weight: u64) -> GradedDims {
        self.by_weight.get(&weight).cloned().unwrap_or_default()
    }

    /// Nonzero `(weight, degree, dim)` entries, by weight then degree.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        self.by_weight
            .iter()
            .flat_map(|(&w, dims)| dims.iter().map(move |(d, n)| (w, d, n)))
    }

    /// Sum over all weights.
    pub fn total(&self) -> GradedDims {
        self.iter().map(|(_, d, n)| (d, n)).collect()
    }
}

/// The monomial basis of `𝒮(W)` through `max_degree` with its counts.
#[derive(Debug, Clone)]
pub struct SBasis {
    pub monomials: Vec<SMonomial>,
    pub dims: GradedDims,
    pub weighted: WeightedDims,
}

pub fn s_basis(w: &GradedDims, max_degree: u64) -> Result<SBasis> {
    let gens = free_generators(w, max_degree)?;
    let monomials = enumerate_monomials(&gens, max_degree);
    let mut dims = GradedDims::new();
    let mut weighted = WeightedDims::default();
    for m in &monomials {
        dims.add(m.degree(), 1);
        weighted.add(m.weight(), m.degree(), 1);
    }
    Ok(SBasis { monomials, dims, weighted })
}

/// Counts only: `∏ (1 + q^{deg} w^{wt})` over the factors `γ_{2^e}(g)`,
/// truncated at `max_degree`. Agrees with [`s_basis`] without listing.
pub fn s_dims(w: &GradedDims, max_degree: u64) -> Result<WeightedDims> {
    let gens = free_generators(w, max_degree)?;
    let mut series: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    series.insert((0, 0), 1);
    for g in &gens {
        let mut e = 0;
        while g.degree() << e <= max_degree {
            let (deg, wt) = (g.degree() << e, g.weight() << e);
            let shifted: Vec<_> = series
                .iter()
                .filter(|(&(_, d), _)| d + deg <= max_degree)
                .map(|(&(w, d), &n)| ((w + wt, d + deg), n))
                .collect();
            for (k, n) in shifted {
                *series.entry(k).or_insert(0) += n;
            }
            e += 1;
        }
    }
    let mut out = WeightedDims::default();
    for ((w, d), n) in series {
        out.add(w, d, n);
    }
    Ok(out)
}
