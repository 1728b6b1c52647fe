//! The unstable action of the `δ_i` on `𝒮(W)`.

use std::fmt;

use serde::Serialize;

use super::{BaseGen, FreeGenerator, SElement, SMonomial};
use crate::delta::{reduce, DeltaWord};
use crate::error::{check_range, Error, Result};
use crate::f2::Gf2;
use crate::gamma::{GammaFactor, Generator, Monomial};

/// `δ_K x_n` for admissible `K`, as a basis monomial of `𝒮(W)`.
///
/// Leading indices equal to the degree they act on are top operations, i.e.
/// divided squares, and are peeled into `γ_{2^p}`. `None` when the remaining
/// word has excess above `n` (instability).
fn word_on_base(base: BaseGen, word: &DeltaWord) -> Option<SMonomial> {
    debug_assert!(word.is_admissible());
    let n = base.degree as i64;
    let mut rest = word.clone();
    let mut peeled = 0u32;
    while !rest.is_empty() && rest.excess() == n {
        rest = rest.tail();
        peeled += 1;
    }
    if !rest.is_empty() && rest.excess() > n {
        return None;
    }
    Some(Monomial::factor(FreeGenerator { base, word: rest }, peeled))
}

/// The word `K` with `δ_K x_n = γ_{2^e}(δ_J x_n)`: the `e` top indices on top of `J`.
fn factor_as_word(f: &GammaFactor<FreeGenerator>) -> DeltaWord {
    let d0 = f.gen.degree();
    let mut word = f.gen.word().clone();
    for k in 0..f.log2 {
        word = word.prepend(d0 << k);
    }
    word
}

/// `δ_i x` for `x` homogeneous.
///
/// Vanishes when `i` exceeds the degree. At `i` equal to the degree this is
/// the divided square, which is not additive. Below the degree the action is
/// additive, kills every product of two positive-degree classes (Cartan), and
/// on `γ_{2^e}(δ_J x_n)` is computed by Adem-reducing `δ_i` against the full
/// word and reading the admissible terms back as basis monomials.
pub fn delta_act(i: u64, x: &SElement) -> Result<SElement> {
    check_range(i)?;
    if i < 2 {
        return Err(Error::IndexBelowTwo { index: i });
    }
    let Some(m) = x.homogeneous_degree()? else {
        return Ok(SElement::zero());
    };
    if i > m {
        return Ok(SElement::zero());
    }
    if i == m {
        return x.gamma2(&Gf2);
    }
    let mut out = SElement::zero();
    for mono in x.monomials() {
        let Some(f) = mono.as_factor() else { continue };
        let word = factor_as_word(f).prepend(i);
        for k in reduce([word])?.terms() {
            if let Some(b) = word_on_base(f.gen.base(), k) {
                out.add_term(b, true, &Gf2);
            }
        }
    }
    Ok(out)
}

/// Projection to the indecomposables `Q𝒮(W)`: the span of the free generators.
pub fn q_project(x: &SElement) -> SElement {
    x.indecomposable_part()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum ProbeKind {
    /// `α₀ = γ₂`, i.e. `δ_m` on degree `m`.
    Gamma2,
    /// `α_k = δ_{m−k}` on degree `m`.
    Alpha(u64),
    /// `α₁ = δ_{m−1}`.
    Andre,
}

impl ProbeKind {
    fn alpha_index(self) -> u64 {
        match self {
            ProbeKind::Gamma2 => 0,
            ProbeKind::Alpha(k) => k,
            ProbeKind::Andre => 1,
        }
    }
}

impl fmt::Display for ProbeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeKind::Gamma2 => f.write_str("gamma2"),
            ProbeKind::Alpha(k) => write!(f, "alpha:{k}"),
            ProbeKind::Andre => f.write_str("andre"),
        }
    }
}

impl std::str::FromStr for ProbeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma2" => Ok(ProbeKind::Gamma2),
            "andre" => Ok(ProbeKind::Andre),
            _ => match s.strip_prefix("alpha:").map(str::parse::<u64>) {
                Some(Ok(k)) => Ok(ProbeKind::Alpha(check_range(k)?)),
                _ => Err(Error::Unknown(s.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum ProbeOutcome {
    /// The `order`-th iterate is zero in the indecomposables.
    Nilpotent { order: usize },
    NonvanishingThrough { iterations: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub outcome: ProbeOutcome,
    /// Iterates `1..`, each already projected to the indecomposables.
    pub iterates: Vec<SElement>,
}

/// Iterates an α-operation on a free generator inside `Q𝒮(W)`.
pub fn nilpotency_probe(kind: ProbeKind, start: &FreeGenerator, max_iter: usize) -> Result<ProbeReport> {
    let mut current = SElement::from_generator(start.clone());
    let mut iterates = Vec::new();
    for stage in 1..=max_iter {
        let m = current.homogeneous_degree()?.expect("nonzero iterate");
        let index = m as i64 - kind.alpha_index() as i64;
        if index < 2 {
            return Err(Error::DomainBoundary { stage, degree: m, index });
        }
        current = q_project(&delta_act(index as u64, &current)?);
        iterates.push(current.clone());
        if current.is_zero() {
            return Ok(ProbeReport { outcome: ProbeOutcome::Nilpotent { order: stage }, iterates });
        }
    }
    Ok(ProbeReport { outcome: ProbeOutcome::NonvanishingThrough { iterations: max_iter }, iterates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::theta;
    use crate::gamma::{enumerate_monomials, free_generators};

    fn x(n: u64) -> FreeGenerator {
        FreeGenerator::base_generator(BaseGen::new(n))
    }

    fn gen(n: u64, word: &[u64]) -> FreeGenerator {
        FreeGenerator::new(BaseGen::new(n), DeltaWord::new(word.to_vec()).unwrap()).unwrap()
    }

    fn el(g: FreeGenerator) -> SElement {
        SElement::from_generator(g)
    }

    fn gamma(e: u32, g: FreeGenerator) -> SElement {
        SElement::from_monomials([Monomial::factor(g, e)])
    }

    #[test]
    fn probe_kind_round_trip() {
        for k in [ProbeKind::Gamma2, ProbeKind::Andre, ProbeKind::Alpha(5)] {
            assert_eq!(k.to_string().parse::<ProbeKind>().unwrap(), k);
        }
        assert!("alpha:".parse::<ProbeKind>().is_err());
        assert!("beta".parse::<ProbeKind>().is_err());
    }

    #[test]
    fn top_is_divided_square() {
        assert_eq!(delta_act(3, &el(x(3))).unwrap(), gamma(1, x(3)));
    }

    #[test]
    fn unstable_vanishing() {
        assert!(delta_act(4, &el(x(3))).unwrap().is_zero());
    }

    #[test]
    fn low_index_on_divided_square() {
        assert!(delta_act(2, &gamma(1, x(3))).unwrap().is_zero());
    }

    #[test]
    fn iterated_generators() {
        let a = delta_act(2, &el(x(3))).unwrap();
        assert_eq!(a, el(gen(3, &[2])));
        let b = delta_act(4, &a).unwrap();
        assert_eq!(b, el(gen(3, &[4, 2])));
        // δ₅ on δ₂x₃ is its divided square
        assert_eq!(delta_act(5, &a).unwrap(), gamma(1, gen(3, &[2])));
        // δ₁₀ on γ₂(δ₂x₃) is γ₄(δ₂x₃)
        assert_eq!(delta_act(10, &gamma(1, gen(3, &[2]))).unwrap(), gamma(2, gen(3, &[2])));
    }

    #[test]
    fn top_on_sum_has_cross_term() {
        let y = FreeGenerator::base_generator(BaseGen::with_index(4, 1));
        let s = el(x(4)).add(&el(y.clone()), &Gf2);
        let expect = gamma(1, x(4))
            .add(&gamma(1, y.clone()), &Gf2)
            .add(&el(x(4)).mul(&el(y), &Gf2), &Gf2);
        assert_eq!(delta_act(4, &s).unwrap(), expect);
    }

    #[test]
    fn cartan_vanishing() {
        let w = [(2, 1), (3, 2)].into_iter().collect();
        let gens = free_generators(&w, 14).unwrap();
        for mono in enumerate_monomials(&gens, 14).into_iter().filter(|m| m.len() >= 2) {
            let x = SElement::from_monomials([mono.clone()]);
            let m = mono.degree();
            for i in 2..m {
                assert!(delta_act(i, &x).unwrap().is_zero(), "δ_{i}({mono})");
            }
        }
    }

    #[test]
    fn weight_doubles() {
        let w = [(3, 1), (4, 1)].into_iter().collect();
        for g in free_generators(&w, 20).unwrap() {
            for i in 2..=g.degree() {
                let img = delta_act(i, &el(g.clone())).unwrap();
                for mono in img.monomials() {
                    assert_eq!(mono.weight(), 2 * g.weight());
                }
            }
        }
    }

    #[test]
    fn q_projection() {
        let x3 = el(x(3));
        let prod = SElement::from_monomials([x3.monomials().next().unwrap().mul(
            &Monomial::factor(gen(3, &[2]), 0),
        )
        .unwrap()]);
        assert_eq!(q_project(&x3.add(&prod, &Gf2)), x3);
        assert!(q_project(&gamma(1, x(3))).is_zero());
        assert_eq!(q_project(&el(gen(3, &[2]))), el(gen(3, &[2])));
    }

    #[test]
    fn probe_alpha_top() {
        for n in 3..=6 {
            let r = nilpotency_probe(ProbeKind::Alpha(n - 2), &x(n), 6).unwrap();
            assert_eq!(r.outcome, ProbeOutcome::NonvanishingThrough { iterations: 6 });
            for (s, it) in r.iterates.iter().enumerate() {
                let w = theta(s as u32 + 1, 0).unwrap();
                assert_eq!(it, &el(FreeGenerator::new(BaseGen::new(n), w).unwrap()));
            }
        }
    }

    #[test]
    fn probe_gamma2_and_andre() {
        let r = nilpotency_probe(ProbeKind::Gamma2, &x(5), 3).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::Nilpotent { order: 1 });

        let r = nilpotency_probe(ProbeKind::Andre, &x(3), 4).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::NonvanishingThrough { iterations: 4 });
        assert_eq!(r.iterates[0], el(gen(3, &[2])));
        assert_eq!(r.iterates[1], el(gen(3, &[4, 2])));
        assert_eq!(r.iterates[2], el(gen(3, &[8, 4, 2])));
    }

    #[test]
    fn probe_domain_boundary() {
        assert!(matches!(
            nilpotency_probe(ProbeKind::Andre, &x(2), 3),
            Err(Error::DomainBoundary { stage: 1, degree: 2, index: 1 })
        ));
    }
}
