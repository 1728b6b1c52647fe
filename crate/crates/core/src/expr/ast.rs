use std::fmt;

use serde::{Deserialize, Serialize};

use crate::delta::{reduce, DeltaElement, DeltaWord};
use crate::error::Result;
use crate::f2::Gf2;
use crate::gamma::{delta_act, BaseGen, FreeGenerator, SElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Delta,
    SElement,
    RingElement,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Delta(DeltaAst),
    S(SAst),
    Ring(RingAst),
    Mixed(MixedAst),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Delta(a) => a.fmt(f),
            Expr::S(a) => a.fmt(f),
            Expr::Ring(a) => a.fmt(f),
            Expr::Mixed(a) => a.fmt(f),
        }
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str, empty: &str) -> fmt::Result {
    if items.is_empty() {
        return f.write_str(empty);
    }
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// A sum of δ-words, not yet reduced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaAst {
    pub words: Vec<DeltaWord>,
}

impl fmt::Display for DeltaAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.words, " + ", "0")
    }
}

/// `γ_k(δ_I x_{n,idx})`; `gamma == 1` prints without the `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAst {
    pub gamma: u64,
    pub word: DeltaWord,
    pub base: BaseGen,
}

impl fmt::Display for FactorAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = if self.word.is_empty() { self.base.to_string() } else { format!("{} {}", self.word, self.base) };
        if self.gamma == 1 {
            f.write_str(&inner)
        } else {
            write!(f, "g{}({inner})", self.gamma)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct STermAst {
    pub factors: Vec<FactorAst>,
}

impl fmt::Display for STermAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.factors, " * ", "1")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SAst {
    pub terms: Vec<STermAst>,
}

impl fmt::Display for SAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.terms, " + ", "0")
    }
}

/// Monomials as lists of `(variable, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingAst {
    pub monomials: Vec<Vec<(String, u32)>>,
}

impl fmt::Display for RingAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter()
                        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedTermAst {
    pub coef: String,
    pub gen: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedAst {
    pub terms: Vec<MixedTermAst>,
}

impl fmt::Display for MixedAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.terms).expect("serialisable"))
    }
}

/// Reduces the parsed sum to admissible form.
pub fn eval_delta(ast: &DeltaAst) -> Result<DeltaElement> {
    reduce(ast.words.iter().cloned())
}

/// The element of `𝒮(W)` a parsed expression denotes: words act through
/// [`delta_act`], `g{k}` through the divided powers.
pub fn eval_s(ast: &SAst) -> Result<SElement> {
    let mut sum = SElement::zero();
    for term in &ast.terms {
        let mut product = SElement::one(&Gf2);
        for factor in &term.factors {
            let mut x = SElement::from_generator(FreeGenerator::base_generator(factor.base));
            for &i in factor.word.indices().iter().rev() {
                x = delta_act(i, &x)?;
            }
            product = product.mul(&x.gamma(factor.gamma, &Gf2)?, &Gf2);
        }
        sum = sum.add(&product, &Gf2);
    }
    Ok(sum)
}

/// A single free generator `δ_I x_n` written literally (admissible, `e(I) < n`).
pub fn eval_generator(ast: &SAst) -> Result<FreeGenerator> {
    match ast.terms.as_slice() {
        [STermAst { factors }] => match factors.as_slice() {
            [FactorAst { gamma: 1, word, base }] => FreeGenerator::new(*base, word.clone()),
            _ => Err(crate::Error::precondition("expected a single generator such as `x3` or `d2 x3`")),
        },
        _ => Err(crate::Error::precondition("expected a single generator such as `x3` or `d2 x3`")),
    }
}
