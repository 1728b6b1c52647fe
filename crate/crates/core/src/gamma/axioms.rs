//! Randomised check of the divided power axioms on a free divided power
//! algebra with coefficients in any ring of characteristic 2.
//!
//! Products and `γ_k` are computed through the binary expansion of `k` and
//! iterated divided squares; the axioms are then evaluated literally against
//! that, so each one is a genuine cross-check.

use std::collections::BTreeMap;
use std::fmt::Display;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_monomials, DpElement, Generator, Monomial};
use crate::f2::{binom_mod2, CoeffRing};

/// Homogeneous positive-degree basis monomials to draw samples from.
#[derive(Debug, Clone)]
pub struct SamplePool<G> {
    by_degree: BTreeMap<u64, Vec<Monomial<G>>>,
}

impl<G: Generator> SamplePool<G> {
    pub fn new(gens: &[G], max_degree: u64) -> Self {
        let mut by_degree: BTreeMap<u64, Vec<Monomial<G>>> = BTreeMap::new();
        for m in enumerate_monomials(gens, max_degree) {
            if m.degree() > 0 {
                by_degree.entry(m.degree()).or_default().push(m);
            }
        }
        SamplePool { by_degree }
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.is_empty()
    }

    fn degree<Rn: Rng>(&self, rng: &mut Rn) -> u64 {
        let degs: Vec<u64> = self.by_degree.keys().copied().collect();
        *degs.choose(rng).expect("nonempty pool")
    }

    fn element<R, Rn, F>(&self, degree: u64, ring: &R, coeff: &F, rng: &mut Rn) -> DpElement<G, R::Elem>
    where
        R: CoeffRing,
        Rn: Rng,
        F: Fn(&mut Rn) -> R::Elem,
    {
        let monos = &self.by_degree[&degree];
        let count = rng.gen_range(1..=monos.len().min(3));
        let mut out = DpElement::zero();
        for m in monos.choose_multiple(rng, count) {
            out.add_term(m.clone(), coeff(rng), ring);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub statement: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }

    pub fn instances(&self) -> usize {
        self.outcomes.iter().map(|o| o.instances).sum()
    }
}

const STATEMENTS: [&str; 6] = [
    "γ₀(x) = 1 and γ₁(x) = x",
    "γ_h(x)γ_k(x) = binom(h+k,h)·γ_{h+k}(x)",
    "γ_k(x+y) = Σ_{r+s=k} γ_r(x)γ_s(y)",
    "γ_k(xy) = 0 for k ≥ 2 and x, y of positive degree",
    "γ_k(cy) = c^k·γ_k(y) for c of degree 0",
    "γ_k(γ₂(x)) = γ_{2k}(x)",
];

/// Runs `trials` random instances of each of the six axioms. Trial `t` uses
/// its own generator seeded from `seed` and `t`, so the report does not depend
/// on how trials are scheduled across threads.
pub fn gamma_axiom_suite<G, R, F>(ring: &R, pool: &SamplePool<G>, coeff: F, trials: usize, seed: u64) -> AxiomReport
where
    G: Generator + Display + Send + Sync,
    R: CoeffRing + Sync,
    R::Elem: Send + Sync,
    F: Fn(&mut ChaCha8Rng) -> R::Elem + Sync,
{
    assert!(!pool.is_empty(), "empty sample pool");
    let per_trial: Vec<[Option<String>; 6]> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            run_trial(ring, pool, &coeff, &mut rng)
        })
        .collect();

    let outcomes = (0..6)
        .map(|a| {
            let fails: Vec<&String> = per_trial.iter().filter_map(|r| r[a].as_ref()).collect();
            AxiomOutcome {
                axiom: a as u8 + 1,
                statement: STATEMENTS[a],
                instances: trials,
                failures: fails.len(),
                first_failure: fails.first().map(|s| s.to_string()),
            }
        })
        .collect();
    AxiomReport { outcomes }
}

fn run_trial<G, R, F>(ring: &R, pool: &SamplePool<G>, coeff: &F, rng: &mut ChaCha8Rng) -> [Option<String>; 6]
where
    G: Generator + Display,
    R: CoeffRing,
    F: Fn(&mut ChaCha8Rng) -> R::Elem,
{
    let show = |e: &DpElement<G, R::Elem>| e.display_with(|c| Some(format!("{c:?}")));
    let check = |ok: bool, what: String| if ok { None } else { Some(what) };
    let g = |x: &DpElement<G, R::Elem>, k: u64| x.gamma(k, ring).expect("positive degree");

    let d = pool.degree(rng);
    let x = pool.element(d, ring, coeff, rng);
    let y = pool.element(d, ring, coeff, rng);
    let z = {
        let dz = pool.degree(rng);
        pool.element(dz, ring, coeff, rng)
    };
    let h = rng.gen_range(0..=4u64);
    let k = rng.gen_range(0..=4u64);
    let k2 = rng.gen_range(2..=4u64);
    let c = coeff(rng);

    let one = DpElement::one(ring);
    let a1 = check(g(&x, 0) == one && g(&x, 1) == x, format!("x = {}", show(&x)));

    let lhs = g(&x, h).mul(&g(&x, k), ring);
    let rhs = g(&x, h + k).scale(&ring.bit(binom_mod2(h + k, h)), ring);
    let a2 = check(lhs == rhs, format!("h = {h}, k = {k}, x = {}", show(&x)));

    let sum = x.add(&y, ring);
    let mut expand = DpElement::zero();
    for r in 0..=k {
        expand = expand.add(&g(&x, r).mul(&g(&y, k - r), ring), ring);
    }
    let a3 = check(g(&sum, k) == expand, format!("k = {k}, x = {}, y = {}", show(&x), show(&y)));

    let a4 = check(g(&x.mul(&z, ring), k2).is_zero(), format!("k = {k2}, x = {}, y = {}", show(&x), show(&z)));

    let a5 = check(
        g(&y.scale(&c, ring), k) == g(&y, k).scale(&ring.pow(&c, k), ring),
        format!("k = {k}, c = {c:?}, y = {}", show(&y)),
    );

    let a6 = check(g(&g(&x, 2), k) == g(&x, 2 * k), format!("k = {k}, x = {}", show(&x)));

    [a1, a2, a3, a4, a5, a6]
}
