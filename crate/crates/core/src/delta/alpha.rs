use serde::Serialize;

use super::{reduce, DeltaElement, DeltaWord};
use crate::error::{check_range, Error, Result};
use crate::f2::binom_mod2;

/// A composite `α_{a₁}…α_{a_s}` acting on a class of degree `source_degree`,
/// applied rightmost first. On a class of degree `m`, `α_a = δ_{m−a}` and
/// lands in degree `2m − a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaWord {
    pub indices: Vec<u64>,
    pub source_degree: u64,
}

impl AlphaWord {
    pub fn new(indices: Vec<u64>, source_degree: u64) -> Self {
        AlphaWord { indices, source_degree }
    }

    /// `α_a` applied `times` times.
    pub fn power(a: u64, times: usize, source_degree: u64) -> Self {
        AlphaWord::new(vec![a; times], source_degree)
    }
}

/// Converts to δ-form while tracking the running degree. No Adem reduction.
pub fn alpha_to_delta(w: &AlphaWord) -> Result<DeltaWord> {
    let mut m = check_range(w.source_degree)?;
    let mut out = Vec::with_capacity(w.indices.len());
    for (k, &a) in w.indices.iter().enumerate().rev() {
        check_range(a)?;
        if m < 2 || a > m - 2 {
            return Err(Error::AlphaConstraint { position: k, index: a, degree: m });
        }
        out.push(m - a);
        m = 2 * m - a;
    }
    out.reverse();
    Ok(DeltaWord::from_raw(out))
}

/// Both sides of the α-form Adem relation for `α_iα_j` on degree `n`, each
/// reduced to admissible δ-form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaAdemCheck {
    pub holds: bool,
    #[serde(serialize_with = "ser_display")]
    pub left: DeltaElement,
    #[serde(serialize_with = "ser_display")]
    pub right: DeltaElement,
    /// `s` values with odd coefficient whose term is not defined on degree `n`.
    pub dropped: Vec<u64>,
}

fn ser_display<S: serde::Serializer>(e: &DeltaElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

/// Verifies `α_iα_j = Σ binom(i−s−1, s−j) α_{i+2j−2s}α_s` on a class of
/// degree `n`, over integer `s` in `[⌈(i+2j)/3⌉, ⌊(i+j−1)/2⌋]`, by converting
/// every composite to δ-form and reducing.
pub fn alpha_adem_check(i: u64, j: u64, n: u64) -> Result<AlphaAdemCheck> {
    if j >= i {
        return Err(Error::precondition(format!("need j < i, got i = {i}, j = {j}")));
    }
    let left = reduce([alpha_to_delta(&AlphaWord::new(vec![i, j], n))?])?;

    let lo = (i + 2 * j).div_ceil(3);
    let hi = (i + j - 1) / 2;
    let mut words = Vec::new();
    let mut dropped = Vec::new();
    for s in lo..=hi {
        if !binom_mod2(i - s - 1, s - j) {
            continue;
        }
        let Some(first) = (i + 2 * j).checked_sub(2 * s) else {
            dropped.push(s);
            continue;
        };
        match alpha_to_delta(&AlphaWord::new(vec![first, s], n)) {
            Ok(w) => words.push(w),
            Err(Error::AlphaConstraint { .. }) => dropped.push(s),
            Err(e) => return Err(e),
        }
    }
    let right = reduce(words)?;
    Ok(AlphaAdemCheck { holds: left == right, left, right, dropped })
}
