use serde::Serialize;

use super::{compose, DeltaElement, DeltaWord};
use crate::error::{check_range, Error, Result};

/// `θ(s,t) = δ_{2^{s+t}} δ_{2^{s+t−1}} … δ_{2^{t+1}}`, admissible with every
/// ratio exactly 2. `θ(0,t)` is the identity.
pub fn theta(s: u32, t: u32) -> Result<DeltaWord> {
    let top = s as u64 + t as u64;
    if top >= 32 {
        return Err(Error::Range { value: 1u64.checked_shl(top as u32).unwrap_or(u64::MAX) });
    }
    Ok(DeltaWord::from_raw((t + 1..=s + t).rev().map(|e| 1u64 << e).collect()))
}

/// Outcome of [`annihilation_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Annihilation {
    /// `θ(s,t)·δ_j` reduces to zero and no smaller `s` does.
    Annihilated { s: u32 },
    /// Still nonzero at `s_max`; a larger bound is needed.
    NotWithin { s_max: u32 },
}

impl Annihilation {
    pub fn order(&self) -> Option<u32> {
        match *self {
            Annihilation::Annihilated { s } => Some(s),
            Annihilation::NotWithin { .. } => None,
        }
    }
}

/// Least `s ≤ s_max` with `θ(s,t)δ_j = 0` in the operation algebra.
///
/// Requires `j > 2^t` and `j ≥ 2`. The composite is built one factor at a
/// time, `θ(s,t)δ_j = δ_{2^{s+t}} · (θ(s−1,t)δ_j)`, reducing at each step.
pub fn annihilation_order(j: u64, t: u32, s_max: u32) -> Result<Annihilation> {
    check_range(j)?;
    if t >= 32 {
        return Err(Error::Range { value: t as u64 });
    }
    if j < 2 {
        return Err(Error::IndexBelowTwo { index: j });
    }
    if j <= 1u64 << t {
        return Err(Error::precondition(format!("need j > 2^t, got j = {j}, t = {t}")));
    }
    theta(s_max, t)?;
    let mut current = DeltaElement::from_admissible(DeltaWord::from_raw(vec![j]));
    for s in 1..=s_max {
        let factor = DeltaElement::from_admissible(DeltaWord::from_raw(vec![1u64 << (s + t)]));
        current = compose(&factor, &current);
        if current.is_zero() {
            return Ok(Annihilation::Annihilated { s });
        }
    }
    Ok(Annihilation::NotWithin { s_max })
}
