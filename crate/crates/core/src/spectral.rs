//! E¹ pages of Quillen's fundamental spectral sequence in characteristic 2.
//!
//! `E¹_{s,t} = 𝒮_s(H)_t`: the weight-`s`, degree-`t` part of `𝒮` applied to
//! the André-Quillen homology `H`. Only the page itself is tabulated; its
//! differentials `d_r: E^r_{s,t} → E^r_{s+r,t−1}` depend on more than `H`.

use std::fmt;

use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::f2::GradedDims;
use crate::gamma::{s_dims, WeightedDims};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Table {
    pub input_hq: GradedDims,
    pub max_t: u64,
    entries: WeightedDims,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    pub s: u64,
    pub t: u64,
    pub dim: u64,
}

impl E1Table {
    pub fn dim(&self, s: u64, t: u64) -> u64 {
        if t > self.max_t {
            return 0;
        }
        self.entries.get(s, t)
    }

    /// Nonzero entries ordered by `t`, then `s`.
    pub fn entries(&self) -> Vec<E1Entry> {
        let mut out: Vec<E1Entry> = self.entries.iter().map(|(s, t, dim)| E1Entry { s, t, dim }).collect();
        out.sort_by_key(|e| (e.t, e.s));
        out
    }

    /// `max{t : H_t ≠ 0}`.
    pub fn aq_dim(&self) -> Option<u64> {
        self.input_hq.max_degree()
    }

    /// `min{t : H_t ≠ 0} − 1`.
    pub fn conn(&self) -> Option<u64> {
        self.input_hq.min_degree().map(|d| d - 1)
    }

    /// Largest weight with a nonzero entry.
    pub fn max_s(&self) -> u64 {
        self.entries.iter().map(|(s, _, _)| s).max().unwrap_or(0)
    }

    /// `Σ_s E¹_{s,t}` for each `t`.
    pub fn totals(&self) -> GradedDims {
        self.entries.total()
    }

    /// The same entries indexed by complementary degree `t − s`.
    pub fn complementary(&self) -> Vec<(u64, u64, u64)> {
        self.entries().into_iter().map(|e| (e.s, e.t - e.s, e.dim)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "aq_dim": self.aq_dim(),
            "conn": self.conn(),
            "entries": self.entries(),
        })
    }
}

impl fmt::Display for E1Table {
    /// One row per `t`, ascending; columns are weights `s = 0..=max_s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.max_s();
        let width = self
            .entries()
            .iter()
            .map(|e| e.dim.to_string().len())
            .chain([cols.to_string().len(), 1])
            .max()
            .unwrap_or(1);
        write!(f, "{:>4} |", "t\\s")?;
        for s in 0..=cols {
            write!(f, " {s:>width$}")?;
        }
        writeln!(f)?;
        for t in 0..=self.max_t {
            write!(f, "{t:>4} |")?;
            for s in 0..=cols {
                match self.dim(s, t) {
                    0 => write!(f, " {:>width$}", ".")?,
                    n => write!(f, " {n:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Tabulates `dim 𝒮_s(hq)_t` for `t ≤ max_t`. The input must be connected:
/// nothing in degree 0.
pub fn e1_page(hq: &GradedDims, max_t: u64) -> Result<E1Table> {
    check_range(max_t)?;
    if hq.get(0) != 0 {
        return Err(Error::precondition("André-Quillen homology must vanish in degree 0 (connected input)"));
    }
    let entries = s_dims(hq, max_t)?;
    Ok(E1Table { input_hq: hq.clone(), max_t, entries })
}
