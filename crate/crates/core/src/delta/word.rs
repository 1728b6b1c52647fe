use std::fmt;

use crate::error::{check_range, Error, Result};

/// A composite `δ_{i₁}…δ_{i_s}`; the empty word is the identity operation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaWord(Vec<u64>);

impl DeltaWord {
    /// Checks that every index is at least 2 and below 2^32.
    pub fn new(indices: Vec<u64>) -> Result<Self> {
        for &i in &indices {
            check_range(i)?;
            if i < 2 {
                return Err(Error::IndexBelowTwo { index: i });
            }
        }
        Ok(DeltaWord(indices))
    }

    pub fn identity() -> Self {
        DeltaWord(Vec::new())
    }

    pub(crate) fn from_raw(indices: Vec<u64>) -> Self {
        debug_assert!(indices.iter().all(|&i| i >= 2));
        DeltaWord(indices)
    }

    pub fn indices(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i_t ≥ 2·i_{t+1}` for every adjacent pair.
    pub fn is_admissible(&self) -> bool {
        self.first_inadmissible().is_none()
    }

    /// `i₁ − i₂ − … − i_s`, and 0 for the identity.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&first, rest)) => first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
        }
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `Σ t·i_t` with 1-based positions. One Adem step strictly lowers it.
    pub fn moment(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(t, &i)| (t as u64 + 1) * i)
            .sum()
    }

    /// Position `p` of the leftmost pair with `i_p < 2·i_{p+1}`.
    pub fn first_inadmissible(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] < 2 * w[1])
    }

    pub fn last_inadmissible(&self) -> Option<usize> {
        self.0.windows(2).rposition(|w| w[0] < 2 * w[1])
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn concat(&self, other: &DeltaWord) -> DeltaWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        DeltaWord(v)
    }

    /// The word with `index` applied after `self`.
    pub fn prepend(&self, index: u64) -> DeltaWord {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(index);
        v.extend_from_slice(&self.0);
        DeltaWord(v)
    }

    /// The word with its first (outermost) index removed.
    pub fn tail(&self) -> DeltaWord {
        DeltaWord(self.0.get(1..).unwrap_or_default().to_vec())
    }
}

impl fmt::Display for DeltaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "d{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> DeltaWord {
        DeltaWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(w(&[4, 2]).is_admissible());
        assert!(!w(&[5, 4]).is_admissible());
        assert!(DeltaWord::identity().is_admissible());
        assert!(w(&[9, 4, 2]).is_admissible());
        assert!(!w(&[9, 4, 3]).is_admissible());
    }

    #[test]
    fn statistics() {
        let a = w(&[4, 2]);
        assert_eq!((a.excess(), a.degree(), a.len()), (2, 6, 2));
        let b = w(&[8, 4, 2]);
        assert_eq!((b.excess(), b.degree(), b.len()), (2, 14, 3));
        let c = w(&[2]);
        assert_eq!((c.excess(), c.degree(), c.len()), (2, 2, 1));
        assert_eq!(DeltaWord::identity().excess(), 0);
    }

    #[test]
    fn rejects_bad_indices() {
        assert_eq!(DeltaWord::new(vec![4, 1]), Err(Error::IndexBelowTwo { index: 1 }));
        assert_eq!(
            DeltaWord::new(vec![1 << 32]),
            Err(Error::Range { value: 1 << 32 })
        );
        assert!(DeltaWord::new(vec![(1 << 32) - 1]).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[4, 2]).to_string(), "d4 d2");
        assert_eq!(DeltaWord::identity().to_string(), "e");
    }
}
