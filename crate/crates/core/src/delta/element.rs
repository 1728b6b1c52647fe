use std::collections::BTreeSet;
use std::fmt;

use super::DeltaWord;
use crate::error::{check_range, Error, Result};
use crate::f2::binom_mod2_signed;

/// A GF(2) combination of admissible words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DeltaElement {
    terms: BTreeSet<DeltaWord>,
}

impl DeltaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_admissible(DeltaWord::identity())
    }

    /// # Panics
    /// If `word` is not admissible.
    pub fn from_admissible(word: DeltaWord) -> Self {
        assert!(word.is_admissible(), "{word} is not admissible");
        let mut terms = BTreeSet::new();
        terms.insert(word);
        Self { terms }
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

    pub fn contains(&self, w: &DeltaWord) -> bool {
        self.terms.contains(w)
    }

    /// Terms in increasing lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &DeltaWord> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Toggles one admissible word.
    pub(crate) fn toggle(&mut self, w: DeltaWord) {
        debug_assert!(w.is_admissible());
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    /// Sum over GF(2).
    pub fn add(&self, other: &DeltaElement) -> DeltaElement {
        DeltaElement {
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn compose(&self, other: &DeltaElement) -> DeltaElement {
        compose(self, other)
    }
}

impl fmt::Display for DeltaElement {
    /// Words in descending lexicographic order, joined by ` + `; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, w) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Pairs `(i+j−s, s)` with odd coefficient in the Adem expansion of `δ_iδ_j`,
/// assuming `i < 2j`.
fn adem_terms(i: u64, j: u64) -> impl Iterator<Item = (u64, u64)> {
    let lo = (i + 2) / 2;
    let hi = (i + j) / 3;
    let (i, j) = (i as i64, j as i64);
    (lo..=hi).filter_map(move |s| {
        let si = s as i64;
        binom_mod2_signed(j - i + si - 1, j - si).then(|| ((i + j - si) as u64, s))
    })
}

/// The Adem relation for an inadmissible pair: `δ_iδ_j` as a combination of
/// admissible length-two words. An empty range of `s` gives zero.
pub fn adem_pair(i: u64, j: u64) -> Result<DeltaElement> {
    for v in [i, j] {
        check_range(v)?;
        if v < 2 {
            return Err(Error::IndexBelowTwo { index: v });
        }
    }
    if i >= 2 * j {
        return Err(Error::precondition(format!(
            "δ_{i}δ_{j} is already admissible (needs i < 2j)"
        )));
    }
    let mut out = DeltaElement::zero();
    for (a, b) in adem_terms(i, j) {
        out.toggle(DeltaWord::from_raw(vec![a, b]));
    }
    Ok(out)
}

/// Rewrites the pair at positions `pos`, `pos + 1` of `word` with one Adem
/// relation. The pair must be inadmissible. Returned words may repeat only if
/// the relation itself repeated a term, which it does not.
pub fn adem_step(word: &DeltaWord, pos: usize) -> Vec<DeltaWord> {
    let idx = word.indices();
    let (i, j) = (idx[pos], idx[pos + 1]);
    debug_assert!(i < 2 * j);
    adem_terms(i, j)
        .map(|(a, b)| {
            let mut v = Vec::with_capacity(idx.len());
            v.extend_from_slice(&idx[..pos]);
            v.push(a);
            v.push(b);
            v.extend_from_slice(&idx[pos + 2..]);
            DeltaWord::from_raw(v)
        })
        .collect()
}

/// Which inadmissible pair a rewriting step picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Admissible normal form of a GF(2) sum of arbitrary words (repeats cancel),
/// by leftmost-pair Adem rewriting.
pub fn reduce<I: IntoIterator<Item = DeltaWord>>(words: I) -> Result<DeltaElement> {
    reduce_with(words, Strategy::Leftmost)
}

pub fn reduce_with<I: IntoIterator<Item = DeltaWord>>(
    words: I,
    strategy: Strategy,
) -> Result<DeltaElement> {
    // Work items are keyed by moment. Every step lowers the moment, so taking
    // the largest first means a popped word can never be produced again and
    // equal words meet (and cancel) while both are still pending.
    let mut pending: BTreeSet<(u64, DeltaWord)> = BTreeSet::new();
    let toggle = |set: &mut BTreeSet<(u64, DeltaWord)>, w: DeltaWord| {
        let key = (w.moment(), w);
        if !set.remove(&key) {
            set.insert(key);
        }
    };
    for w in words {
        for &i in w.indices() {
            check_range(i)?;
            if i < 2 {
                return Err(Error::IndexBelowTwo { index: i });
            }
        }
        toggle(&mut pending, w);
    }

    let mut out = DeltaElement::zero();
    while let Some((_, w)) = pending.pop_last() {
        let pos = match strategy {
            Strategy::Leftmost => w.first_inadmissible(),
            Strategy::Rightmost => w.last_inadmissible(),
        };
        match pos {
            None => out.toggle(w),
            Some(p) => {
                for next in adem_step(&w, p) {
                    toggle(&mut pending, next);
                }
            }
        }
    }
    Ok(out)
}

/// Product in the operation algebra: `a ∘ b`, bilinear over GF(2).
pub fn compose(a: &DeltaElement, b: &DeltaElement) -> DeltaElement {
    let words = a
        .terms()
        .flat_map(|x| b.terms().map(move |y| x.concat(y)))
        .collect::<Vec<_>>();
    reduce(words).expect("admissible inputs have valid indices")
}
