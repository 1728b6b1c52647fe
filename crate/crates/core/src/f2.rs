//! Arithmetic over the two-element field and graded dimension bookkeeping.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `binom(n, k) mod 2`, by Lucas: odd exactly when the bits of `k` are a subset
/// of the bits of `n`. Zero when `k > n`.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k <= n && k & !n == 0
}

/// Same as [`binom_mod2`] but zero for negative arguments.
pub fn binom_mod2_signed(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && binom_mod2(n as u64, k as u64)
}

/// A commutative ring of scalars of characteristic 2.
///
/// Values carry no context of their own, so every operation goes through the
/// ring. [`Gf2`] is the prime field; quotient rings live in [`crate::artin`].
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn bit(&self, b: bool) -> Self::Elem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }
}

/// The field with two elements; an element is `true` iff it is 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Gf2;

impl CoeffRing for Gf2 {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn pow(&self, a: &bool, k: u64) -> bool {
        k == 0 || *a
    }
}

/// A finite table `degree -> dimension`; absent degrees have dimension 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims {
    entries: BTreeMap<u64, u64>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// The unit `{0: 1}` of [`poincare_merge`].
    pub fn unit() -> Self {
        let mut d = Self::new();
        d.set(0, 1);
        d
    }

    pub fn get(&self, degree: u64) -> u64 {
        self.entries.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: u64, dim: u64) {
        if dim == 0 {
            self.entries.remove(&degree);
        } else {
            self.entries.insert(degree, dim);
        }
    }

    pub fn add(&mut self, degree: u64, dim: u64) {
        let v = self.get(degree) + dim;
        self.set(degree, v);
    }

    /// Nonzero entries in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&d, &n)| (d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Dense vector of dimensions for degrees `0..=max`.
    pub fn to_vec(&self, max: u64) -> Vec<u64> {
        (0..=max).map(|d| self.get(d)).collect()
    }

    pub fn truncate(&self, max: u64) -> Self {
        Self {
            entries: self.entries.range(..=max).map(|(&d, &n)| (d, n)).collect(),
        }
    }
}

impl FromIterator<(u64, u64)> for GradedDims {
    fn from_iter<T: IntoIterator<Item = (u64, u64)>>(iter: T) -> Self {
        let mut d = GradedDims::new();
        for (deg, dim) in iter {
            d.add(deg, dim);
        }
        d
    }
}

/// Degreewise convolution: the product of the two Poincaré series.
pub fn poincare_merge(a: &GradedDims, b: &GradedDims) -> GradedDims {
    let mut out = GradedDims::new();
    for (da, na) in a.iter() {
        for (db, nb) in b.iter() {
            out.add(da + db, na * nb);
        }
    }
    out
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        // numeric key order, not string order
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (d, n) in self.iter() {
            map.serialize_entry(&d.to_string(), &n)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradedDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(d)?;
        let mut out = GradedDims::new();
        for (k, v) in raw {
            if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                return Err(serde::de::Error::custom(format!(
                    "degree key `{k}` is not a nonnegative decimal integer"
                )));
            }
            let deg: u64 = k.parse().map_err(serde::de::Error::custom)?;
            if deg >= crate::error::INDEX_LIMIT {
                return Err(serde::de::Error::custom(format!("degree {deg} out of range")));
            }
            out.add(deg, v);
        }
        Ok(out)
    }
}
