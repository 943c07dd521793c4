use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported semilattice size; element sets are single-word bitmasks.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices stored as a 64-bit mask.
///
/// Iteration is always in ascending index order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < MAX_ELEMENTS);
        ElementSet(1u64 << x)
    }

    /// The set `{0, 1, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// The set `{1, .., n-1}`, i.e. every element except the least one.
    #[inline]
    pub fn nonzero(n: usize) -> Self {
        ElementSet(Self::full(n).0 & !1)
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < MAX_ELEMENTS && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        ElementSet(self.0 | 1u64 << x)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = items.iter().find(|&&x| x >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element index {bad} out of range"
            )));
        }
        Ok(items.into_iter().collect())
    }
}
