//! Upper bounded two-element antichains.

use serde::{Deserialize, Serialize};

use crate::set::ElementSet;
use crate::table::SemilatticeTable;

/// Two incomparable nonzero elements `a < b` (as indices) with a common
/// upper bound, together with their join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ubta {
    pub a: usize,
    pub b: usize,
    pub join: usize,
}

impl Ubta {
    pub fn pair(&self) -> ElementSet {
        ElementSet::singleton(self.a).with(self.b)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.a == x || self.b == x
    }
}

/// Every UBTA of a semilattice, in lexicographic `(a, b)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbtaFamily {
    items: Vec<Ubta>,
}

impl UbtaFamily {
    pub fn of(s: &SemilatticeTable) -> Self {
        let n = s.n();
        let mut items = Vec::new();
        for a in 1..n {
            for b in a + 1..n {
                if s.comparable(a, b) {
                    continue;
                }
                if let Some(join) = s.least_upper_bound(a, b) {
                    items.push(Ubta { a, b, join });
                }
            }
        }
        UbtaFamily { items }
    }

    pub fn items(&self) -> &[Ubta] {
        &self.items
    }

    /// Number of UBTAs.
    pub fn t(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Ubta> {
        self.items.iter()
    }

    /// Union of all pairs and joins.
    pub fn support(&self) -> ElementSet {
        self.items
            .iter()
            .fold(ElementSet::EMPTY, |acc, u| acc.union(u.pair()).with(u.join))
    }
}

impl<'a> IntoIterator for &'a UbtaFamily {
    type Item = &'a Ubta;
    type IntoIter = std::slice::Iter<'a, Ubta>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl SemilatticeTable {
    pub fn ubtas(&self) -> UbtaFamily {
        UbtaFamily::of(self)
    }

    /// Whether some pair of incomparable elements has an upper bound.
    pub fn has_ubta(&self) -> bool {
        let n = self.n();
        (1..n).any(|a| {
            (a + 1..n).any(|b| !self.comparable(a, b) && !self.up(a).is_disjoint(self.up(b)))
        })
    }
}
