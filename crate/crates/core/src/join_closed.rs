//! Join-closed subsets of the partial join-semilattice on `S \ {0}`.
//!
//! A subset `X` of the nonzero elements is join-closed when `a ∨ b ∈ X`
//! whenever `a, b ∈ X` and the join exists; the empty set counts. Only
//! UBTAs can violate closure, since comparable pairs join to one of
//! themselves. The number of join-closed subsets equals the number of meet
//! congruences, witnessed by the up-trace map in [`PartialJoinStructure::dual_congruence`].

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::all_meet_congruences;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::set::ElementSet;
use crate::table::SemilatticeTable;
use crate::ubta::UbtaFamily;

/// Default bound on the number of UBTAs for inclusion-exclusion.
pub const DEFAULT_MAX_UBTAS: usize = 20;
/// Bound on `n` for the `2^(n-1)` subset scan.
pub const MAX_BRUTEFORCE_N: usize = 25;
/// Bound on `n` for the exhaustive duality check.
pub const MAX_DUALITY_N: usize = 8;

/// `S \ {0}` with its partial join.
#[derive(Debug, Clone)]
pub struct PartialJoinStructure<'a> {
    host: &'a SemilatticeTable,
    ubtas: UbtaFamily,
}

impl<'a> PartialJoinStructure<'a> {
    pub fn new(host: &'a SemilatticeTable) -> Self {
        PartialJoinStructure {
            host,
            ubtas: host.ubtas(),
        }
    }

    pub fn host(&self) -> &SemilatticeTable {
        self.host
    }

    pub fn ubtas(&self) -> &UbtaFamily {
        &self.ubtas
    }

    /// `x ∨ y` for nonzero `x, y`, absent when there is no upper bound.
    pub fn join(&self, x: usize, y: usize) -> Result<Option<usize>> {
        self.host.partial_join(x, y)
    }

    fn check_subset(&self, x: ElementSet) -> Result<()> {
        if x.contains(0) {
            return Err(Error::ContainsZero);
        }
        if !x.is_subset(self.host.elements()) {
            let index = x.difference(self.host.elements()).first().unwrap_or(0);
            return Err(Error::IndexOutOfRange {
                index,
                n: self.host.n(),
            });
        }
        Ok(())
    }

    fn closed(&self, x: ElementSet) -> bool {
        self.ubtas
            .iter()
            .all(|u| !(x.contains(u.a) && x.contains(u.b)) || x.contains(u.join))
    }

    pub fn is_join_closed(&self, x: ElementSet) -> Result<bool> {
        self.check_subset(x)?;
        Ok(self.closed(x))
    }

    /// Counts join-closed subsets by testing all `2^(n-1)` subsets.
    pub fn count_join_closed_bruteforce(&self) -> Result<u64> {
        let n = self.host.n();
        if n > MAX_BRUTEFORCE_N {
            return Err(Error::TooLarge {
                what: "subset scan",
                size: n,
                bound: MAX_BRUTEFORCE_N,
            });
        }
        // bit i of a mask stands for element i + 1
        let rules: Vec<(u64, u64)> = self
            .ubtas
            .iter()
            .map(|u| (u.pair().bits() >> 1, 1u64 << (u.join - 1)))
            .collect();
        let total: u64 = 1u64 << (n - 1);
        let chunk_bits = (n - 1).min(12);
        let chunk: u64 = 1u64 << chunk_bits;
        let count = (0..total / chunk)
            .into_par_iter()
            .map(|hi| {
                let base = hi * chunk;
                (base..base + chunk)
                    .filter(|&m| rules.iter().all(|&(pair, join)| m & pair != pair || m & join != 0))
                    .count() as u64
            })
            .sum();
        Ok(count)
    }

    /// Counts join-closed subsets by inclusion-exclusion over sets of UBTAs.
    ///
    /// For a set `T` of UBTAs with pairs `A_T` and joins `V_T`, the subsets
    /// violating every member of `T` number `2^(n-1-|A_T ∪ V_T|)` when
    /// `A_T ∩ V_T = ∅` and none otherwise. Branches whose `A ∩ V` is already
    /// nonempty contribute nothing and are cut.
    pub fn count_join_closed_ie(&self) -> Result<u64> {
        self.count_join_closed_ie_bounded(DEFAULT_MAX_UBTAS)
    }

    pub fn count_join_closed_ie_bounded(&self, max_ubtas: usize) -> Result<u64> {
        let t = self.ubtas.t();
        if t > max_ubtas {
            return Err(Error::TooManyUbtas { t, bound: max_ubtas });
        }
        Ok(self.ie_sum())
    }

    fn ie_sum(&self) -> u64 {
        let free = self.host.n() as u32 - 1;
        let items: Vec<(ElementSet, ElementSet)> = self
            .ubtas
            .iter()
            .map(|u| (u.pair(), ElementSet::singleton(u.join)))
            .collect();
        fn rec(i: usize, a: ElementSet, v: ElementSet, odd: bool, items: &[(ElementSet, ElementSet)], free: u32) -> i128 {
            if i == items.len() {
                let term = 1i128 << (free - a.union(v).len() as u32);
                return if odd { -term } else { term };
            }
            let mut sum = rec(i + 1, a, v, odd, items, free);
            let (pair, join) = items[i];
            let (a2, v2) = (a.union(pair), v.union(join));
            if a2.is_disjoint(v2) {
                sum += rec(i + 1, a2, v2, !odd, items, free);
            }
            sum
        }
        let total = rec(0, ElementSet::EMPTY, ElementSet::EMPTY, false, &items, free);
        u64::try_from(total).expect("count is nonnegative")
    }

    /// Count by inclusion-exclusion when `t <= max_ubtas`, by subset scan
    /// otherwise, and by unbounded inclusion-exclusion when neither bound
    /// holds.
    pub fn count(&self, max_ubtas: usize) -> u64 {
        if self.ubtas.t() <= max_ubtas {
            return self.ie_sum();
        }
        self.count_join_closed_bruteforce()
            .unwrap_or_else(|_| self.ie_sum())
    }

    /// All join-closed subsets in increasing mask order.
    pub fn join_closed_subsets(&self) -> Result<Vec<ElementSet>> {
        let n = self.host.n();
        if n > MAX_BRUTEFORCE_N {
            return Err(Error::TooLarge {
                what: "subset listing",
                size: n,
                bound: MAX_BRUTEFORCE_N,
            });
        }
        Ok((0..1u64 << (n - 1))
            .map(|m| ElementSet::from_bits(m << 1))
            .filter(|&x| self.closed(x))
            .collect())
    }

    /// The congruence `x ≡ y` iff `{u ∈ X : u <= x} = {u ∈ X : u <= y}`.
    pub fn dual_congruence(&self, x: ElementSet) -> Result<Partition> {
        if !self.is_join_closed(x)? {
            return Err(Error::NotJoinClosed);
        }
        Ok(self.trace_partition(x))
    }

    fn trace_partition(&self, x: ElementSet) -> Partition {
        let traces: Vec<ElementSet> = (0..self.host.n())
            .map(|e| self.host.down(e).intersection(x))
            .collect();
        Partition::from_labels(&traces)
    }
}

/// Outcome of an exhaustive duality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub join_closed_subsets: usize,
    pub congruences: usize,
    pub inclusion_pairs_checked: usize,
}

/// Checks that the up-trace map is a bijection from join-closed subsets
/// onto meet congruences that reverses inclusion.
pub fn verify_duality(s: &SemilatticeTable) -> Result<DualityReport> {
    if s.n() > MAX_DUALITY_N {
        return Err(Error::TooLarge {
            what: "duality check",
            size: s.n(),
            bound: MAX_DUALITY_N,
        });
    }
    let pj = PartialJoinStructure::new(s);
    let subsets = pj.join_closed_subsets()?;
    let mut image: HashMap<Partition, ElementSet> = HashMap::new();
    let mut duals = Vec::with_capacity(subsets.len());
    for &x in &subsets {
        let p = pj.dual_congruence(x)?;
        if let Some(&prev) = image.get(&p) {
            return Err(Error::DualityViolation(format!(
                "{prev:?} and {x:?} map to the same partition"
            )));
        }
        image.insert(p.clone(), x);
        duals.push(p);
    }
    let congruences = all_meet_congruences(s)?;
    if congruences.len() != image.len() || !congruences.iter().all(|c| image.contains_key(c)) {
        return Err(Error::DualityViolation(format!(
            "{} join-closed subsets but {} congruences",
            image.len(),
            congruences.len()
        )));
    }
    let mut checked = 0;
    for (i, &x) in subsets.iter().enumerate() {
        for (j, &y) in subsets.iter().enumerate() {
            if x.is_subset(y) {
                checked += 1;
                if !duals[j].refines(&duals[i]) {
                    return Err(Error::DualityViolation(format!(
                        "{x:?} ⊆ {y:?} but their congruences are not reversed"
                    )));
                }
            }
        }
    }
    Ok(DualityReport {
        join_closed_subsets: subsets.len(),
        congruences: congruences.len(),
        inclusion_pairs_checked: checked,
    })
}

/// `|Con(S, ∧)|`, computed through join-closed subsets.
pub fn count_congruences(s: &SemilatticeTable) -> u64 {
    PartialJoinStructure::new(s).count(DEFAULT_MAX_UBTAS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{chain, named};

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn closure_examples() {
        let b4 = named("b4").unwrap();
        let pj = PartialJoinStructure::new(&b4);
        assert_eq!(pj.is_join_closed(ElementSet::EMPTY), Ok(true));
        assert_eq!(pj.is_join_closed(set(&[1, 2])), Ok(false));
        assert_eq!(pj.is_join_closed(set(&[1, 2, 3])), Ok(true));
        assert_eq!(pj.is_join_closed(set(&[0, 1])), Err(Error::ContainsZero));
        assert_eq!(pj.join(1, 2), Ok(Some(3)));
    }

    #[test]
    fn counts_agree_on_named() {
        let expected = [
            ("chain_1", 1),
            ("chain_6", 32),
            ("b4", 7),
            ("n5", 13),
            ("m3", 12),
            ("f", 25),
            ("n6", 25),
        ];
        for (name, k) in expected {
            let s = named(name).unwrap();
            let pj = PartialJoinStructure::new(&s);
            assert_eq!(pj.count_join_closed_bruteforce().unwrap(), k, "{name}");
            assert_eq!(pj.count_join_closed_ie().unwrap(), k, "{name}");
            assert_eq!(count_congruences(&s), k, "{name}");
        }
    }

    #[test]
    fn ubta_bound() {
        let m3 = named("m3").unwrap();
        let pj = PartialJoinStructure::new(&m3);
        assert_eq!(
            pj.count_join_closed_ie_bounded(2),
            Err(Error::TooManyUbtas { t: 3, bound: 2 })
        );
        assert_eq!(pj.count(2), 12);
    }

    #[test]
    fn dual_map_examples() {
        let c3 = chain(3).unwrap();
        let pj = PartialJoinStructure::new(&c3);
        assert_eq!(pj.dual_congruence(ElementSet::EMPTY).unwrap(), Partition::total(3));
        assert_eq!(pj.dual_congruence(set(&[1, 2])).unwrap(), Partition::identity(3));
        let b4 = named("b4").unwrap();
        let pj = PartialJoinStructure::new(&b4);
        assert_eq!(
            pj.dual_congruence(set(&[1])).unwrap(),
            Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap()
        );
        assert_eq!(pj.dual_congruence(set(&[1, 2])), Err(Error::NotJoinClosed));
    }

    #[test]
    fn duality_on_small_cases() {
        let r = verify_duality(&named("b4").unwrap()).unwrap();
        assert_eq!((r.join_closed_subsets, r.congruences), (7, 7));
        let r = verify_duality(&chain(5).unwrap()).unwrap();
        assert_eq!((r.join_closed_subsets, r.congruences), (16, 16));
        assert!(matches!(verify_duality(&chain(9).unwrap()), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn large_chain_counts() {
        let c = chain(25).unwrap();
        let pj = PartialJoinStructure::new(&c);
        assert_eq!(pj.count_join_closed_ie().unwrap(), 1 << 24);
        assert_eq!(count_congruences(&chain(64).unwrap()), 1 << 63);
    }
}
