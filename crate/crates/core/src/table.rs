//! Finite meet semilattices given by their meet table.
//!
//! Element `0` is always the least element. The order is derived from the
//! meet (`x <= y` iff `x ∧ y = x`) and cached as principal down-sets and
//! up-sets so that order queries are single mask operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// Wire form of a semilattice: `{"n": 3, "meet": [[0,0,0],[0,1,1],[0,1,2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTable {
    pub n: usize,
    pub meet: Vec<Vec<usize>>,
}

/// A validated finite meet semilattice on the indices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct SemilatticeTable {
    n: usize,
    meet: Vec<u8>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
}

impl TryFrom<RawTable> for SemilatticeTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        if raw.meet.len() != raw.n {
            return Err(Error::NotSquare {
                row: raw.meet.len().min(raw.n),
                len: raw.meet.len(),
                n: raw.n,
            });
        }
        Self::validate(&raw.meet)
    }
}

impl From<SemilatticeTable> for RawTable {
    fn from(table: SemilatticeTable) -> Self {
        table.to_raw()
    }
}

impl SemilatticeTable {
    /// Checks a raw meet table and builds the semilattice.
    ///
    /// Violations are reported for the first offending pair or triple in
    /// row-major order; the checks run in the order square, range,
    /// idempotence, commutativity, least element, associativity.
    pub fn validate<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: n,
                bound: MAX_ELEMENTS,
            });
        }
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            if let Some((y, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::EntryOutOfRange {
                    x: row,
                    y,
                    value,
                    n,
                });
            }
        }
        let m = |x: usize, y: usize| rows[x].as_ref()[y];
        for x in 0..n {
            if m(x, x) != x {
                return Err(Error::NotIdempotent { x, value: m(x, x) });
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if m(x, y) != m(y, x) {
                    return Err(Error::NotCommutative {
                        x,
                        y,
                        xy: m(x, y),
                        yx: m(y, x),
                    });
                }
            }
        }
        for x in 0..n {
            if m(0, x) != 0 {
                return Err(Error::NoLeastAtZero { x, value: m(0, x) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        let meet = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&v| v as u8))
            .collect();
        Ok(Self::from_meet_unchecked(n, meet))
    }

    fn from_meet_unchecked(n: usize, meet: Vec<u8>) -> Self {
        let mut down = vec![ElementSet::EMPTY; n];
        let mut up = vec![ElementSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                if meet[x * n + y] as usize == x {
                    down[y].insert(x);
                    up[x].insert(y);
                }
            }
        }
        SemilatticeTable { n, meet, down, up }
    }

    /// Builds a semilattice from reflexive principal down-sets
    /// (`down[x] = {y : y <= x}`), computing meets as greatest lower bounds.
    pub fn from_down_sets(down: &[ElementSet]) -> Result<Self> {
        let n = down.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: n,
                bound: MAX_ELEMENTS,
            });
        }
        for (x, &d) in down.iter().enumerate() {
            if !d.is_subset(ElementSet::full(n)) {
                return Err(Error::InvalidOrder(format!(
                    "down-set of {x} mentions elements outside 0..{n}"
                )));
            }
            if !d.contains(x) {
                return Err(Error::InvalidOrder(format!("{x} is not below itself")));
            }
            if !d.contains(0) {
                return Err(Error::InvalidOrder(format!("0 is not below {x}")));
            }
            for y in d {
                if !down[y].is_subset(d) {
                    return Err(Error::InvalidOrder(format!(
                        "order is not transitive at {y} <= {x}"
                    )));
                }
                if y != x && down[y].contains(x) {
                    return Err(Error::InvalidOrder(format!(
                        "order is not antisymmetric on {x} and {y}"
                    )));
                }
            }
        }
        let mut meet = vec![0u8; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = down[x].intersection(down[y]);
                let glb = lower
                    .iter()
                    .find(|&z| down[z] == lower)
                    .ok_or(Error::NoGreatestLowerBound { x, y })?;
                meet[x * n + y] = glb as u8;
                meet[y * n + x] = glb as u8;
            }
        }
        Ok(Self::from_meet_unchecked(n, meet))
    }

    /// Builds a semilattice from a list of `(lower, upper)` order pairs;
    /// the order is their reflexive-transitive closure.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: n,
                bound: MAX_ELEMENTS,
            });
        }
        let mut down: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::IndexOutOfRange {
                    index: lo.max(hi),
                    n,
                });
            }
            down[hi].insert(lo);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut closure = down[x];
                for y in down[x] {
                    closure = closure.union(down[y]);
                }
                if closure != down[x] {
                    down[x] = closure;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::from_down_sets(&down)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }

    /// `x <= y` in the derived order.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : y <= x}`.
    #[inline]
    pub fn down(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    /// `{y : x <= y}`.
    #[inline]
    pub fn up(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Every element except `0`.
    pub fn nonzero_elements(&self) -> ElementSet {
        ElementSet::nonzero(self.n)
    }

    pub fn to_raw(&self) -> RawTable {
        RawTable {
            n: self.n,
            meet: (0..self.n)
                .map(|x| (0..self.n).map(|y| self.meet(x, y)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.to_raw().meet
    }

    /// Least upper bound of `x` and `y` if the pair has an upper bound.
    ///
    /// The join is the meet of all common upper bounds.
    pub fn least_upper_bound(&self, x: usize, y: usize) -> Option<usize> {
        let bounds = self.up[x].intersection(self.up[y]);
        self.meet_of(bounds)
    }

    /// Join in the partial join-semilattice on the nonzero elements.
    pub fn partial_join(&self, x: usize, y: usize) -> Result<Option<usize>> {
        self.check_index(x)?;
        self.check_index(y)?;
        if x == 0 || y == 0 {
            return Err(Error::ArgumentIsZero);
        }
        Ok(self.least_upper_bound(x, y))
    }

    /// Meet of a nonempty set, `None` for the empty set.
    pub fn meet_of(&self, set: ElementSet) -> Option<usize> {
        let mut it = set.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, z| self.meet(acc, z)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.up[x] == ElementSet::singleton(x) && self.down[x].len() == self.n)
    }

    pub fn maximal_elements(&self) -> ElementSet {
        (0..self.n).filter(|&x| self.up[x].len() == 1).collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.comparable(x, y)))
    }

    /// `[a, b] = {x : a <= x <= b}`.
    pub fn interval(&self, a: usize, b: usize) -> Result<ElementSet> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.leq(a, b) {
            return Err(Error::NotComparable { a, b });
        }
        Ok(self.up[a].intersection(self.down[b]))
    }

    pub fn is_meet_closed(&self, set: ElementSet) -> bool {
        set.iter()
            .all(|x| set.iter().all(|y| set.contains(self.meet(x, y))))
    }

    /// Whether `x < y < z` with `x, z` in the set forces `y` into it.
    pub fn is_convex(&self, set: ElementSet) -> bool {
        set.iter().all(|x| {
            set.iter()
                .filter(|&z| self.leq(x, z))
                .all(|z| self.up[x].intersection(self.down[z]).is_subset(set))
        })
    }

    /// Nonempty, meet-closed and order-convex.
    pub fn is_convex_subsemilattice(&self, set: ElementSet) -> bool {
        !set.is_empty()
            && set.is_subset(self.elements())
            && self.is_meet_closed(set)
            && self.is_convex(set)
    }

    /// The cover relation as `(lower, upper)` pairs in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for lo in 0..self.n {
            for hi in 0..self.n {
                if self.lt(lo, hi) {
                    let between = self.up[lo].intersection(self.down[hi]);
                    if between.len() == 2 {
                        out.push((lo, hi));
                    }
                }
            }
        }
        out
    }

    /// Length of the longest chain from `0` up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.down[x].len());
        let mut height = vec![0usize; self.n];
        for &x in &order {
            height[x] = self.down[x]
                .iter()
                .filter(|&y| y != x)
                .map(|y| height[y] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// Relabels element `x` as `perm[x]`; `perm` must fix `0`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let image: ElementSet = perm.iter().copied().filter(|&p| p < self.n).collect();
        if image.len() != self.n {
            return Err(Error::InvalidOrder("relabeling is not a bijection".into()));
        }
        let mut rows = vec![vec![0usize; self.n]; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                rows[perm[x]][perm[y]] = perm[self.meet(x, y)];
            }
        }
        Self::validate(&rows)
    }

    /// The meet-closed subset `set` as a standalone semilattice.
    ///
    /// Its least element `⋀ set` becomes index 0, the remaining members keep
    /// their relative order. Returns the table and the map from new to old
    /// indices.
    pub fn restrict(&self, set: ElementSet) -> Result<(Self, Vec<usize>)> {
        if set.is_empty() || !set.is_subset(self.elements()) || !self.is_meet_closed(set) {
            return Err(Error::NotConvexSubsemilattice);
        }
        let bottom = self.meet_of(set).expect("nonempty");
        let mut old: Vec<usize> = vec![bottom];
        old.extend(set.iter().filter(|&x| x != bottom));
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &x) in old.iter().enumerate() {
            new_index[x] = i;
        }
        let rows: Vec<Vec<usize>> = old
            .iter()
            .map(|&x| old.iter().map(|&y| new_index[self.meet(x, y)]).collect())
            .collect();
        Ok((Self::validate(&rows)?, old))
    }

    /// Hangs a copy of the tree `tree` above `x`: the least element of the
    /// copy covers `x`. Old elements keep their indices and the copy follows.
    pub fn attach_above(&self, x: usize, tree: &SemilatticeTable) -> Result<Self> {
        self.check_index(x)?;
        if tree.has_ubta() {
            return Err(Error::NotATree);
        }
        let total = self.n + tree.n;
        if total > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: total,
                bound: MAX_ELEMENTS,
            });
        }
        let mut down: Vec<ElementSet> = self.down.clone();
        for j in 0..tree.n {
            let shifted = ElementSet::from_bits(tree.down(j).bits() << self.n);
            down.push(self.down[x].union(shifted));
        }
        Self::from_down_sets(&down)
    }

    /// Hangs a `k`-element chain below the current least element.
    ///
    /// The chain takes indices `0..k`, old element `i` becomes `i + k`.
    pub fn extend_below(&self, k: usize) -> Result<Self> {
        let total = self.n + k;
        if total > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: total,
                bound: MAX_ELEMENTS,
            });
        }
        let chain = ElementSet::full(k);
        let mut down: Vec<ElementSet> = (0..k).map(|j| ElementSet::full(j + 1)).collect();
        for i in 0..self.n {
            down.push(chain.union(ElementSet::from_bits(self.down[i].bits() << k)));
        }
        Self::from_down_sets(&down)
    }

    /// Whether a new maximal element with strict down-set `ideal` yields a
    /// meet semilattice: `ideal` must be a down-set containing `0` whose
    /// intersection with every principal ideal is again principal.
    pub fn is_admissible_ideal(&self, ideal: ElementSet) -> bool {
        if !ideal.contains(0) || !ideal.is_subset(self.elements()) {
            return false;
        }
        if !ideal.iter().all(|x| self.down[x].is_subset(ideal)) {
            return false;
        }
        (0..self.n).all(|y| {
            let part = ideal.intersection(self.down[y]);
            part.iter().any(|z| self.down[z] == part)
        })
    }

    /// Adds a new maximal element `n` whose strict down-set is `ideal`.
    pub fn add_maximal(&self, ideal: ElementSet) -> Result<Self> {
        if self.n + 1 > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "semilattice",
                size: self.n + 1,
                bound: MAX_ELEMENTS,
            });
        }
        let mut down = self.down.clone();
        down.push(ideal.with(self.n));
        Self::from_down_sets(&down)
    }

    /// Adjoins a new greatest element.
    pub fn adjoin_top(&self) -> Result<Self> {
        self.add_maximal(self.elements())
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, n: self.n })
        }
    }
}

impl fmt::Debug for SemilatticeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemilatticeTable")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Named semilattices with the fixed labelings listed in `docs/formats.md`.
///
/// Accepted names: `chain_<k>` (k >= 1), `v`, `b4`, `n5`, `m3`, `f`, `n6`,
/// `grid2x3`.
pub fn named(name: &str) -> Result<SemilatticeTable> {
    let unknown = || Error::UnknownName(name.to_string());
    let lower = name.to_ascii_lowercase();
    if let Some(k) = lower.strip_prefix("chain_") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        return chain(k);
    }
    match lower.as_str() {
        "v" => SemilatticeTable::from_covers(3, &[(0, 1), (0, 2)]),
        // 0, a, b, top
        "b4" => SemilatticeTable::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        // 0 < a < c < top, 0 < b < top
        "n5" => SemilatticeTable::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]),
        // 0, three atoms, top
        "m3" => SemilatticeTable::from_covers(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        ),
        // u, a, b, c, v1 = a ∨ b, v2 = b ∨ c
        "f" => SemilatticeTable::from_covers(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5)],
        ),
        // u < a1 < a2 < a3 < v, u < b < v
        "n6" => SemilatticeTable::from_covers(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 5), (0, 4), (4, 5)],
        ),
        // (i, j) with i < 2, j < 3 at index 3i + j
        "grid2x3" => SemilatticeTable::from_covers(
            6,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
        ),
        _ => Err(unknown()),
    }
}

/// The `k`-element chain `0 < 1 < .. < k-1`.
pub fn chain(k: usize) -> Result<SemilatticeTable> {
    if k == 0 {
        return Err(Error::Empty);
    }
    let pairs: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    SemilatticeTable::from_covers(k, &pairs)
}
