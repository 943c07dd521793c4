//! Isomorphism testing and canonical labeling.
//!
//! Two meet semilattices are isomorphic iff their orders are, so both
//! routines work on the cached principal down-sets.
//!
//! The canonical form sorts elements by a refined order-theoretic colouring
//! (height first, so every colour-sorted labeling is a linear extension) and
//! then searches the permutations inside each colour cell for the
//! lexicographically least encoding, where position `i` is encoded by the set
//! of earlier positions below it. Interchangeable elements (same strict
//! down-set and strict up-set) are tried only once per cell.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::set::ElementSet;
use crate::table::SemilatticeTable;

/// Per-element invariant used to prune bijection search.
fn local_invariant(s: &SemilatticeTable, heights: &[usize], covers: &[(usize, usize)]) -> Vec<[usize; 5]> {
    let n = s.n();
    let mut lower = vec![0usize; n];
    let mut upper = vec![0usize; n];
    for &(lo, hi) in covers {
        upper[lo] += 1;
        lower[hi] += 1;
    }
    (0..n)
        .map(|x| [heights[x], s.down(x).len(), s.up(x).len(), lower[x], upper[x]])
        .collect()
}

/// A meet-preserving bijection from `s1` to `s2`, if one exists.
///
/// The result maps element `x` of `s1` to `map[x]` in `s2`.
pub fn find_isomorphism(s1: &SemilatticeTable, s2: &SemilatticeTable) -> Option<Vec<usize>> {
    let n = s1.n();
    if n != s2.n() {
        return None;
    }
    let inv1 = local_invariant(s1, &s1.heights(), &s1.covers());
    let inv2 = local_invariant(s2, &s2.heights(), &s2.covers());
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return None;
    }
    // Assign rarest invariants first.
    let mut freq: BTreeMap<[usize; 5], usize> = BTreeMap::new();
    for v in &inv1 {
        *freq.entry(*v).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (freq[&inv1[x]], inv1[x][0], x));

    let mut map = vec![usize::MAX; n];
    let mut used = ElementSet::EMPTY;
    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        order: &[usize],
        s1: &SemilatticeTable,
        s2: &SemilatticeTable,
        inv1: &[[usize; 5]],
        inv2: &[[usize; 5]],
        map: &mut [usize],
        used: &mut ElementSet,
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..s2.n() {
            if used.contains(y) || inv1[x] != inv2[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| {
                let q = map[p];
                s1.leq(p, x) == s2.leq(q, y) && s1.leq(x, p) == s2.leq(y, q)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used.insert(y);
            if search(depth + 1, order, s1, s2, inv1, inv2, map, used) {
                return true;
            }
            used.remove(y);
            map[x] = usize::MAX;
        }
        false
    }
    search(0, &order, s1, s2, &inv1, &inv2, &mut map, &mut used).then_some(map)
}

pub fn are_isomorphic(s1: &SemilatticeTable, s2: &SemilatticeTable) -> bool {
    find_isomorphism(s1, s2).is_some()
}

/// Stable colouring by iterated refinement of order invariants.
///
/// Colours are ranks of isomorphism-invariant signatures; the first
/// component of every signature is the height, so colour order refines
/// height order.
fn refined_colours(s: &SemilatticeTable) -> Vec<usize> {
    let n = s.n();
    let heights = s.heights();
    let covers = s.covers();
    let init = local_invariant(s, &heights, &covers);
    let mut colours = rank(&init);
    let mut classes = distinct(&colours);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = s.down(x).iter().filter(|&y| y != x).map(|y| colours[y]).collect();
                let mut above: Vec<usize> = s.up(x).iter().filter(|&y| y != x).map(|y| colours[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colours[x], below, above)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = distinct(&next);
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter()
        .map(|s| uniq.binary_search(s).expect("present"))
        .collect()
}

fn distinct(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct CanonSearch<'a> {
    s: &'a SemilatticeTable,
    /// Colour cell of each position.
    cells: Vec<ElementSet>,
    strict_down: Vec<ElementSet>,
    strict_up: Vec<ElementSet>,
    placed: Vec<usize>,
    pos_of: Vec<usize>,
    rows: Vec<u64>,
    best_rows: Option<Vec<u64>>,
    best_order: Vec<usize>,
}

impl CanonSearch<'_> {
    fn row_of(&self, x: usize) -> u64 {
        self.strict_down[x]
            .iter()
            .fold(0u64, |acc, y| acc | 1u64 << self.pos_of[y])
    }

    fn run(&mut self, i: usize, used: ElementSet) {
        let n = self.s.n();
        if i == n {
            let better = match &self.best_rows {
                None => true,
                Some(best) => self.rows.as_slice().cmp(best.as_slice()) == Ordering::Less,
            };
            if better {
                self.best_rows = Some(self.rows.clone());
                self.best_order = self.placed.clone();
            }
            return;
        }
        let candidates = self.cells[i].difference(used);
        let mut tried: Vec<usize> = Vec::new();
        for x in candidates {
            if tried
                .iter()
                .any(|&t| self.strict_down[t] == self.strict_down[x] && self.strict_up[t] == self.strict_up[x])
            {
                continue;
            }
            tried.push(x);
            let row = self.row_of(x);
            if let Some(best) = &self.best_rows {
                if self.rows[..i] == best[..i] && row > best[i] {
                    continue;
                }
            }
            self.pos_of[x] = i;
            self.placed.push(x);
            self.rows.push(row);
            self.run(i + 1, used.with(x));
            self.rows.pop();
            self.placed.pop();
            self.pos_of[x] = usize::MAX;
        }
    }
}

/// Canonical labeling: `labels[x]` is the new index of element `x`.
///
/// Isomorphic inputs produce identical relabeled tables and `0` keeps
/// index `0`.
pub fn canonical_labeling(s: &SemilatticeTable) -> Vec<usize> {
    let n = s.n();
    let colours = refined_colours(s);
    let mut by_colour: Vec<usize> = (0..n).collect();
    by_colour.sort_by_key(|&x| (colours[x], x));
    let mut cells = Vec::with_capacity(n);
    for &x in &by_colour {
        let cell: ElementSet = (0..n).filter(|&y| colours[y] == colours[x]).collect();
        cells.push(cell);
    }
    let mut search = CanonSearch {
        s,
        cells,
        strict_down: (0..n).map(|x| s.down(x).difference(ElementSet::singleton(x))).collect(),
        strict_up: (0..n).map(|x| s.up(x).difference(ElementSet::singleton(x))).collect(),
        placed: Vec::with_capacity(n),
        pos_of: vec![usize::MAX; n],
        rows: Vec::with_capacity(n),
        best_rows: None,
        best_order: Vec::new(),
    };
    search.run(0, ElementSet::EMPTY);
    let mut labels = vec![0usize; n];
    for (pos, &x) in search.best_order.iter().enumerate() {
        labels[x] = pos;
    }
    labels
}

pub fn canonical_form(s: &SemilatticeTable) -> SemilatticeTable {
    s.relabel(&canonical_labeling(s))
        .expect("canonical labeling is an order-preserving bijection fixing 0")
}
