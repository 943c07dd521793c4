//! Slow, independent reference implementations used as test oracles.
//! Nothing here calls the library's order, congruence or isomorphism code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use semicon::SemilatticeTable;

pub type Meet = Vec<Vec<usize>>;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Lexicographically least relabelled meet table over all relabellings
/// fixing 0.
pub fn naive_canonical(meet: &Meet) -> Meet {
    let n = meet.len();
    let rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Meet> = None;
    for p in permutations(&rest) {
        let mut perm = vec![0];
        perm.extend(p);
        let mut t = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                t[perm[x]][perm[y]] = perm[meet[x][y]];
            }
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.unwrap()
}

/// Meet table of a partial order given as `leq[x][y]`, if it is a meet
/// semilattice with least element 0.
pub fn meet_from_order(leq: &[Vec<bool>]) -> Option<Meet> {
    let n = leq.len();
    let mut meet = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| leq[z][x] && leq[z][y]).collect();
            let glb = lower.iter().copied().find(|&g| lower.iter().all(|&z| leq[z][g]))?;
            meet[x][y] = glb;
        }
    }
    (0..n).all(|x| leq[0][x]).then_some(meet)
}

/// Isomorphism classes of `n`-element meet semilattices, found by listing
/// every naturally labelled order on `1..n` with 0 added below and
/// deduplicating by [`naive_canonical`].
pub fn naive_semilattices(n: usize) -> BTreeSet<Meet> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        leq[0].fill(true);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(leq[x][y] && leq[y][z]) || leq[x][z]))
        });
        if !transitive {
            continue;
        }
        if let Some(meet) = meet_from_order(&leq) {
            out.insert(naive_canonical(&meet));
        }
    }
    out
}

pub fn meet_table(s: &SemilatticeTable) -> Meet {
    s.rows()
}

/// All set partitions of `0..n` as block labels.
pub fn naive_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, labels: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for b in 0..=max + 1 {
            labels.push(b);
            rec(i + 1, labels, max.max(b), n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        let mut labels = vec![0];
        rec(1, &mut labels, 0, n, &mut out);
    }
    out
}

pub fn is_compatible(meet: &Meet, labels: &[usize]) -> bool {
    let n = meet.len();
    (0..n).all(|x| {
        (0..n).all(|y| labels[x] != labels[y] || (0..n).all(|z| labels[meet[x][z]] == labels[meet[y][z]]))
    })
}

/// Meet congruences as block-label vectors in restricted growth form.
pub fn naive_congruences(meet: &Meet) -> Vec<Vec<usize>> {
    naive_partitions(meet.len()).into_iter().filter(|l| is_compatible(meet, l)).collect()
}

fn leq(meet: &Meet, x: usize, y: usize) -> bool {
    meet[x][y] == x
}

/// Least upper bound of `x` and `y`, if they have any upper bound.
pub fn naive_join(meet: &Meet, x: usize, y: usize) -> Option<usize> {
    let n = meet.len();
    let ub: Vec<usize> = (0..n).filter(|&z| leq(meet, x, z) && leq(meet, y, z)).collect();
    ub.iter().copied().find(|&j| ub.iter().all(|&z| leq(meet, j, z)))
}

/// Number of subsets of the nonzero elements closed under existing joins.
pub fn naive_join_closed_count(meet: &Meet) -> u64 {
    let n = meet.len();
    let mut joins = Vec::new();
    for x in 1..n {
        for y in x + 1..n {
            if let Some(j) = naive_join(meet, x, y) {
                joins.push((x, y, j));
            }
        }
    }
    let mut count = 0;
    for bits in 0u64..1 << (n - 1) {
        let has = |x: usize| bits >> (x - 1) & 1 == 1;
        if joins.iter().all(|&(x, y, j)| !(has(x) && has(y)) || has(j)) {
            count += 1;
        }
    }
    count
}

/// Closes a family of subsets of a small ground set under intersection and
/// returns the resulting meet semilattice ordered by inclusion.
pub fn intersection_closure(family: &[u16]) -> Meet {
    let mut sets: BTreeSet<u16> = family.iter().copied().collect();
    loop {
        let current: Vec<u16> = sets.iter().copied().collect();
        let before = sets.len();
        for &a in &current {
            for &b in &current {
                sets.insert(a & b);
            }
        }
        if sets.len() == before {
            break;
        }
    }
    let mut sorted: Vec<u16> = sets.into_iter().collect();
    sorted.sort_by_key(|s| (s.count_ones(), *s));
    let index = |s: u16| sorted.iter().position(|&t| t == s).unwrap();
    sorted.iter().map(|&a| sorted.iter().map(|&b| index(a & b)).collect()).collect()
}

/// Random meet semilattices with at most `max_n` elements.
pub fn arb_semilattice(max_n: usize) -> impl Strategy<Value = SemilatticeTable> {
    prop::collection::vec(0u16..64, 1..8)
        .prop_map(|family| intersection_closure(&family))
        .prop_filter("size bound", move |m| m.len() <= max_n)
        .prop_map(|m| SemilatticeTable::validate(&m).expect("intersection closure is a semilattice"))
}

/// A semilattice together with a relabelling fixing 0.
pub fn arb_relabelled(max_n: usize) -> impl Strategy<Value = (SemilatticeTable, Vec<usize>)> {
    arb_semilattice(max_n).prop_flat_map(|s| {
        let n = s.n();
        let rest: Vec<usize> = (1..n).collect();
        (Just(s), Just(rest).prop_shuffle()).prop_map(|(s, rest)| {
            let mut perm = vec![0];
            perm.extend(rest);
            (s, perm)
        })
    })
}
