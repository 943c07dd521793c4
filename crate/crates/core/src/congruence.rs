//! Meet congruences as partitions.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};
use crate::set::ElementSet;
use crate::table::SemilatticeTable;

/// Default size bound for listing all congruences.
pub const DEFAULT_MAX_CONGRUENCE_N: usize = 10;
/// Size bound for the set-partition scan.
pub const MAX_BELL_SCAN_N: usize = 8;
/// Size bound for counting interval-block equivalences.
pub const MAX_INTERVAL_BLOCK_N: usize = 20;

fn check_size(s: &SemilatticeTable, p: &Partition) -> Result<()> {
    if p.n() != s.n() {
        return Err(Error::SizeMismatch {
            expected: s.n(),
            got: p.n(),
        });
    }
    Ok(())
}

fn check_bound(what: &'static str, n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::TooLarge {
            what,
            size: n,
            bound,
        });
    }
    Ok(())
}

/// Whether `x ≡ y` implies `x ∧ z ≡ y ∧ z` for all `z`.
pub fn is_meet_congruence(s: &SemilatticeTable, p: &Partition) -> Result<bool> {
    check_size(s, p)?;
    Ok(p.spanning_pairs()
        .all(|(x, y)| (0..s.n()).all(|z| p.same_block(s.meet(x, z), s.meet(y, z)))))
}

/// Merges along `queue` and closes under meet translations.
///
/// Only merged edges need translating: translations of a chain of edges
/// form a chain between the translated endpoints.
fn close(s: &SemilatticeTable, uf: &mut UnionFind, mut queue: VecDeque<(usize, usize)>) {
    while let Some((x, y)) = queue.pop_front() {
        if uf.union(x, y) {
            for z in 0..s.n() {
                let (xz, yz) = (s.meet(x, z), s.meet(y, z));
                if xz != yz {
                    queue.push_back((xz, yz));
                }
            }
        }
    }
}

/// The least meet congruence collapsing every given pair.
pub fn congruence_generated(s: &SemilatticeTable, pairs: &[(usize, usize)]) -> Result<Partition> {
    for &(x, y) in pairs {
        s.check_index(x)?;
        s.check_index(y)?;
    }
    let mut uf = UnionFind::new(s.n());
    close(s, &mut uf, pairs.iter().copied().collect());
    Ok(uf.partition())
}

/// Join of two congruences, re-closed under meet translations.
pub fn join(s: &SemilatticeTable, p: &Partition, q: &Partition) -> Result<Partition> {
    check_size(s, p)?;
    check_size(s, q)?;
    let mut uf = UnionFind::new(s.n());
    close(s, &mut uf, p.spanning_pairs().chain(q.spanning_pairs()).collect());
    Ok(uf.partition())
}

/// Principal congruences of the cover pairs. Every congruence is a join
/// of these: a collapsed pair `x, y` collapses the interval
/// `[x ∧ y, x] ∪ [x ∧ y, y]` and hence a chain of covers.
pub fn cover_congruences(s: &SemilatticeTable) -> Vec<Partition> {
    let mut out: Vec<Partition> = s
        .covers()
        .into_iter()
        .map(|(lo, hi)| congruence_generated(s, &[(lo, hi)]).expect("indices in range"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every meet congruence, ordered by block count descending then block ids.
///
/// Generated as the join-closure of the cover congruences.
pub fn all_meet_congruences(s: &SemilatticeTable) -> Result<Vec<Partition>> {
    all_meet_congruences_bounded(s, DEFAULT_MAX_CONGRUENCE_N)
}

pub fn all_meet_congruences_bounded(s: &SemilatticeTable, max_n: usize) -> Result<Vec<Partition>> {
    check_bound("congruence listing", s.n(), max_n)?;
    let generators = cover_congruences(s);
    let identity = Partition::identity(s.n());
    let mut seen: HashSet<Partition> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(c) = frontier.pop() {
        for g in &generators {
            if g.refines(&c) {
                continue;
            }
            let j = join(s, &c, g)?;
            if seen.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut all: Vec<Partition> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// Visits every partition of `0..n` as a restricted growth string.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, visit: &mut impl FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=limit {
            labels.push(l);
            rec(labels, n, max.max(l), visit);
            labels.pop();
        }
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    rec(&mut Vec::with_capacity(n), n, 0, &mut visit);
}

/// Every meet congruence by scanning all Bell(n) partitions.
pub fn all_meet_congruences_bell(s: &SemilatticeTable) -> Result<Vec<Partition>> {
    check_bound("partition scan", s.n(), MAX_BELL_SCAN_N)?;
    let n = s.n();
    let mut out = Vec::new();
    for_each_partition(n, |labels| {
        let compatible = (0..n).all(|x| {
            (x + 1..n)
                .filter(|&y| labels[x] == labels[y])
                .all(|y| (0..n).all(|z| labels[s.meet(x, z)] == labels[s.meet(y, z)]))
        });
        if compatible {
            out.push(Partition::from_labels(labels));
        }
    });
    out.sort();
    Ok(out)
}

/// The quotient semilattice; block `i` of `p` becomes element `i`.
///
/// Also returns the element-to-block map.
pub fn quotient(s: &SemilatticeTable, p: &Partition) -> Result<(SemilatticeTable, Vec<usize>)> {
    if !is_meet_congruence(s, p)? {
        return Err(Error::NotACongruence);
    }
    let reps: Vec<usize> = p.blocks().iter().map(|b| b.first().expect("nonempty")).collect();
    let rows: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| p.block_id()[s.meet(x, y)]).collect())
        .collect();
    Ok((SemilatticeTable::validate(&rows)?, p.block_id().to_vec()))
}

/// A finite meet semilattice is a lattice iff it has a greatest element.
pub fn is_lattice(s: &SemilatticeTable) -> bool {
    s.top().is_some()
}

/// Meet congruence that is also compatible with joins.
pub fn is_lattice_congruence(s: &SemilatticeTable, p: &Partition) -> Result<bool> {
    if !is_lattice(s) {
        return Err(Error::NotALattice);
    }
    if !is_meet_congruence(s, p)? {
        return Ok(false);
    }
    let join = |x: usize, y: usize| s.least_upper_bound(x, y).expect("lattice");
    Ok(p.spanning_pairs()
        .all(|(x, y)| (0..s.n()).all(|z| p.same_block(join(x, z), join(y, z)))))
}

pub fn all_lattice_congruences(s: &SemilatticeTable) -> Result<Vec<Partition>> {
    if !is_lattice(s) {
        return Err(Error::NotALattice);
    }
    let mut out = Vec::new();
    for p in all_meet_congruences(s)? {
        if is_lattice_congruence(s, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Number of equivalences on `s` all of whose blocks are intervals `[a, b]`.
pub fn count_interval_block_equivalences(s: &SemilatticeTable) -> Result<u64> {
    check_bound("interval-block count", s.n(), MAX_INTERVAL_BLOCK_N)?;
    let n = s.n();
    // intervals containing each element
    let mut by_member: Vec<Vec<ElementSet>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in s.up(a) {
            let iv = s.interval(a, b)?;
            for x in iv {
                by_member[x].push(iv);
            }
        }
    }
    fn rec(covered: ElementSet, full: ElementSet, by_member: &[Vec<ElementSet>]) -> u64 {
        let Some(x) = full.difference(covered).first() else {
            return 1;
        };
        by_member[x]
            .iter()
            .filter(|iv| iv.is_disjoint(covered))
            .map(|&iv| rec(covered.union(iv), full, by_member))
            .sum()
    }
    Ok(rec(ElementSet::EMPTY, s.elements(), &by_member))
}
