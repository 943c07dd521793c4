//! Isomorphism-free generation of meet semilattices and their congruence
//! spectra.
//!
//! Every semilattice with `n >= 2` elements arises from one with `n - 1`
//! elements by adding a maximal element, so level `n` is obtained by
//! extending each canonical representative of level `n - 1` by every
//! admissible ideal and deduplicating canonical forms.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::set::ElementSet;
use crate::structure::{classify, SemilatticeClass};
use crate::table::{chain, SemilatticeTable};

pub const DEFAULT_MAX_ENUMERATION_N: usize = 9;
pub const DEFAULT_WITNESS_CAP: usize = 64;

/// Down-sets `D ∋ 0` such that adding a maximal element with strict
/// down-set `D` gives a meet semilattice.
pub fn admissible_ideals(s: &SemilatticeTable) -> Vec<ElementSet> {
    let n = s.n();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (s.down(x).len(), x));
    let mut out = Vec::new();
    fn rec(i: usize, current: ElementSet, order: &[usize], s: &SemilatticeTable, out: &mut Vec<ElementSet>) {
        let Some(&x) = order.get(i) else {
            if s.is_admissible_ideal(current) {
                out.push(current);
            }
            return;
        };
        rec(i + 1, current, order, s, out);
        if s.down(x).is_subset(current.with(x)) {
            rec(i + 1, current.with(x), order, s, out);
        }
    }
    rec(0, ElementSet::singleton(0), &order, s, &mut out);
    out
}

fn check_bound(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > max_n {
        return Err(Error::TooLarge {
            what: "enumeration",
            size: n,
            bound: max_n,
        });
    }
    Ok(())
}

fn next_level(parents: &[SemilatticeTable]) -> Vec<SemilatticeTable> {
    let mut children: Vec<SemilatticeTable> = parents
        .par_iter()
        .flat_map_iter(|p| {
            admissible_ideals(p).into_iter().map(move |d| {
                canonical_form(&p.add_maximal(d).expect("admissible ideal"))
            })
        })
        .collect();
    children.par_sort_unstable();
    children.dedup();
    children
}

/// All semilattices of sizes `1..=max_n`; entry `k - 1` holds size `k`.
pub fn enumerate_levels(max_n: usize) -> Result<Vec<Vec<SemilatticeTable>>> {
    enumerate_levels_bounded(max_n, DEFAULT_MAX_ENUMERATION_N)
}

pub fn enumerate_levels_bounded(max_n: usize, bound: usize) -> Result<Vec<Vec<SemilatticeTable>>> {
    check_bound(max_n, bound)?;
    let mut levels = vec![vec![chain(1)?]];
    for _ in 1..max_n {
        let next = next_level(levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok(levels)
}

/// One canonical representative of every `n`-element meet semilattice,
/// sorted by table.
pub fn enumerate_semilattices(n: usize) -> Result<Vec<SemilatticeTable>> {
    enumerate_semilattices_bounded(n, DEFAULT_MAX_ENUMERATION_N)
}

pub fn enumerate_semilattices_bounded(n: usize, bound: usize) -> Result<Vec<SemilatticeTable>> {
    Ok(enumerate_levels_bounded(n, bound)?.pop().expect("nonempty"))
}

/// Congruence counts attained by `n`-element semilattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub n: usize,
    pub values: Vec<u64>,
    /// Up to the witness cap canonical tables per value, empty unless requested.
    pub witnesses: BTreeMap<u64, Vec<SemilatticeTable>>,
    /// Exact number of semilattices attaining each value.
    pub witness_totals: BTreeMap<u64, usize>,
    /// Classes of all semilattices attaining each value.
    pub classes: BTreeMap<u64, BTreeSet<SemilatticeClass>>,
}

impl Spectrum {
    /// Builds the spectrum of a complete list of `n`-element semilattices.
    pub fn from_tables(n: usize, tables: &[SemilatticeTable], with_witnesses: bool, cap: usize) -> Self {
        let reports: Vec<(u64, SemilatticeClass)> = tables
            .par_iter()
            .map(|t| {
                let r = classify(t);
                (r.congruence_count, r.class)
            })
            .collect();
        let mut witnesses: BTreeMap<u64, Vec<SemilatticeTable>> = BTreeMap::new();
        let mut witness_totals: BTreeMap<u64, usize> = BTreeMap::new();
        let mut classes: BTreeMap<u64, BTreeSet<SemilatticeClass>> = BTreeMap::new();
        for (t, &(k, class)) in tables.iter().zip(&reports) {
            *witness_totals.entry(k).or_default() += 1;
            classes.entry(k).or_default().insert(class);
            if with_witnesses {
                let list = witnesses.entry(k).or_default();
                if list.len() < cap {
                    list.push(t.clone());
                }
            }
        }
        Spectrum {
            n,
            values: witness_totals.keys().copied().collect(),
            witnesses,
            witness_totals,
            classes,
        }
    }

    /// The `m` largest values with the classes of their witnesses,
    /// largest first.
    pub fn top(&self, m: usize) -> Result<Vec<(u64, BTreeSet<SemilatticeClass>)>> {
        if self.values.len() < m {
            return Err(Error::NotEnoughValues {
                available: self.values.len(),
                requested: m,
            });
        }
        Ok(self
            .values
            .iter()
            .rev()
            .take(m)
            .map(|k| (*k, self.classes[k].clone()))
            .collect())
    }
}

pub fn spectrum(n: usize, with_witnesses: bool) -> Result<Spectrum> {
    let tables = enumerate_semilattices(n)?;
    Ok(Spectrum::from_tables(n, &tables, with_witnesses, DEFAULT_WITNESS_CAP))
}

pub fn top_values(n: usize, m: usize) -> Result<Vec<(u64, BTreeSet<SemilatticeClass>)>> {
    spectrum(n, false)?.top(m)
}
