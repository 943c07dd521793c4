//! Exhaustive desk-scale checks of the extremal congruence-count results,
//! run up to a chosen semilattice size.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{all_lattice_congruences, count_interval_block_equivalences, is_lattice};
use crate::enumerate::{enumerate_levels, Spectrum, DEFAULT_MAX_ENUMERATION_N};
use crate::error::Result;
use crate::fixtures;
use crate::iso::are_isomorphic;
use crate::join_closed::{verify_duality, PartialJoinStructure};
use crate::set::ElementSet;
use crate::structure::{classify, convex_block_congruence_check, is_tree, scaled_threshold, tree_quotient, SemilatticeClass};
use crate::table::{chain, named, SemilatticeTable};

/// Number of `n`-element meet semilattices up to isomorphism, `n = 1..=9`
/// (equivalently, of `(n+1)`-element lattices).
pub const SEMILATTICE_COUNTS: [usize; 9] = [1, 1, 2, 5, 15, 53, 222, 1078, 5994];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: usize,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

fn claim(id: usize, name: &str, outcome: std::result::Result<String, String>) -> ClaimResult {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    ClaimResult {
        id,
        claim: name.to_string(),
        passed,
        detail,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_spectra(levels: &[Vec<SemilatticeTable>]) -> std::result::Result<String, String> {
    let expected: [(usize, &[u64]); 4] = [(2, &[2]), (3, &[4]), (4, &[7, 8]), (5, &[12, 13, 14, 16])];
    let mut checked = Vec::new();
    for (n, values) in expected {
        let Some(tables) = levels.get(n - 1) else { break };
        let sp = Spectrum::from_tables(n, tables, true, usize::MAX);
        ensure(sp.values == values, || format!("n={n}: values {:?}", sp.values))?;
        if n == 5 {
            let m3 = named("m3").expect("built-in");
            ensure(sp.witnesses[&12].iter().any(|t| are_isomorphic(t, &m3)), || {
                "M3 is not a witness of 12".into()
            })?;
        }
        checked.push(n);
    }
    Ok(format!("sizes {checked:?}"))
}

/// Checks the four largest values and their classes at one size `n >= 6`.
pub fn check_extremal_values(n: usize, tables: &[SemilatticeTable]) -> std::result::Result<String, String> {
    let reports: Vec<(u64, SemilatticeClass)> = tables
        .par_iter()
        .map(|t| {
            let r = classify(t);
            (r.congruence_count, r.class)
        })
        .collect();
    let thresholds: Vec<u64> = [32, 28, 26, 25]
        .iter()
        .map(|&c| scaled_threshold(c, n).expect("n >= 6"))
        .collect();
    let values: BTreeSet<u64> = reports.iter().map(|r| r.0).collect();
    let top: Vec<u64> = values.iter().rev().take(4).copied().collect();
    ensure(top == thresholds, || format!("n={n}: top values {top:?}, expected {thresholds:?}"))?;
    for &(k, class) in &reports {
        let expected_class: &[SemilatticeClass] = if k == thresholds[0] {
            &[SemilatticeClass::Tree]
        } else if k == thresholds[1] {
            &[SemilatticeClass::NucleusB4]
        } else if k == thresholds[2] {
            &[SemilatticeClass::NucleusN5]
        } else if k == thresholds[3] {
            &[SemilatticeClass::NucleusF, SemilatticeClass::NucleusN6]
        } else {
            &[SemilatticeClass::Other]
        };
        ensure(expected_class.contains(&class), || {
            format!("n={n}: count {k} with class {class}")
        })?;
        let expected_count = match class {
            SemilatticeClass::Tree => Some(thresholds[0]),
            SemilatticeClass::NucleusB4 => Some(thresholds[1]),
            SemilatticeClass::NucleusN5 => Some(thresholds[2]),
            SemilatticeClass::NucleusF | SemilatticeClass::NucleusN6 => Some(thresholds[3]),
            SemilatticeClass::Other => None,
        };
        ensure(expected_count.is_none_or(|e| e == k), || {
            format!("n={n}: class {class} with count {k}")
        })?;
    }
    Ok(format!("n={n}: {} semilattices, top {top:?}", tables.len()))
}

fn fixture_counts() -> std::result::Result<String, String> {
    let groups = [
        (fixtures::six_element_b4(), 28u64, SemilatticeClass::NucleusB4),
        (fixtures::twelve_element_n5(), 1664, SemilatticeClass::NucleusN5),
    ];
    let mut total = 0;
    for (group, expected, class) in groups {
        for f in group {
            let r = classify(&f.table);
            ensure(r.congruence_count == expected && r.class == class, || {
                format!("{}: {} congruences, class {}", f.label, r.congruence_count, r.class)
            })?;
            total += 1;
        }
    }
    for f in fixtures::thirteen_element_f_and_n6() {
        let r = classify(&f.table);
        ensure(
            r.congruence_count == 3200
                && matches!(r.class, SemilatticeClass::NucleusF | SemilatticeClass::NucleusN6),
            || format!("{}: {} congruences, class {}", f.label, r.congruence_count, r.class),
        )?;
        total += 1;
    }
    Ok(format!("{total} fixtures"))
}

fn duality(levels: &[Vec<SemilatticeTable>], max_n: usize) -> std::result::Result<String, String> {
    let mut count = 0;
    for tables in levels.iter().take(max_n) {
        for t in tables {
            let report = verify_duality(t).map_err(|e| e.to_string())?;
            let pj = PartialJoinStructure::new(t);
            let brute = pj.count_join_closed_bruteforce().map_err(|e| e.to_string())?;
            let ie = pj.count_join_closed_ie().map_err(|e| e.to_string())?;
            ensure(
                report.congruences as u64 == brute && brute == ie,
                || format!("counts differ: {} / {brute} / {ie}", report.congruences),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} semilattices"))
}

fn tree_quotients(levels: &[Vec<SemilatticeTable>], max_n: usize) -> std::result::Result<String, String> {
    let mut count = 0;
    for t in levels.iter().take(max_n).flatten() {
        ensure(is_tree(&tree_quotient(t)), || format!("quotient of {t:?} is not a tree"))?;
        count += 1;
    }
    Ok(format!("{count} semilattices"))
}

fn convex_blocks(levels: &[Vec<SemilatticeTable>], max_n: usize) -> std::result::Result<String, String> {
    let mut count = 0;
    for t in levels.iter().take(max_n).flatten() {
        for bits in 0..1u64 << t.n() {
            let x = ElementSet::from_bits(bits);
            if x.len() < 2 || !t.is_convex_subsemilattice(x) {
                continue;
            }
            let (cond, cong) = convex_block_congruence_check(t, x).map_err(|e| e.to_string())?;
            ensure(cond == cong, || format!("{t:?}, block {x:?}: {cond} vs {cong}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} convex subsemilattices"))
}

fn lattice_bound(levels: &[Vec<SemilatticeTable>], max_n: usize) -> std::result::Result<String, String> {
    let mut count = 0;
    for (i, tables) in levels.iter().take(max_n).enumerate() {
        let n = i + 1;
        for t in tables.iter().filter(|t| is_lattice(t)) {
            let k = all_lattice_congruences(t).map_err(|e| e.to_string())?.len() as u64;
            let max = 1u64 << (n - 1);
            ensure(k <= max && (k == max) == t.is_chain(), || {
                format!("n={n}: {k} lattice congruences, chain = {}", t.is_chain())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} lattices"))
}

fn interval_blocks() -> std::result::Result<String, String> {
    let grid = count_interval_block_equivalences(&named("grid2x3").expect("built-in")).map_err(|e| e.to_string())?;
    let c6 = count_interval_block_equivalences(&chain(6).expect("chain")).map_err(|e| e.to_string())?;
    ensure(grid == 34 && c6 == 32, || format!("grid {grid}, chain {c6}"))?;
    Ok("grid2x3 = 34, chain_6 = 32".into())
}

fn enumeration_counts(levels: &[Vec<SemilatticeTable>]) -> std::result::Result<String, String> {
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    ensure(counts[..] == SEMILATTICE_COUNTS[..counts.len()], || format!("counts {counts:?}"))?;
    Ok(format!("{counts:?}"))
}

/// Runs every check that fits within semilattices of at most `n_max`
/// elements (capped at the enumeration bound).
pub fn verify_all(n_max: usize) -> Result<Vec<ClaimResult>> {
    let n_max = n_max.clamp(2, DEFAULT_MAX_ENUMERATION_N);
    let levels = enumerate_levels(n_max)?;
    let mut out = vec![claim(1, "small spectra", small_spectra(&levels))];
    let extremal = if n_max >= 6 {
        (6..=n_max.min(8))
            .map(|n| check_extremal_values(n, &levels[n - 1]))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(|d| d.join("; "))
    } else {
        Ok("skipped below n = 6".into())
    };
    out.push(claim(2, "four largest counts and their classes", extremal));
    out.push(claim(3, "quasi-tree fixture counts", fixture_counts()));
    out.push(claim(4, "congruences match join-closed subsets", duality(&levels, n_max.min(7))));
    out.push(claim(5, "tree-congruence quotients are trees", tree_quotients(&levels, n_max.min(7))));
    out.push(claim(6, "convex-block congruence criterion", convex_blocks(&levels, n_max.min(6))));
    out.push(claim(7, "lattice congruence bound", lattice_bound(&levels, n_max.min(8))));
    out.push(claim(8, "interval-block equivalence counts", interval_blocks()));
    out.push(claim(9, "enumeration counts", enumeration_counts(&levels)));
    Ok(out)
}
