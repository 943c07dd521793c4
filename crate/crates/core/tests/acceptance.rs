//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{naive_semilattices, Meet};
use semicon::congruence::{all_lattice_congruences, all_meet_congruences_bounded};
use semicon::enumerate::enumerate_levels;
use semicon::structure::{convex_block_congruence_check, tree_quotient};
use semicon::{
    all_meet_congruences, are_isomorphic, chain, classify, count_interval_block_equivalences,
    enumerate_semilattices, fixtures, is_lattice, is_meet_congruence, is_quasi_tree, is_tree, named,
    nucleus, spectrum, verify_duality, ElementSet, PartialJoinStructure, Partition, SemilatticeClass,
    SemilatticeTable,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn small_spectra() -> Outcome {
    let start = Instant::now();
    let expected: [(usize, &[u64]); 4] = [(2, &[2]), (3, &[4]), (4, &[7, 8]), (5, &[12, 13, 14, 16])];
    for (n, values) in expected {
        let s = spectrum(n, true).map_err(|e| e.to_string())?;
        check(s.values == values, || format!("n={n}: {:?}", s.values))?;
    }
    let m3 = named("m3").unwrap();
    let s5 = spectrum(5, true).unwrap();
    check(s5.witnesses[&12].iter().any(|t| are_isomorphic(t, &m3)), || "M3 not among witnesses of 12".into())?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{{2}}, {{4}}, {{7,8}}, {{12,13,14,16}} in {:?}", start.elapsed()))
}

fn class_coefficient(class: SemilatticeClass) -> Option<u64> {
    match class {
        SemilatticeClass::Tree => Some(32),
        SemilatticeClass::NucleusB4 => Some(28),
        SemilatticeClass::NucleusN5 => Some(26),
        SemilatticeClass::NucleusF | SemilatticeClass::NucleusN6 => Some(25),
        SemilatticeClass::Other => None,
    }
}

fn extremal_counts() -> Outcome {
    let start = Instant::now();
    let levels = enumerate_levels(8).map_err(|e| e.to_string())?;
    for n in 6..=8 {
        let scale = 1u64 << (n - 6);
        let thresholds: Vec<u64> = [32, 28, 26, 25].iter().map(|c| c * scale).collect();
        let mut by_count: BTreeMap<u64, BTreeSet<SemilatticeClass>> = BTreeMap::new();
        for t in &levels[n - 1] {
            let r = classify(t);
            let k = PartialJoinStructure::new(t).count_join_closed_bruteforce().unwrap();
            check(k == r.congruence_count, || format!("n={n}: classify {} vs scan {k}", r.congruence_count))?;
            by_count.entry(k).or_default().insert(r.class);
            if let Some(c) = class_coefficient(r.class) {
                check(k == c * scale, || format!("n={n}: class {} has count {k}", r.class))?;
            }
        }
        let top: Vec<u64> = by_count.keys().rev().take(4).copied().collect();
        check(top == thresholds, || format!("n={n}: top four {top:?}"))?;
        // nothing strictly between consecutive thresholds
        for w in thresholds.windows(2) {
            check(by_count.range(w[1] + 1..w[0]).next().is_none(), || format!("n={n}: value inside {w:?}"))?;
        }
        let expected: [&[SemilatticeClass]; 4] = [
            &[SemilatticeClass::Tree],
            &[SemilatticeClass::NucleusB4],
            &[SemilatticeClass::NucleusN5],
            &[SemilatticeClass::NucleusF, SemilatticeClass::NucleusN6],
        ];
        for (k, classes) in thresholds.iter().zip(expected) {
            let got: Vec<SemilatticeClass> = by_count[k].iter().copied().collect();
            check(got == classes, || format!("n={n}: count {k} has classes {got:?}"))?;
        }
        for (k, classes) in by_count.range(..thresholds[3]) {
            check(classes.iter().all(|&c| c == SemilatticeClass::Other), || format!("n={n}: {k} {classes:?}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("n = 6, 7, 8 in {:?}", start.elapsed()))
}

fn fixture_counts() -> Outcome {
    let groups = [
        (fixtures::six_element_b4(), 6, 28, named("b4").unwrap()),
        (fixtures::twelve_element_n5(), 12, 1664, named("n5").unwrap()),
        (
            fixtures::thirteen_element_f_and_n6()
                .into_iter()
                .filter(|f| f.label.starts_with('f'))
                .collect(),
            13,
            3200,
            named("f").unwrap(),
        ),
        (
            fixtures::thirteen_element_f_and_n6()
                .into_iter()
                .filter(|f| f.label.starts_with("n6"))
                .collect(),
            13,
            3200,
            named("n6").unwrap(),
        ),
    ];
    let mut total = 0;
    for (list, n, expected, core) in groups {
        check(!list.is_empty(), || format!("no fixtures with {n} elements"))?;
        for f in list {
            let start = Instant::now();
            let t = &f.table;
            check(t.n() == n && is_quasi_tree(t), || format!("{}: not a {n}-element quasi-tree", f.label))?;
            let nuc = t.restrict(nucleus(t).unwrap()).unwrap().0;
            check(are_isomorphic(&nuc, &core), || format!("{}: wrong nucleus", f.label))?;
            let pj = PartialJoinStructure::new(t);
            let listed = all_meet_congruences_bounded(t, 13).unwrap().len() as u64;
            let scanned = pj.count_join_closed_bruteforce().unwrap();
            let ie = pj.count_join_closed_ie().unwrap();
            check([listed, scanned, ie] == [expected; 3], || {
                format!("{}: {listed} / {scanned} / {ie}, expected {expected}", f.label)
            })?;
            within(start.elapsed(), Duration::from_secs(1)).map_err(|e| format!("{}: {e}", f.label))?;
            total += 1;
        }
    }
    Ok(format!("{total} fixtures: 28, 1664, 3200, 3200"))
}

fn duality() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for t in enumerate_levels(7).unwrap().iter().flatten() {
        let listed = all_meet_congruences(t).unwrap().len() as u64;
        let pj = PartialJoinStructure::new(t);
        let scanned = pj.count_join_closed_bruteforce().unwrap();
        let ie = pj.count_join_closed_ie().unwrap();
        check(listed == scanned && scanned == ie, || format!("{t:?}: {listed} / {scanned} / {ie}"))?;
        let report = verify_duality(t).map_err(|e| format!("{t:?}: {e}"))?;
        check(report.congruences as u64 == listed, || format!("{t:?}: duality image"))?;
        // independent re-check of order reversal on the explicit map
        let subsets = pj.join_closed_subsets().unwrap();
        let images: Vec<Partition> = subsets.iter().map(|&x| pj.dual_congruence(x).unwrap()).collect();
        let distinct: BTreeSet<&Partition> = images.iter().collect();
        check(distinct.len() == images.len(), || format!("{t:?}: map not injective"))?;
        for (i, &x) in subsets.iter().enumerate() {
            check(is_meet_congruence(t, &images[i]).unwrap(), || format!("{t:?}: image not a congruence"))?;
            for (j, &y) in subsets.iter().enumerate() {
                if x.is_subset(y) {
                    check(images[j].refines(&images[i]), || format!("{t:?}: not order reversing"))?;
                }
            }
        }
        count += 1;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{count} semilattices with n <= 7 in {:?}", start.elapsed()))
}

fn tree_quotients() -> Outcome {
    let mut count = 0;
    for t in enumerate_levels(7).unwrap().iter().flatten() {
        check(is_tree(&tree_quotient(t)), || format!("{t:?}"))?;
        count += 1;
    }
    Ok(format!("{count} semilattices with n <= 7"))
}

fn convex_blocks() -> Outcome {
    let mut count = 0;
    for t in enumerate_levels(6).unwrap().iter().flatten() {
        for bits in 0..1u64 << t.n() {
            let x = ElementSet::from_bits(bits);
            if x.len() < 2 || !t.is_convex_subsemilattice(x) {
                continue;
            }
            let (condition, congruence) = convex_block_congruence_check(t, x).map_err(|e| e.to_string())?;
            let direct = is_meet_congruence(t, &Partition::with_single_block(t.n(), x)).unwrap();
            check(condition == congruence && congruence == direct, || format!("{t:?}, {x:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} convex subsemilattices"))
}

fn lattices() -> Outcome {
    let mut count = 0;
    for t in enumerate_levels(8).unwrap().iter().flatten().filter(|t| is_lattice(t)) {
        let k = all_lattice_congruences(t).unwrap().len() as u64;
        let bound = 1u64 << (t.n() - 1);
        check(k <= bound && (k == bound) == t.is_chain(), || format!("{t:?}: {k}"))?;
        count += 1;
    }
    Ok(format!("{count} lattices with at most 8 elements"))
}

fn interval_blocks() -> Outcome {
    let grid = count_interval_block_equivalences(&named("grid2x3").unwrap()).unwrap();
    let c6 = count_interval_block_equivalences(&chain(6).unwrap()).unwrap();
    check(grid == 34 && c6 == 32, || format!("grid2x3 {grid}, chain_6 {c6}"))?;
    Ok(format!("grid2x3 = {grid}, chain_6 = {c6}"))
}

fn enumeration() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=6 {
        let ours = enumerate_semilattices(n).unwrap();
        let naive = naive_semilattices(n);
        let forms: BTreeSet<Meet> = ours.iter().map(|t: &SemilatticeTable| common::naive_canonical(&t.rows())).collect();
        check(ours.len() == naive.len() && forms == naive, || {
            format!("n={n}: {} vs oracle {}", ours.len(), naive.len())
        })?;
        counts.push(naive.len());
    }
    Ok(format!("{counts:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("small spectra", small_spectra),
        ("four largest counts at n = 6, 7, 8", extremal_counts),
        ("quasi-tree fixture counts", fixture_counts),
        ("congruences vs join-closed subsets", duality),
        ("tree-congruence quotients", tree_quotients),
        ("convex-block criterion", convex_blocks),
        ("lattice congruence bound", lattices),
        ("interval-block equivalences", interval_blocks),
        ("enumeration vs naive oracle", enumeration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
