//! Tree congruence, quasi-tree decomposition and classification by the
//! four largest congruence counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::congruence::{congruence_generated, is_meet_congruence, quotient};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::join_closed::{PartialJoinStructure, DEFAULT_MAX_UBTAS};
use crate::partition::Partition;
use crate::set::ElementSet;
use crate::table::{named, SemilatticeTable};

/// `c · 2^(n-6)` when it is an integer.
pub fn scaled_threshold(c: u64, n: usize) -> Option<u64> {
    if n >= 6 {
        c.checked_mul(1u64.checked_shl((n - 6) as u32)?)
    } else {
        let d = 1u64 << (6 - n);
        c.is_multiple_of(d).then(|| c / d)
    }
}

/// `k = c · 2^(n-6)`, decided as `64 k = c · 2^n` in integers.
pub fn equals_threshold(k: u64, c: u64, n: usize) -> bool {
    let lhs = 64u128 * k as u128;
    match 1u128.checked_shl(n as u32) {
        Some(p) if n < 121 => lhs == c as u128 * p,
        _ => false,
    }
}

/// `k < c · 2^(n-6)`, decided in integers.
pub fn below_threshold(k: u64, c: u64, n: usize) -> bool {
    (64u128 * k as u128) < c as u128 * (1u128 << n.min(120))
}

/// Congruence generated by `(a ∧ b, a ∨ b)` over all UBTAs `{a, b}`.
pub fn tree_congruence(s: &SemilatticeTable) -> Partition {
    let pairs: Vec<(usize, usize)> = s
        .ubtas()
        .iter()
        .map(|u| (s.meet(u.a, u.b), u.join))
        .collect();
    congruence_generated(s, &pairs).expect("UBTA elements are in range")
}

/// No two incomparable elements have an upper bound.
pub fn is_tree(s: &SemilatticeTable) -> bool {
    !s.has_ubta()
}

/// The tree congruence has exactly one nonsingleton block.
pub fn is_quasi_tree(s: &SemilatticeTable) -> bool {
    tree_congruence(s).nonsingleton_blocks().count() == 1
}

pub fn nucleus(s: &SemilatticeTable) -> Result<ElementSet> {
    let tcon = tree_congruence(s);
    let mut blocks = tcon.nonsingleton_blocks();
    match (blocks.next(), blocks.next()) {
        (Some(b), None) => Ok(b),
        _ => Err(Error::NotQuasiTree),
    }
}

/// Quotient by the tree congruence.
pub fn skeleton(s: &SemilatticeTable) -> Result<SemilatticeTable> {
    if !is_quasi_tree(s) {
        return Err(Error::NotQuasiTree);
    }
    Ok(tree_quotient(s))
}

/// Quotient by the tree congruence, for any semilattice.
pub fn tree_quotient(s: &SemilatticeTable) -> SemilatticeTable {
    quotient(s, &tree_congruence(s))
        .expect("the tree congruence is a congruence")
        .0
}

/// For a nontrivial convex subsemilattice `X` with least element `u`,
/// returns `(condition, is_congruence)` where `condition` states that
/// `u ∧ c = v ∧ c` for every `c` outside `↑u` and every maximal `v` of `X`,
/// and `is_congruence` states that collapsing exactly `X` is a congruence.
/// The two always agree.
pub fn convex_block_congruence_check(s: &SemilatticeTable, x: ElementSet) -> Result<(bool, bool)> {
    if x.len() < 2 || !s.is_convex_subsemilattice(x) {
        return Err(Error::NotConvexSubsemilattice);
    }
    let u = s.meet_of(x).expect("nonempty");
    let maximal: Vec<usize> = x
        .iter()
        .filter(|&v| s.up(v).intersection(x) == ElementSet::singleton(v))
        .collect();
    let outside = s.elements().difference(s.up(u));
    let condition = outside
        .iter()
        .all(|c| maximal.iter().all(|&v| s.meet(u, c) == s.meet(v, c)));
    let collapsed = Partition::with_single_block(s.n(), x);
    let is_congruence = is_meet_congruence(s, &collapsed)?;
    Ok((condition, is_congruence))
}

/// Structural classes attaining the four largest congruence counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SemilatticeClass {
    Tree,
    NucleusB4,
    NucleusN5,
    NucleusF,
    NucleusN6,
    Other,
}

impl SemilatticeClass {
    pub const ALL: [SemilatticeClass; 6] = [
        SemilatticeClass::Tree,
        SemilatticeClass::NucleusB4,
        SemilatticeClass::NucleusN5,
        SemilatticeClass::NucleusF,
        SemilatticeClass::NucleusN6,
        SemilatticeClass::Other,
    ];

    /// `c` such that the class has exactly `c · 2^(n-6)` congruences.
    pub fn coefficient(self) -> Option<u64> {
        match self {
            SemilatticeClass::Tree => Some(32),
            SemilatticeClass::NucleusB4 => Some(28),
            SemilatticeClass::NucleusN5 => Some(26),
            SemilatticeClass::NucleusF | SemilatticeClass::NucleusN6 => Some(25),
            SemilatticeClass::Other => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SemilatticeClass::Tree => "Tree",
            SemilatticeClass::NucleusB4 => "NucleusB4",
            SemilatticeClass::NucleusN5 => "NucleusN5",
            SemilatticeClass::NucleusF => "NucleusF",
            SemilatticeClass::NucleusN6 => "NucleusN6",
            SemilatticeClass::Other => "Other",
        }
    }

    /// Parses `Tree`, `NucleusB4`, ... case-insensitively; `b4`, `n5`, `f`
    /// and `n6` are accepted as shorthands.
    pub fn parse(s: &str) -> Option<Self> {
        let lower = s.to_ascii_lowercase();
        let key = lower.strip_prefix("nucleus").unwrap_or(&lower);
        Some(match key {
            "tree" => SemilatticeClass::Tree,
            "b4" => SemilatticeClass::NucleusB4,
            "n5" => SemilatticeClass::NucleusN5,
            "f" => SemilatticeClass::NucleusF,
            "n6" => SemilatticeClass::NucleusN6,
            "other" => SemilatticeClass::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for SemilatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class: SemilatticeClass,
    pub n: usize,
    pub congruence_count: u64,
    pub predicted_count: Option<u64>,
    pub ubta_count: usize,
    pub nucleus: Option<ElementSet>,
    pub skeleton: Option<SemilatticeTable>,
}

impl ClassificationReport {
    /// The counted value matches the class prediction (vacuous for `Other`).
    pub fn prediction_holds(&self) -> bool {
        match self.predicted_count {
            Some(p) => p == self.congruence_count,
            None => self.class == SemilatticeClass::Other,
        }
    }
}

fn nucleus_class(s: &SemilatticeTable, block: ElementSet) -> SemilatticeClass {
    let Ok((sub, _)) = s.restrict(block) else {
        return SemilatticeClass::Other;
    };
    let candidates = [
        ("b4", SemilatticeClass::NucleusB4),
        ("n5", SemilatticeClass::NucleusN5),
        ("f", SemilatticeClass::NucleusF),
        ("n6", SemilatticeClass::NucleusN6),
    ];
    for (name, class) in candidates {
        let reference = named(name).expect("built-in name");
        if sub.n() == reference.n() && are_isomorphic(&sub, &reference) {
            return class;
        }
    }
    SemilatticeClass::Other
}

/// Classifies by structure alone; the congruence count is computed
/// separately and only cross-checks the predicted value.
pub fn classify(s: &SemilatticeTable) -> ClassificationReport {
    classify_with(s, DEFAULT_MAX_UBTAS)
}

pub fn classify_with(s: &SemilatticeTable, max_ubtas: usize) -> ClassificationReport {
    let n = s.n();
    let pj = PartialJoinStructure::new(s);
    let ubta_count = pj.ubtas().t();
    let congruence_count = pj.count(max_ubtas);
    let tcon = tree_congruence(s);
    let blocks: Vec<ElementSet> = tcon.nonsingleton_blocks().collect();
    let (nucleus, skeleton) = if blocks.len() == 1 {
        let sk = quotient(s, &tcon).expect("congruence").0;
        (Some(blocks[0]), Some(sk))
    } else {
        (None, None)
    };
    let class = if ubta_count == 0 {
        SemilatticeClass::Tree
    } else if let Some(block) = nucleus {
        nucleus_class(s, block)
    } else {
        SemilatticeClass::Other
    };
    let predicted_count = class.coefficient().and_then(|c| scaled_threshold(c, n));
    ClassificationReport {
        class,
        n,
        congruence_count,
        predicted_count,
        ubta_count,
        nucleus,
        skeleton,
    }
}
