//! Quasi-tree fixtures built from the named nuclei with tree attachments.

use crate::error::Result;
use crate::table::{chain, named, SemilatticeTable};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub label: String,
    pub table: SemilatticeTable,
}

fn fixture(label: &str, table: Result<SemilatticeTable>) -> Fixture {
    Fixture {
        label: label.to_string(),
        table: table.expect("fixture construction"),
    }
}

fn v_tree() -> SemilatticeTable {
    named("v").expect("built-in")
}

/// Six-element quasi-trees whose nucleus is the four-element boolean lattice.
pub fn six_element_b4() -> Vec<Fixture> {
    let b4 = named("b4").expect("built-in");
    let c1 = chain(1).expect("chain");
    vec![
        fixture("b4 over a 2-chain", b4.extend_below(2)),
        fixture("b4 under a 2-chain", b4.attach_above(3, &chain(2).expect("chain"))),
        fixture("b4 with atoms extended", b4.attach_above(1, &c1).and_then(|s| s.attach_above(2, &c1))),
        fixture("b4 over 1, under 1", b4.extend_below(1).and_then(|s| s.attach_above(4, &c1))),
        fixture("b4 with two leaves at 0", b4.attach_above(0, &c1).and_then(|s| s.attach_above(0, &c1))),
        fixture("b4 with a 2-chain at 0", b4.attach_above(0, &chain(2).expect("chain"))),
    ]
}

/// Twelve-element quasi-trees whose nucleus is the pentagon.
pub fn twelve_element_n5() -> Vec<Fixture> {
    let n5 = named("n5").expect("built-in");
    let c = |k| chain(k).expect("chain");
    vec![
        fixture("n5 over a 7-chain", n5.extend_below(7)),
        fixture("n5 under a 7-chain", n5.attach_above(4, &c(7))),
        fixture(
            "n5 over a 3-chain with a V below and a leaf above",
            n5.extend_below(3)
                .and_then(|s| s.attach_above(1, &v_tree()))
                .and_then(|s| s.attach_above(7, &c(1))),
        ),
        fixture(
            "n5 with a V above c and a 3-chain beside",
            n5.extend_below(1)
                .and_then(|s| s.attach_above(3, &v_tree()))
                .and_then(|s| s.attach_above(0, &c(3))),
        ),
    ]
}

/// Thirteen-element quasi-trees whose nucleus is `F` or `N6`.
pub fn thirteen_element_f_and_n6() -> Vec<Fixture> {
    let f = named("f").expect("built-in");
    let n6 = named("n6").expect("built-in");
    let c = |k| chain(k).expect("chain");
    vec![
        fixture("f over a 7-chain", f.extend_below(7)),
        fixture(
            "f with trees above both tops",
            f.attach_above(4, &v_tree())
                .and_then(|s| s.attach_above(5, &c(2)))
                .and_then(|s| s.extend_below(2)),
        ),
        fixture("n6 over a 7-chain", n6.extend_below(7)),
        fixture(
            "n6 under a V with a 2-chain above b",
            n6.attach_above(5, &v_tree())
                .and_then(|s| s.attach_above(4, &c(2)))
                .and_then(|s| s.extend_below(2)),
        ),
    ]
}
