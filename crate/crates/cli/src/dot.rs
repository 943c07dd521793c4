use std::fmt::Write;

use semicon::{ElementSet, SemilatticeTable};

/// Hasse diagram in DOT, bottom to top. Elements of `marked` are filled black.
pub fn hasse_dot(s: &SemilatticeTable, marked: ElementSet) -> String {
    let mut out = String::new();
    out.push_str("digraph semilattice {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for x in 0..s.n() {
        if marked.contains(x) {
            writeln!(out, "  {x} [style=filled, fillcolor=black, fontcolor=white];").unwrap();
        } else {
            writeln!(out, "  {x};").unwrap();
        }
    }
    for (lo, hi) in s.covers() {
        writeln!(out, "  {lo} -> {hi};").unwrap();
    }
    out.push_str("}\n");
    out
}
