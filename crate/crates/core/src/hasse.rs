//! Hasse diagrams of the Bruhat order on a double quotient, as DOT.

use std::fmt::Write as _;

use crate::coset::DoubleCoset;
use crate::gens::GenSet;
use crate::group::CoxeterGroup;

/// Covering pairs `(i, j)` with `cosets[i] < cosets[j]` and nothing strictly
/// between, given the order relation `leq` on positions.
pub fn covering_relations(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                covers.push((a, b));
            }
        }
    }
    covers
}

impl CoxeterGroup {
    /// Covering relations among `cosets`, all of one type.
    pub fn coset_covers(&self, cosets: &[DoubleCoset]) -> Vec<(usize, usize)> {
        covering_relations(cosets.len(), |a, b| {
            self.coset_leq(&cosets[a], &cosets[b]).expect("cosets share a type")
        })
    }

    /// DOT digraph of the Bruhat order on `(I, J)`-cosets, one node per coset
    /// labelled by its minimal word and one edge per covering relation,
    /// pointing upward.
    pub fn hasse_dot(&self, left: GenSet, right: GenSet) -> String {
        let cosets = self.enumerate_cosets(left, right);
        let mut out = String::new();
        writeln!(out, "digraph bruhat {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  label=\"I={left} J={right}\";").unwrap();
        for (i, c) in cosets.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", self.format(c.min())).unwrap();
        }
        for (a, b) in self.coset_covers(&cosets) {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
