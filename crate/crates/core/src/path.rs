//! Paths subordinate to a singlestep expression.
//!
//! A path `[p_0, .., p_d]` starts at the identity `(I_0, I_0)`-coset. At an
//! up-step it moves to the unique `(I_0, I_{k+1})`-coset containing `p_k`; at a
//! down-step it picks any `(I_0, I_{k+1})`-coset inside `p_k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::coset::DoubleCoset;
use crate::error::{Error, Result};
use crate::expr::SinglestepExpr;
use crate::gens::GenSet;
use crate::group::CoxeterGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubordinatePath {
    expr: SinglestepExpr,
    cosets: Vec<DoubleCoset>,
}

impl SubordinatePath {
    /// Checks every subordination condition before accepting the path.
    pub fn new(g: &CoxeterGroup, expr: SinglestepExpr, cosets: Vec<DoubleCoset>) -> Result<Self> {
        if let Some(reason) = subordination_failure(g, &expr, &cosets) {
            return Err(Error::InvalidExpression(format!("not a subordinate path: {reason}")));
        }
        Ok(SubordinatePath { expr, cosets })
    }

    pub fn expr(&self) -> &SinglestepExpr {
        &self.expr
    }
    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }
    pub fn terminus(&self) -> DoubleCoset {
        *self.cosets.last().expect("path is nonempty")
    }

    /// Whether the maximal element stays fixed at every down-step.
    pub fn is_forward(&self) -> bool {
        (1..self.cosets.len())
            .all(|k| self.expr.is_up_step(k) || self.cosets[k].max() == self.cosets[k - 1].max())
    }
}

/// Why `cosets` is not subordinate to `expr`, or `None` if it is.
pub fn subordination_failure(g: &CoxeterGroup, expr: &SinglestepExpr, cosets: &[DoubleCoset]) -> Option<String> {
    let sets = expr.sets();
    if cosets.len() != sets.len() {
        return Some(format!("{} cosets for {} subsets", cosets.len(), sets.len()));
    }
    let start = sets[0];
    for (k, (c, &set)) in cosets.iter().zip(sets).enumerate() {
        if c.left() != start || c.right() != set {
            return Some(format!("step {k} has type ({}, {})", c.left(), c.right()));
        }
    }
    if cosets[0] != g.identity_coset(start) {
        return Some("does not start at the identity coset".into());
    }
    for k in 1..cosets.len() {
        let (prev, next) = (&cosets[k - 1], &cosets[k]);
        // Up-step: next contains prev. Down-step: prev contains next.
        let ok = if expr.is_up_step(k) {
            g.coset_of(prev.min(), start, sets[k]) == *next
        } else {
            g.coset_of(next.min(), start, sets[k - 1]) == *prev
        };
        if !ok {
            return Some(format!("steps {} and {k} do not intersect", k - 1));
        }
    }
    None
}

impl CoxeterGroup {
    /// Every path subordinate to `e`, depth first, with down-step branches in
    /// ShortLex order of their minimal elements.
    pub fn enumerate_paths(&self, e: &SinglestepExpr) -> Vec<SubordinatePath> {
        fn go(
            g: &CoxeterGroup,
            e: &SinglestepExpr,
            prefix: &mut Vec<DoubleCoset>,
            out: &mut Vec<SubordinatePath>,
        ) {
            let k = prefix.len();
            if k == e.sets().len() {
                out.push(SubordinatePath {
                    expr: e.clone(),
                    cosets: prefix.clone(),
                });
                return;
            }
            let current = *prefix.last().expect("prefix is nonempty");
            let next_set = e.sets()[k];
            let choices = if e.is_up_step(k) {
                vec![g.coset_of(current.min(), e.first(), next_set)]
            } else {
                g.sub_cosets(&current, next_set).expect("down-step shrinks the subset")
            };
            for c in choices {
                prefix.push(c);
                go(g, e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(self, e, &mut vec![self.identity_coset(e.first())], &mut out);
        out
    }

    /// The path that keeps the maximal element fixed at each down-step.
    pub fn forward_path(&self, e: &SinglestepExpr) -> SubordinatePath {
        let start = e.first();
        let mut cosets = vec![self.identity_coset(start)];
        for k in 1..e.sets().len() {
            let prev = cosets[k - 1];
            let witness = if e.is_up_step(k) { prev.min() } else { prev.max() };
            cosets.push(self.coset_of(witness, start, e.sets()[k]));
        }
        SubordinatePath {
            expr: e.clone(),
            cosets,
        }
    }

    /// Distinct termini of the paths subordinate to `e`, sorted.
    pub fn term_set(&self, e: &SinglestepExpr) -> Vec<DoubleCoset> {
        let mut out: Vec<DoubleCoset> = self.enumerate_paths(e).iter().map(SubordinatePath::terminus).collect();
        out.sort_by_key(DoubleCoset::sort_key);
        out.dedup();
        out
    }

    /// `[p_0, .., p_c = p, p * q_1, .., p * q_d]` where `p` is the terminus of
    /// `pp`.
    pub fn concat_paths(&self, pp: &SubordinatePath, qq: &SubordinatePath) -> Result<SubordinatePath> {
        let expr = pp.expr.concat(&qq.expr)?;
        let p = pp.terminus();
        let mut cosets = pp.cosets.clone();
        for q in &qq.cosets[1..] {
            cosets.push(self.coset_star(&p, q)?);
        }
        Ok(SubordinatePath { expr, cosets })
    }

    /// One line per step: `k: I_k | min=.. max=..`.
    pub fn render_path(&self, path: &SubordinatePath) -> String {
        let mut out = String::new();
        for (k, (c, set)) in path.cosets.iter().zip(path.expr.sets()).enumerate() {
            writeln!(
                out,
                "{k}: {set} | min={} max={}",
                self.format(c.min()),
                self.format(c.max())
            )
            .expect("writing to a String");
        }
        out
    }
}

/// The number of subordinate paths reaching each coset, advanced one step
/// at a time. Counting by dynamic programming avoids listing paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFrontier {
    start: GenSet,
    current: GenSet,
    /// Quotient index of each reachable `(start, current)`-coset.
    counts: BTreeMap<usize, u64>,
}

impl PathFrontier {
    /// The frontier of the width-0 expression `[start]`.
    pub fn new(g: &CoxeterGroup, start: GenSet) -> Self {
        let q = g.quotient(start, start);
        let id = q.index_of(&g.identity_coset(start));
        PathFrontier {
            start,
            current: start,
            counts: BTreeMap::from([(id, 1)]),
        }
    }

    /// Extends every path by one step to `next`.
    pub fn step(&self, g: &CoxeterGroup, next: GenSet) -> Result<Self> {
        if self.current.single_difference(next).is_none() {
            return Err(Error::InvalidExpression(format!(
                "cannot step from [{}] to [{}]",
                self.current.to_bare_string(),
                next.to_bare_string()
            )));
        }
        let from = g.quotient(self.start, self.current);
        let to = g.quotient(self.start, next);
        let mut counts = BTreeMap::new();
        let up = self.current.is_subset(next);
        for (&id, &n) in &self.counts {
            if up {
                *counts.entry(to.class_of(from.coset(id).min())).or_insert(0) += n;
            } else {
                let mut children: Vec<usize> = from.members(id).iter().map(|&w| to.class_of(w)).collect();
                children.sort_unstable();
                children.dedup();
                for c in children {
                    *counts.entry(c).or_insert(0) += n;
                }
            }
        }
        Ok(PathFrontier {
            start: self.start,
            current: next,
            counts,
        })
    }

    /// Frontier after following all of `e`.
    pub fn of_expression(g: &CoxeterGroup, e: &SinglestepExpr) -> Self {
        e.sets()[1..].iter().fold(Self::new(g, e.first()), |f, &set| {
            f.step(g, set).expect("expression steps are valid")
        })
    }

    pub fn current(&self) -> GenSet {
        self.current
    }

    /// Reachable cosets with their path counts, in quotient order.
    pub fn counts<'a>(&'a self, g: &'a CoxeterGroup) -> impl Iterator<Item = (DoubleCoset, u64)> + 'a {
        let q = g.quotient(self.start, self.current);
        self.counts.iter().map(move |(&id, &n)| (*q.coset(id), n))
    }

    /// Quotient indices of the reachable cosets.
    pub fn reachable(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    /// Number of paths ending at the coset with this quotient index.
    pub fn count_of(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn total_paths(&self) -> u64 {
        self.counts.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GenSet;

    const A: GenSet = GenSet::from_bits(0b01);
    const AB: GenSet = GenSet::from_bits(0b11);
    const E: GenSet = GenSet::EMPTY;

    fn ex(sets: &[GenSet]) -> SinglestepExpr {
        SinglestepExpr::new(sets.to_vec()).unwrap()
    }

    #[test]
    fn path_counts_for_small_expressions() {
        let g = CoxeterGroup::preset("A2").unwrap();
        assert_eq!(g.enumerate_paths(&ex(&[E, A])).len(), 1);
        assert_eq!(g.enumerate_paths(&ex(&[A, E])).len(), 1);
        assert_eq!(g.enumerate_paths(&ex(&[E, A, E])).len(), 2);
        assert_eq!(g.enumerate_paths(&ex(&[A])).len(), 1);

        let peak = g.enumerate_paths(&ex(&[A, AB, A]));
        assert_eq!(peak.len(), 2);
        let termini: Vec<String> = peak.iter().map(|p| g.format(p.terminus().max())).collect();
        assert_eq!(termini, ["1", "1-2-1"]);
    }

    #[test]
    fn forward_paths() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let f = g.forward_path(&ex(&[E, A, E]));
        assert_eq!(f.terminus(), g.coset_of(g.generator(0), E, E));
        assert!(f.is_forward());
        let f = g.forward_path(&ex(&[A, AB, A]));
        assert_eq!(g.format(f.terminus().max()), "1-2-1");
        assert_eq!(g.forward_path(&ex(&[A])).cosets(), &[g.identity_coset(A)]);

        let paths = g.enumerate_paths(&ex(&[E, A, E]));
        assert_eq!(paths.iter().filter(|p| p.is_forward()).count(), 1);
    }

    #[test]
    fn concat_forward_paths() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let joined = g
            .concat_paths(&g.forward_path(&ex(&[A, AB])), &g.forward_path(&ex(&[AB, A])))
            .unwrap();
        assert_eq!(joined, g.forward_path(&ex(&[A, AB, A])));
        let trivial = g.forward_path(&SinglestepExpr::trivial(A));
        let p = g.forward_path(&ex(&[A, AB, A]));
        assert_eq!(g.concat_paths(&p, &trivial).unwrap(), p);
    }

    #[test]
    fn validated_constructor() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let e = ex(&[E, A, E]);
        let id = g.identity_coset(E);
        let a = g.coset_of(g.generator(0), E, A);
        let b = g.coset_of(g.generator(1), E, E);
        assert!(SubordinatePath::new(&g, e.clone(), vec![id, a, id]).is_ok());
        assert!(SubordinatePath::new(&g, e.clone(), vec![id, a, b]).is_err());
        assert!(SubordinatePath::new(&g, e, vec![id, a]).is_err());
    }

    #[test]
    fn frontier_matches_enumeration() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let e = ex(&[E, A, AB, A, E]);
        let f = PathFrontier::of_expression(&g, &e);
        let paths = g.enumerate_paths(&e);
        assert_eq!(f.total_paths(), paths.len() as u64);
        for (c, n) in f.counts(&g) {
            assert_eq!(paths.iter().filter(|p| p.terminus() == c).count() as u64, n);
        }
    }

    #[test]
    fn render() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let text = g.render_path(&g.forward_path(&ex(&[E, A, E])));
        assert_eq!(text, "0: - | min=- max=-\n1: 1 | min=- max=1\n2: - | min=1 max=1\n");
    }
}
