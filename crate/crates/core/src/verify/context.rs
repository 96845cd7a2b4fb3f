use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::{Comparator, MAX_RENDERED};
use crate::coset::{DoubleCoset, Quotient};
use crate::expr::{all_expressions, SinglestepExpr};
use crate::gens::GenSet;
use crate::group::{CoxeterGroup, Element};
use crate::path::PathFrontier;

/// Ordering key of a counterexample: total length, then ShortLex indices.
pub(super) type Key = (u32, Vec<u32>);

/// Failures of one check. Only the smallest [`MAX_RENDERED`] are kept.
#[derive(Default)]
pub(super) struct Tally {
    pub universe: u64,
    pub count: u64,
    kept: Vec<(Key, String)>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, fail: impl FnOnce() -> (Key, String)) {
        self.universe += 1;
        if !ok {
            self.count += 1;
            self.kept.push(fail());
            if self.kept.len() >= 4 * MAX_RENDERED {
                self.trim();
            }
        }
    }

    fn trim(&mut self) {
        self.kept.sort();
        self.kept.dedup();
        self.kept.truncate(MAX_RENDERED);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.universe += other.universe;
        self.count += other.count;
        self.kept.extend(other.kept);
        self.trim();
        self
    }

    pub fn into_rendered(mut self) -> Vec<String> {
        self.trim();
        self.kept.into_iter().map(|(_, s)| s).collect()
    }
}

/// Runs `f` on every item in parallel and merges the tallies.
pub(super) fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// An expression up to the width cap with its coset and termini.
pub(super) struct Capped {
    pub expr: SinglestepExpr,
    pub coset: DoubleCoset,
    /// Quotient indices of `Term(expr)`, sorted.
    pub terms: Vec<usize>,
}

/// A reduced expression with the path counts of its subordinate paths.
pub(super) struct Reduced {
    pub expr: SinglestepExpr,
    pub coset: DoubleCoset,
    pub frontier: PathFrontier,
}

pub(super) struct Ctx<'g> {
    pub g: &'g CoxeterGroup,
    pub n: usize,
    pub rank: usize,
    pub width_cap: usize,
    pub samples: usize,
    pub seed: u64,
    pub subsets: Vec<GenSet>,
    le: Vec<bool>,
    quotients: Vec<Arc<Quotient>>,
    capped: OnceLock<(Vec<Capped>, HashMap<SinglestepExpr, usize>)>,
    reduced: OnceLock<Vec<Reduced>>,
}

impl<'g> Ctx<'g> {
    pub fn new(g: &'g CoxeterGroup, width_cap: usize, samples: usize, seed: u64, leq: &Comparator) -> Self {
        let n = g.size();
        let rank = g.rank();
        let le: Vec<bool> = (0..n * n)
            .into_par_iter()
            .map(|i| leq(g, Element::from_index(i / n), Element::from_index(i % n)))
            .collect();
        let subsets: Vec<GenSet> = GenSet::all_subsets(rank).collect();
        let quotients = subsets
            .iter()
            .flat_map(|&a| subsets.iter().map(move |&b| (a, b)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(a, b)| g.quotient(a, b))
            .collect();
        Ctx {
            g,
            n,
            rank,
            width_cap,
            samples,
            seed,
            subsets,
            le,
            quotients,
            capped: OnceLock::new(),
            reduced: OnceLock::new(),
        }
    }

    pub fn le(&self, x: Element, y: Element) -> bool {
        self.le[x.index() * self.n + y.index()]
    }

    pub fn quotient(&self, left: GenSet, right: GenSet) -> &Quotient {
        &self.quotients[(left.bits() as usize) << self.rank | right.bits() as usize]
    }

    pub fn coset_of(&self, w: Element, left: GenSet, right: GenSet) -> DoubleCoset {
        let q = self.quotient(left, right);
        *q.coset(q.class_of(w))
    }

    pub fn index_of(&self, p: &DoubleCoset) -> usize {
        self.quotient(p.left(), p.right()).class_of(p.min())
    }

    /// Coset order through the comparator.
    pub fn cle(&self, p: &DoubleCoset, q: &DoubleCoset) -> bool {
        self.le(p.min(), q.min())
    }

    pub fn star(&self, p: &DoubleCoset, q: &DoubleCoset) -> DoubleCoset {
        debug_assert_eq!(p.right(), q.left());
        self.coset_of(self.g.demazure(p.max(), q.max()), p.left(), q.right())
    }

    /// `p.q` when the star product is length additive relative to `J`.
    pub fn reduced_compose(&self, p: &DoubleCoset, q: &DoubleCoset) -> Option<DoubleCoset> {
        let r = self.star(p, q);
        let g = self.g;
        (g.length(r.max()) + g.set_length(p.right()) == g.length(p.max()) + g.length(q.max())).then_some(r)
    }

    /// All ordered pairs `(I, J)` of subsets.
    pub fn subset_pairs(&self) -> Vec<(GenSet, GenSet)> {
        self.subsets
            .iter()
            .flat_map(|&a| self.subsets.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn element_key(&self, xs: &[Element]) -> Key {
        (
            xs.iter().map(|&x| self.g.length(x)).sum(),
            xs.iter().map(|x| x.index() as u32).collect(),
        )
    }

    pub fn coset_key(&self, ps: &[DoubleCoset]) -> Key {
        let mut idx: Vec<u32> = ps.iter().map(|p| p.min().index() as u32).collect();
        idx.extend(ps.iter().flat_map(|p| [p.left().bits(), p.right().bits()]));
        (ps.iter().map(DoubleCoset::length).sum(), idx)
    }

    pub fn expr_key(&self, es: &[&SinglestepExpr]) -> Key {
        (
            es.iter().map(|e| self.g.expr_length(e)).sum(),
            es.iter().flat_map(|e| e.sets().iter().map(|s| s.bits())).collect(),
        )
    }

    pub fn show(&self, p: &DoubleCoset) -> String {
        self.g.describe(p)
    }

    pub fn showx(&self, x: Element) -> String {
        self.g.format(x)
    }

    /// Indices of `{<= p}` in `p`'s quotient, sorted.
    pub fn lower_set(&self, p: &DoubleCoset) -> Vec<usize> {
        let q = self.quotient(p.left(), p.right());
        (0..q.len()).filter(|&i| self.cle(q.coset(i), p)).collect()
    }

    /// Every expression of width at most the cap, with its termini.
    pub fn capped(&self) -> &(Vec<Capped>, HashMap<SinglestepExpr, usize>) {
        self.capped.get_or_init(|| {
            let exprs: Vec<SinglestepExpr> = self
                .subsets
                .iter()
                .flat_map(|&s| all_expressions(self.rank, s, self.width_cap))
                .collect();
            let records: Vec<Capped> = exprs
                .into_par_iter()
                .map(|expr| {
                    let coset = self.g.expressed_coset(&expr);
                    let terms = self.g.term_set(&expr).iter().map(|t| self.index_of(t)).collect();
                    Capped { expr, coset, terms }
                })
                .collect();
            let index = records.iter().enumerate().map(|(i, r)| (r.expr.clone(), i)).collect();
            (records, index)
        })
    }

    /// Every reduced expression, of any width. Contiguous pieces of reduced
    /// expressions are reduced, so extending only reduced prefixes reaches
    /// all of them; widths are bounded by `2 l(w_0)`.
    pub fn reduced(&self) -> &[Reduced] {
        self.reduced.get_or_init(|| {
            let bound = 2 * self.g.set_length(self.g.generators()) as usize;
            self.subsets
                .par_iter()
                .flat_map_iter(|&start| {
                    let mut out = Vec::new();
                    let frontier = PathFrontier::new(self.g, start);
                    self.extend_reduced(SinglestepExpr::trivial(start), frontier, bound, &mut out);
                    out
                })
                .collect()
        })
    }

    fn extend_reduced(&self, expr: SinglestepExpr, frontier: PathFrontier, bound: usize, out: &mut Vec<Reduced>) {
        let last = expr.last();
        if expr.width() < bound {
            for s in 0..self.rank {
                let next = if last.contains(s) { last.without(s) } else { last.with(s) };
                let mut longer = expr.clone();
                longer.push(next).expect("one-generator step");
                if self.g.is_reduced(&longer) {
                    let f = frontier.step(self.g, next).expect("one-generator step");
                    self.extend_reduced(longer, f, bound, out);
                }
            }
        }
        let coset = self.g.expressed_coset(&expr);
        out.push(Reduced { expr, coset, frontier });
    }
}
