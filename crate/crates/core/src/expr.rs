//! Singular expressions: sequences of generator subsets.
//!
//! A singlestep expression `[I_0, .., I_d]` adds or removes one generator at
//! each step. A multistep expression `[[I_0 < K_1 > I_1 < .. < K_m > I_m]]`
//! keeps only the local minima and maxima.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use crate::coset::DoubleCoset;
use crate::error::{Error, Result};
use crate::gens::GenSet;
use crate::group::{CoxeterGroup, Element};

/// `[I_0, .., I_d]` where neighbouring subsets differ by exactly one
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SinglestepExpr(Vec<GenSet>);

impl SinglestepExpr {
    pub fn new(sets: Vec<GenSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidExpression("expression has no subsets".into()));
        }
        for (k, pair) in sets.windows(2).enumerate() {
            if pair[0].single_difference(pair[1]).is_none() {
                return Err(Error::InvalidExpression(format!(
                    "step {} from [{}] to [{}] does not add or remove exactly one generator",
                    k + 1,
                    pair[0].to_bare_string(),
                    pair[1].to_bare_string()
                )));
            }
        }
        Ok(SinglestepExpr(sets))
    }

    /// The width-0 expression `[I]`.
    pub fn trivial(set: GenSet) -> Self {
        SinglestepExpr(vec![set])
    }

    pub fn sets(&self) -> &[GenSet] {
        &self.0
    }
    /// Number of steps `d`.
    pub fn width(&self) -> usize {
        self.0.len() - 1
    }
    pub fn first(&self) -> GenSet {
        self.0[0]
    }
    pub fn last(&self) -> GenSet {
        *self.0.last().expect("expression is nonempty")
    }

    /// Whether step `k` (from `I_{k-1}` to `I_k`, `1 <= k <= d`) adds a
    /// generator.
    pub fn is_up_step(&self, k: usize) -> bool {
        self.0[k - 1].is_subset(self.0[k])
    }

    /// Appends one step, checking it adds or removes a single generator.
    pub fn push(&mut self, set: GenSet) -> Result<()> {
        if self.last().single_difference(set).is_none() {
            return Err(Error::InvalidExpression(format!(
                "cannot step from [{}] to [{}]",
                self.last().to_bare_string(),
                set.to_bare_string()
            )));
        }
        self.0.push(set);
        Ok(())
    }

    /// The contiguous subexpression `[I_from, .., I_to]`.
    pub fn slice(&self, from: usize, to: usize) -> SinglestepExpr {
        SinglestepExpr(self.0[from..=to].to_vec())
    }

    /// `self ∘ other`, sharing the junction subset.
    pub fn concat(&self, other: &SinglestepExpr) -> Result<SinglestepExpr> {
        if self.last() != other.first() {
            return Err(Error::JunctionMismatch {
                end: self.last(),
                start: other.first(),
            });
        }
        let mut sets = self.0.clone();
        sets.extend_from_slice(&other.0[1..]);
        Ok(SinglestepExpr(sets))
    }

    /// Local maxima and minima. A leading down-step gives `K_1 = I_0`; a
    /// trailing up-step gives `I_m = K_m`.
    pub fn to_multistep(&self) -> MultistepExpr {
        let d = self.width();
        let mut bottoms = vec![self.0[0]];
        let mut tops = Vec::new();
        if d == 0 {
            return MultistepExpr { bottoms, tops };
        }
        if !self.is_up_step(1) {
            tops.push(self.0[0]);
        }
        for k in 1..d {
            match (self.is_up_step(k), self.is_up_step(k + 1)) {
                (true, false) => tops.push(self.0[k]),
                (false, true) => bottoms.push(self.0[k]),
                _ => {}
            }
        }
        if self.is_up_step(d) {
            tops.push(self.0[d]);
        }
        bottoms.push(self.0[d]);
        MultistepExpr { bottoms, tops }
    }

    /// Parses text such as `[1],[1 2],[1]`; `[]` is the empty subset.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let sets = parse_bracketed(text, rank)?;
        Self::new(sets)
    }
}

fn parse_bracketed(text: &str, rank: usize) -> Result<Vec<GenSet>> {
    let mut sets = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('[') else {
            return Err(Error::Parse {
                token: rest.chars().take(8).collect(),
                reason: "expected `[`".into(),
            });
        };
        let Some(close) = body.find(']') else {
            return Err(Error::Parse {
                token: rest.to_string(),
                reason: "missing `]`".into(),
            });
        };
        sets.push(GenSet::parse(&body[..close], rank)?);
        rest = body[close + 1..].trim_start();
        if let Some(after) = rest.strip_prefix(',') {
            rest = after.trim_start();
            if rest.is_empty() {
                return Err(Error::Parse {
                    token: ",".into(),
                    reason: "trailing comma".into(),
                });
            }
        }
    }
    if sets.is_empty() {
        return Err(Error::Parse {
            token: text.to_string(),
            reason: "empty expression".into(),
        });
    }
    Ok(sets)
}

impl fmt::Display for SinglestepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, set) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{}]", set.to_bare_string())?;
        }
        Ok(())
    }
}

/// `[[I_0 < K_1 > I_1 < .. < K_m > I_m]]`.
///
/// Interior minima are strictly below both neighbouring maxima, and no
/// maximum equals both of its neighbours, so that every chain corresponds to
/// exactly one singlestep expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultistepExpr {
    bottoms: Vec<GenSet>,
    tops: Vec<GenSet>,
}

impl MultistepExpr {
    /// Builds `[[bottoms[0] < tops[0] > bottoms[1] < ..]]`.
    pub fn new(bottoms: Vec<GenSet>, tops: Vec<GenSet>) -> Result<Self> {
        if bottoms.len() != tops.len() + 1 {
            return Err(Error::InvalidChain(format!(
                "{} minima and {} maxima do not alternate",
                bottoms.len(),
                tops.len()
            )));
        }
        let m = tops.len();
        for i in 1..=m {
            let (lo, top, hi) = (bottoms[i - 1], tops[i - 1], bottoms[i]);
            if !lo.is_subset(top) || !hi.is_subset(top) {
                return Err(Error::InvalidChain(format!(
                    "maximum [{}] does not contain its neighbours",
                    top.to_bare_string()
                )));
            }
            if lo == top && hi == top {
                return Err(Error::InvalidChain(format!(
                    "maximum [{}] equals both neighbours",
                    top.to_bare_string()
                )));
            }
        }
        for i in 1..m {
            if bottoms[i] == tops[i - 1] || bottoms[i] == tops[i] {
                return Err(Error::InvalidChain(format!(
                    "interior minimum [{}] is not strictly below its neighbours",
                    bottoms[i].to_bare_string()
                )));
            }
        }
        Ok(MultistepExpr { bottoms, tops })
    }

    /// `I_0, .., I_m`
    pub fn bottoms(&self) -> &[GenSet] {
        &self.bottoms
    }
    /// `K_1, .., K_m`
    pub fn tops(&self) -> &[GenSet] {
        &self.tops
    }

    /// Expands each climb and descent one generator at a time, in ascending
    /// generator order.
    pub fn to_singlestep(&self) -> SinglestepExpr {
        let mut sets = vec![self.bottoms[0]];
        let mut current = self.bottoms[0];
        for (i, &top) in self.tops.iter().enumerate() {
            for s in top.iter().filter(|&s| !current.contains(s)).collect::<Vec<_>>() {
                current = current.with(s);
                sets.push(current);
            }
            let bottom = self.bottoms[i + 1];
            for s in current.iter().filter(|&s| !bottom.contains(s)).collect::<Vec<_>>() {
                current = current.without(s);
                sets.push(current);
            }
        }
        SinglestepExpr(sets)
    }
}

impl fmt::Display for MultistepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}", self.bottoms[0])?;
        for (top, bottom) in self.tops.iter().zip(&self.bottoms[1..]) {
            write!(f, " < {top} > {bottom}")?;
        }
        f.write_str("]]")
    }
}

/// Every singlestep expression starting at `start` with width at most
/// `max_width`, in depth-first order (steps by ascending generator).
pub fn all_expressions(rank: usize, start: GenSet, max_width: usize) -> Vec<SinglestepExpr> {
    fn go(rank: usize, sets: &mut Vec<GenSet>, max_width: usize, out: &mut Vec<SinglestepExpr>) {
        out.push(SinglestepExpr(sets.clone()));
        if sets.len() > max_width {
            return;
        }
        let last = *sets.last().expect("nonempty");
        for s in 0..rank {
            let next = if last.contains(s) {
                last.without(s)
            } else {
                last.with(s)
            };
            sets.push(next);
            go(rank, sets, max_width, out);
            sets.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, &mut vec![start], max_width, &mut out);
    out
}

impl CoxeterGroup {
    /// `w_{I_0} * w_{I_1} * .. * w_{I_d}`, the maximal element of the
    /// expressed coset.
    pub fn expressed_max(&self, e: &SinglestepExpr) -> Element {
        e.sets()
            .iter()
            .fold(Element::IDENTITY, |x, &set| self.demazure(x, self.longest_element(set)))
    }

    /// The `(I_0, I_d)`-coset expressed by `e`.
    pub fn expressed_coset(&self, e: &SinglestepExpr) -> DoubleCoset {
        self.coset_of(self.expressed_max(e), e.first(), e.last())
    }

    /// The coset expressed by a multistep expression:
    /// `w_{I_0} * w_{K_1} * w_{I_1} * .. * w_{K_m} * w_{I_m}`.
    pub fn multistep_expressed_coset(&self, e: &MultistepExpr) -> DoubleCoset {
        let mut x = self.longest_element(e.bottoms[0]);
        for (&top, &bottom) in e.tops.iter().zip(&e.bottoms[1..]) {
            x = self.demazure(x, self.longest_element(top));
            x = self.demazure(x, self.longest_element(bottom));
        }
        self.coset_of(x, e.bottoms[0], *e.bottoms.last().expect("nonempty"))
    }

    /// `sum |l(I_k) - l(I_{k-1})|` over the steps.
    pub fn expr_length(&self, e: &SinglestepExpr) -> u32 {
        e.sets()
            .windows(2)
            .map(|p| self.set_length(p[0]).abs_diff(self.set_length(p[1])))
            .sum()
    }

    /// `-l(I_0) + 2 l(K_1) - 2 l(I_1) + .. + 2 l(K_m) - l(I_m)`, and `0` for
    /// `m = 0`.
    pub fn multistep_length(&self, e: &MultistepExpr) -> u32 {
        let m = e.tops.len();
        if m == 0 {
            return 0;
        }
        let mut total: i64 = -(self.set_length(e.bottoms[0]) as i64) - self.set_length(e.bottoms[m]) as i64;
        total += e.tops.iter().map(|&k| 2 * self.set_length(k) as i64).sum::<i64>();
        total -= e.bottoms[1..m]
            .iter()
            .map(|&i| 2 * self.set_length(i) as i64)
            .sum::<i64>();
        u32::try_from(total).expect("multistep length is nonnegative")
    }

    /// Whether `max = w_{K_1} . (w_{I_1}⁻¹ w_{K_2}) . .. . (w_{I_{m-1}}⁻¹ w_{K_m})`
    /// is a reduced (length-additive) product, for the associated multistep
    /// expression.
    pub fn is_reduced(&self, e: &SinglestepExpr) -> bool {
        let multi = e.to_multistep();
        let factors: Vec<Element> = if multi.tops.is_empty() {
            vec![self.longest_element(multi.bottoms[0])]
        } else {
            let mut fs = vec![self.longest_element(multi.tops[0])];
            for (&below, &top) in multi.bottoms[1..].iter().zip(&multi.tops[1..]) {
                let inv = self.inverse(self.longest_element(below));
                fs.push(self.multiply(inv, self.longest_element(top)));
            }
            fs
        };
        let product = factors
            .iter()
            .fold(Element::IDENTITY, |x, &f| self.multiply(x, f));
        let total: u32 = factors.iter().map(|&f| self.length(f)).sum();
        self.length(product) == total && product == self.expressed_max(e)
    }

    /// A reduced expression for `p`, found by Dijkstra search over states
    /// (maximal element so far, current subset). Ties are broken toward
    /// adding before removing, then toward the smallest generator.
    pub fn find_reduced_expression(&self, p: &DoubleCoset) -> SinglestepExpr {
        let rank = self.rank();
        let start = (self.longest_element(p.left()), p.left());
        let goal = (p.max(), p.right());
        let budget = p.length();

        type Label = (u32, Vec<u8>);
        let mut settled: HashMap<(Element, GenSet), Label> = HashMap::new();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u32, Vec::<u8>::new(), start.0, start.1)));
        while let Some(Reverse((dist, moves, x, set))) = heap.pop() {
            if settled.contains_key(&(x, set)) {
                continue;
            }
            settled.insert((x, set), (dist, moves.clone()));
            if (x, set) == goal {
                assert_eq!(dist, budget, "shortest expression is not reduced");
                let mut sets = vec![p.left()];
                let mut cur = p.left();
                for &mv in &moves {
                    let s = mv as usize % rank;
                    cur = if (mv as usize) < rank { cur.with(s) } else { cur.without(s) };
                    sets.push(cur);
                }
                return SinglestepExpr(sets);
            }
            let here = self.set_length(set);
            for mv in 0..2 * rank {
                let s = mv % rank;
                let adding = mv < rank;
                if adding == set.contains(s) {
                    continue;
                }
                let next_set = if adding { set.with(s) } else { set.without(s) };
                let next_x = if adding {
                    self.demazure(x, self.longest_element(next_set))
                } else {
                    x
                };
                let next_dist = dist + here.abs_diff(self.set_length(next_set));
                if next_dist > budget || settled.contains_key(&(next_x, next_set)) {
                    continue;
                }
                let mut next_moves = moves.clone();
                next_moves.push(mv as u8);
                heap.push(Reverse((next_dist, next_moves, next_x, next_set)));
            }
        }
        panic!(
            "no reduced expression found for coset with minimum {}",
            self.format(p.min())
        );
    }
}
