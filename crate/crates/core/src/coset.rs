//! Parabolic double cosets `W_I \ W / W_J`.

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gens::GenSet;
use crate::group::{CoxeterGroup, Element};

/// An `(I, J)`-coset.
///
/// Two cosets are equal when their `(I, J)` and minimal element agree; the
/// same subset of `W` seen with different `(I, J)` is a different coset.
#[derive(Debug, Clone, Copy)]
pub struct DoubleCoset {
    left: GenSet,
    right: GenSet,
    min: Element,
    max: Element,
    size: u32,
    leftred: GenSet,
    rightred: GenSet,
    length: u32,
}

impl DoubleCoset {
    /// `I`
    pub fn left(&self) -> GenSet {
        self.left
    }
    /// `J`
    pub fn right(&self) -> GenSet {
        self.right
    }
    /// The unique element of minimal length.
    pub fn min(&self) -> Element {
        self.min
    }
    /// The unique element of maximal length.
    pub fn max(&self) -> Element {
        self.max
    }
    /// Number of group elements in the coset.
    pub fn size(&self) -> usize {
        self.size as usize
    }
    /// `I ∩ min J min⁻¹`
    pub fn leftred(&self) -> GenSet {
        self.leftred
    }
    /// `J ∩ min⁻¹ I min`
    pub fn rightred(&self) -> GenSet {
        self.rightred
    }
    /// `2 l(max) - l(I) - l(J)`.
    pub fn length(&self) -> u32 {
        self.length
    }
    /// Sort key: type, then length, then ShortLex order of the minimal
    /// element.
    pub fn sort_key(&self) -> (GenSet, GenSet, u32, Element) {
        (self.left, self.right, self.length, self.min)
    }
    pub fn same_type(&self, other: &DoubleCoset) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl PartialEq for DoubleCoset {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right && self.min == other.min
    }
}
impl Eq for DoubleCoset {}

impl Hash for DoubleCoset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.left, self.right, self.min).hash(state);
    }
}

/// The partition of `W` into `(I, J)`-cosets, sorted by length and then by
/// minimal element.
#[derive(Debug)]
pub struct Quotient {
    left: GenSet,
    right: GenSet,
    cosets: Vec<DoubleCoset>,
    class_of: Vec<u32>,
    members: Vec<Vec<Element>>,
}

impl Quotient {
    fn build(g: &CoxeterGroup, left: GenSet, right: GenSet) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let n = g.size();
        let mut class_of = vec![UNSEEN; n];
        let mut orbits: Vec<Vec<Element>> = Vec::new();
        for start in g.elements() {
            if class_of[start.index()] != UNSEEN {
                continue;
            }
            let id = orbits.len() as u32;
            class_of[start.index()] = id;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                let neighbours = left
                    .iter()
                    .map(|s| g.gen_mul(s, w))
                    .chain(right.iter().map(|t| g.mul_gen(w, t)));
                for v in neighbours {
                    if class_of[v.index()] == UNSEEN {
                        class_of[v.index()] = id;
                        orbit.push(v);
                        queue.push_back(v);
                    }
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }

        let left_len = g.set_length(left);
        let right_len = g.set_length(right);
        let mut cosets: Vec<(DoubleCoset, Vec<Element>)> = orbits
            .into_iter()
            .map(|members| {
                let min = *members
                    .iter()
                    .min_by_key(|&&x| (g.length(x), x))
                    .expect("orbit is nonempty");
                let max = *members
                    .iter()
                    .max_by_key(|&&x| (g.length(x), std::cmp::Reverse(x)))
                    .expect("orbit is nonempty");
                let coset = DoubleCoset {
                    left,
                    right,
                    min,
                    max,
                    size: members.len() as u32,
                    leftred: redundancy(g, min, left, right),
                    rightred: redundancy(g, g.inverse(min), right, left),
                    length: 2 * g.length(max) - left_len - right_len,
                };
                (coset, members)
            })
            .collect();
        cosets.sort_by_key(|(c, _)| c.sort_key());

        let mut renumber = vec![0u32; cosets.len()];
        for (new, (c, _)) in cosets.iter().enumerate() {
            renumber[class_of[c.min.index()] as usize] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = renumber[*c as usize];
        }
        let (cosets, members) = cosets.into_iter().unzip();
        Quotient {
            left,
            right,
            cosets,
            class_of,
            members,
        }
    }

    pub fn left(&self) -> GenSet {
        self.left
    }
    pub fn right(&self) -> GenSet {
        self.right
    }
    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }
    pub fn len(&self) -> usize {
        self.cosets.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
    /// Position of the coset containing `w`.
    pub fn class_of(&self, w: Element) -> usize {
        self.class_of[w.index()] as usize
    }
    pub fn coset(&self, index: usize) -> &DoubleCoset {
        &self.cosets[index]
    }
    /// Position of `p` in this quotient. Panics if `p` has another type.
    pub fn index_of(&self, p: &DoubleCoset) -> usize {
        assert!(
            p.left == self.left && p.right == self.right,
            "coset of the wrong type for this quotient"
        );
        self.class_of(p.min)
    }
    /// Elements of the coset at `index`, in ShortLex order.
    pub fn members(&self, index: usize) -> &[Element] {
        &self.members[index]
    }
}

/// `{s in a : x⁻¹ s x in b}`, i.e. `a ∩ x b x⁻¹`.
fn redundancy(g: &CoxeterGroup, x: Element, a: GenSet, b: GenSet) -> GenSet {
    let xinv = g.inverse(x);
    a.iter()
        .filter(|&s| {
            let conj = g.multiply(g.mul_gen(xinv, s), x);
            b.iter().any(|t| g.generator(t) == conj)
        })
        .collect()
}

impl CoxeterGroup {
    /// The cached `(I, J)` quotient.
    pub fn quotient(&self, left: GenSet, right: GenSet) -> Arc<Quotient> {
        if let Some(q) = self
            .quotients
            .read()
            .expect("quotient cache poisoned")
            .get(&(left, right))
        {
            return q.clone();
        }
        let built = Arc::new(Quotient::build(self, left, right));
        self.quotients
            .write()
            .expect("quotient cache poisoned")
            .entry((left, right))
            .or_insert(built)
            .clone()
    }

    /// The `(I, J)`-coset containing `w`.
    pub fn coset_of(&self, w: Element, left: GenSet, right: GenSet) -> DoubleCoset {
        let q = self.quotient(left, right);
        *q.coset(q.class_of(w))
    }

    /// The `(I, I)`-coset of the identity.
    pub fn identity_coset(&self, set: GenSet) -> DoubleCoset {
        self.coset_of(Element::IDENTITY, set, set)
    }

    /// All `(I, J)`-cosets sorted by length, then ShortLex of the minimal
    /// element.
    pub fn enumerate_cosets(&self, left: GenSet, right: GenSet) -> Vec<DoubleCoset> {
        self.quotient(left, right).cosets().to_vec()
    }

    /// Elements of `p` in ShortLex order.
    pub fn coset_elements(&self, p: &DoubleCoset) -> Vec<Element> {
        let q = self.quotient(p.left, p.right);
        q.members(q.index_of(p)).to_vec()
    }

    pub fn coset_contains(&self, p: &DoubleCoset, w: Element) -> bool {
        self.coset_of(w, p.left, p.right) == *p
    }

    /// Bruhat order on `(I, J)`-cosets: compare minimal elements.
    pub fn coset_leq(&self, p: &DoubleCoset, q: &DoubleCoset) -> Result<bool> {
        if !p.same_type(q) {
            return Err(mismatch(p, q));
        }
        Ok(self.bruhat_leq(p.min, q.min))
    }

    /// Star product of an `(I, J)`-coset and a `(J, K)`-coset: the
    /// `(I, K)`-coset containing `max(p) * max(q)`.
    pub fn coset_star(&self, p: &DoubleCoset, q: &DoubleCoset) -> Result<DoubleCoset> {
        if p.right != q.left {
            return Err(mismatch(p, q));
        }
        Ok(self.coset_of(self.demazure(p.max, q.max), p.left, q.right))
    }

    /// The reduced composition `p.q`, present when
    /// `l(max p * max q) = l(max p) + l(max q) - l(J)`.
    pub fn reduced_compose(&self, p: &DoubleCoset, q: &DoubleCoset) -> Result<Option<DoubleCoset>> {
        let r = self.coset_star(p, q)?;
        let expected = self.length(p.max) + self.length(q.max);
        let reduced = self.length(r.max) + self.set_length(p.right) == expected;
        Ok(reduced.then_some(r))
    }

    /// Image of an `(I, J)`-coset in `W_K \ W / W_L` for `I ⊆ K`, `J ⊆ L`.
    pub fn project(&self, p: &DoubleCoset, left: GenSet, right: GenSet) -> Result<DoubleCoset> {
        if !p.left.is_subset(left) || !p.right.is_subset(right) {
            return Err(Error::NotASuperset {
                left: p.left,
                right: p.right,
                target_left: left,
                target_right: right,
            });
        }
        Ok(self.coset_of(p.min, left, right))
    }

    /// The `(I, K)`-cosets contained in the `(I, J)`-coset `p`, for `K ⊆ J`,
    /// ordered by minimal element.
    pub fn sub_cosets(&self, p: &DoubleCoset, right: GenSet) -> Result<Vec<DoubleCoset>> {
        if !right.is_subset(p.right) {
            return Err(Error::NotASuperset {
                left: p.left,
                right,
                target_left: p.left,
                target_right: p.right,
            });
        }
        let parent = self.quotient(p.left, p.right);
        let child = self.quotient(p.left, right);
        let mut out: Vec<usize> = parent
            .members(parent.index_of(p))
            .iter()
            .map(|&w| child.class_of(w))
            .collect();
        out.sort_unstable();
        out.dedup();
        let mut cosets: Vec<DoubleCoset> = out.into_iter().map(|i| *child.coset(i)).collect();
        cosets.sort_by_key(|c| c.min);
        Ok(cosets)
    }

    /// Short human-readable form, e.g. `(1|2|2-1)` for `I`, `J`, minimal
    /// element.
    pub fn describe(&self, p: &DoubleCoset) -> String {
        format!("({}|{}|{})", p.left, p.right, self.format(p.min))
    }

    /// TSV table with a header row: `I J min max length size leftred
    /// rightred`.
    pub fn cosets_tsv(&self, cosets: &[DoubleCoset]) -> String {
        let mut out = String::from("I\tJ\tmin\tmax\tlength\tsize\tleftred\trightred\n");
        for p in cosets {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                p.left,
                p.right,
                self.format(p.min),
                self.format(p.max),
                p.length,
                p.size,
                p.leftred,
                p.rightred
            ));
        }
        out
    }
}

fn mismatch(p: &DoubleCoset, q: &DoubleCoset) -> Error {
    Error::MismatchedTypes {
        left_a: p.left,
        right_a: p.right,
        left_b: q.left,
        right_b: q.right,
    }
}
