//! Finite Coxeter groups enumerated from their Coxeter matrix.
//!
//! Elements are identified by canonical reduced words: the ShortLex-least word
//! reachable by braid moves, after cancelling every adjacent pair of equal
//! letters that braid moves can expose. By the Tits/Matsumoto word property
//! this is exact without any matrix representation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coset::Quotient;
use crate::error::{Error, Result};
use crate::gens::GenSet;
use crate::matrix::CoxeterMatrix;

/// Default enumeration guard used by [`CoxeterGroup::preset`].
pub const DEFAULT_CAP: usize = 20_000;

/// Demazure products are tabulated for groups up to this size.
const DEMAZURE_TABLE_LIMIT: usize = 4096;

/// A word in the simple generators, 0-indexed.
pub type Word = Vec<u8>;

/// An element of a [`CoxeterGroup`], identified by its index. Indices follow
/// ShortLex order of canonical words, so index 0 is the identity and comparing
/// indices compares canonical words.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Element {
        Element(index as u32)
    }
}

/// A fully enumerated finite Coxeter system.
///
/// Immutable after construction. The Bruhat table, Demazure table and coset
/// quotients are computed on first use behind internal locks, so a shared
/// `&CoxeterGroup` can be used from several threads.
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    name: String,
    words: Vec<Word>,
    lengths: Vec<u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    bruhat: OnceLock<BitMatrix>,
    demazure: OnceLock<Vec<u32>>,
    pub(crate) quotients: RwLock<HashMap<(GenSet, GenSet), Arc<Quotient>>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("name", &self.name)
            .field("rank", &self.rank())
            .field("size", &self.size())
            .finish()
    }
}

impl CoxeterGroup {
    /// Enumerates the group by breadth-first search over right multiplication
    /// by generators, failing with [`Error::CapExceeded`] once more than `cap`
    /// elements turn up.
    pub fn build(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        let rank = matrix.rank();
        let mut index: HashMap<Word, u32> = HashMap::new();
        let mut words: Vec<Word> = vec![Vec::new()];
        index.insert(Vec::new(), 0);
        if cap == 0 {
            return Err(Error::CapExceeded { cap });
        }

        let mut right = Vec::new();
        let mut head = 0;
        while head < words.len() {
            for s in 0..rank {
                let mut w = words[head].clone();
                w.push(s as u8);
                let c = canonical_word(&matrix, &w);
                let id = match index.get(&c) {
                    Some(&id) => id,
                    None => {
                        if words.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let id = words.len() as u32;
                        index.insert(c.clone(), id);
                        words.push(c);
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }

        // Renumber in ShortLex order.
        let n = words.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| {
            let (wa, wb) = (&words[a as usize], &words[b as usize]);
            wa.len().cmp(&wb.len()).then_with(|| wa.cmp(wb))
        });
        let mut renumber = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            renumber[old as usize] = new as u32;
        }
        let mut sorted_right = vec![0u32; n * rank];
        for old in 0..n {
            for s in 0..rank {
                sorted_right[renumber[old] as usize * rank + s] = renumber[right[old * rank + s] as usize];
            }
        }
        let words: Vec<Word> = order.iter().map(|&old| std::mem::take(&mut words[old as usize])).collect();
        let lengths: Vec<u32> = words.iter().map(|w| w.len() as u32).collect();

        let inverse: Vec<u32> = words
            .iter()
            .map(|w| {
                w.iter()
                    .rev()
                    .fold(0u32, |x, &s| sorted_right[x as usize * rank + s as usize])
            })
            .collect();
        let mut left = vec![0u32; n * rank];
        for x in 0..n {
            for s in 0..rank {
                // s x = (x^-1 s)^-1
                let xinv = inverse[x] as usize;
                left[x * rank + s] = inverse[sorted_right[xinv * rank + s] as usize];
            }
        }

        Ok(CoxeterGroup {
            name: "custom".to_string(),
            matrix,
            words,
            lengths,
            right: sorted_right,
            left,
            inverse,
            bruhat: OnceLock::new(),
            demazure: OnceLock::new(),
            quotients: RwLock::new(HashMap::new()),
        })
    }

    /// Builds a named preset (see [`CoxeterMatrix::preset`]) with the default
    /// cap.
    pub fn preset(name: &str) -> Result<Self> {
        Ok(Self::build(CoxeterMatrix::preset(name)?, DEFAULT_CAP)?.with_name(name))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn size(&self) -> usize {
        self.words.len()
    }
    /// The set of all simple generators.
    pub fn generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// All elements in ShortLex order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        (0..self.size() as u32).map(Element)
    }
    pub fn element(&self, index: usize) -> Option<Element> {
        (index < self.size()).then_some(Element(index as u32))
    }
    pub fn generator(&self, s: usize) -> Element {
        self.mul_gen(Element::IDENTITY, s)
    }

    /// Canonical (ShortLex-least reduced) word of `x`.
    pub fn word(&self, x: Element) -> &[u8] {
        &self.words[x.index()]
    }
    pub fn length(&self, x: Element) -> u32 {
        self.lengths[x.index()]
    }

    /// `x s`
    pub fn mul_gen(&self, x: Element, s: usize) -> Element {
        Element(self.right[x.index() * self.rank() + s])
    }
    /// `s x`
    pub fn gen_mul(&self, s: usize, x: Element) -> Element {
        Element(self.left[x.index() * self.rank() + s])
    }

    pub fn multiply(&self, x: Element, y: Element) -> Element {
        self.apply_word(x, self.word(y))
    }

    /// `x` multiplied on the right by each letter of `word` in turn. The word
    /// need not be reduced.
    pub fn apply_word(&self, x: Element, word: &[u8]) -> Element {
        word.iter().fold(x, |w, &s| self.mul_gen(w, s as usize))
    }

    /// The element expressed by an arbitrary word.
    pub fn element_from_word(&self, word: &[u8]) -> Element {
        self.apply_word(Element::IDENTITY, word)
    }

    pub fn inverse(&self, x: Element) -> Element {
        Element(self.inverse[x.index()])
    }

    pub fn is_right_descent(&self, x: Element, s: usize) -> bool {
        self.length(self.mul_gen(x, s)) < self.length(x)
    }
    pub fn is_left_descent(&self, x: Element, s: usize) -> bool {
        self.length(self.gen_mul(s, x)) < self.length(x)
    }
    pub fn right_descents(&self, x: Element) -> GenSet {
        (0..self.rank()).filter(|&s| self.is_right_descent(x, s)).collect()
    }
    pub fn left_descents(&self, x: Element) -> GenSet {
        (0..self.rank()).filter(|&s| self.is_left_descent(x, s)).collect()
    }

    /// Bruhat order `x <= y`.
    ///
    /// Uses the recursion on the smallest right descent `s` of `y`: `x <= y`
    /// iff `min(x, xs) <= ys`. The whole table is filled bottom-up on first
    /// use.
    pub fn bruhat_leq(&self, x: Element, y: Element) -> bool {
        self.bruhat
            .get_or_init(|| self.bruhat_table())
            .get(y.index(), x.index())
    }

    pub fn bruhat_lt(&self, x: Element, y: Element) -> bool {
        x != y && self.bruhat_leq(x, y)
    }

    fn bruhat_table(&self) -> BitMatrix {
        let n = self.size();
        let mut table = BitMatrix::new(n);
        table.set(0, 0);
        // Index order refines length order, so `ys` is always finished.
        for y in self.elements().skip(1) {
            let s = (0..self.rank())
                .find(|&s| self.is_right_descent(y, s))
                .expect("non-identity element has a right descent");
            let ys = self.mul_gen(y, s).index();
            for x in self.elements() {
                let xs = self.mul_gen(x, s);
                let below = if x == Element::IDENTITY {
                    true
                } else if self.length(xs) < self.length(x) {
                    table.get(ys, xs.index())
                } else {
                    table.get(ys, x.index())
                };
                if below {
                    table.set(y.index(), x.index());
                }
            }
        }
        table
    }

    /// `x * s` in the Coxeter monoid.
    pub fn demazure_gen(&self, x: Element, s: usize) -> Element {
        let xs = self.mul_gen(x, s);
        if self.length(xs) > self.length(x) {
            xs
        } else {
            x
        }
    }

    /// Demazure product `x * y`: fold the letters of `y` into `x`, keeping
    /// only the ones that go up.
    pub fn demazure(&self, x: Element, y: Element) -> Element {
        if self.size() <= DEMAZURE_TABLE_LIMIT {
            let table = self.demazure.get_or_init(|| {
                let n = self.size();
                let mut t = Vec::with_capacity(n * n);
                for a in self.elements() {
                    for b in self.elements() {
                        t.push(self.demazure_fold(a, self.word(b)).0);
                    }
                }
                t
            });
            Element(table[x.index() * self.size() + y.index()])
        } else {
            self.demazure_fold(x, self.word(y))
        }
    }

    /// Demazure product of `x` with the letters of an arbitrary word.
    pub fn demazure_fold(&self, x: Element, word: &[u8]) -> Element {
        word.iter().fold(x, |w, &s| self.demazure_gen(w, s as usize))
    }

    /// Longest element `w_I` of the parabolic subgroup `W_I`, found by greedy
    /// ascent.
    pub fn longest_element(&self, set: GenSet) -> Element {
        let mut w = Element::IDENTITY;
        'ascend: loop {
            for s in set.iter() {
                let ws = self.mul_gen(w, s);
                if self.length(ws) > self.length(w) {
                    w = ws;
                    continue 'ascend;
                }
            }
            return w;
        }
    }

    /// `l(I)`, the length of `w_I`.
    pub fn set_length(&self, set: GenSet) -> u32 {
        self.length(self.longest_element(set))
    }

    /// Elements of `W_I`: those whose canonical word only uses letters of `I`.
    pub fn parabolic_elements(&self, set: GenSet) -> Vec<Element> {
        self.elements()
            .filter(|&x| self.word(x).iter().all(|&s| set.contains(s as usize)))
            .collect()
    }

    /// Parses a word such as `1-2-1`; `-`, `e` and the empty string denote
    /// the identity.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        Ok(self.element_from_word(&parse_word(text, self.rank())?))
    }

    /// Hyphen-joined 1-indexed canonical word, `-` for the identity.
    pub fn format(&self, x: Element) -> String {
        format_word(self.word(x))
    }
}

/// Hyphen-joined 1-indexed word, `-` for the empty word.
pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "-".to_string();
    }
    word.iter()
        .map(|&s| (s + 1).to_string())
        .collect::<Vec<_>>()
        .join("-")
}

/// Parses a 1-indexed word separated by hyphens, spaces or commas.
pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "-" || text == "e" {
        return Ok(Vec::new());
    }
    text.split(|c: char| c == '-' || c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|token| match token.parse::<usize>() {
            Ok(s) if s >= 1 && s <= rank => Ok((s - 1) as u8),
            _ => Err(Error::Parse {
                token: token.to_string(),
                reason: format!("expected a generator in 1..={rank}"),
            }),
        })
        .collect()
}

/// Canonical form of a word: cancel adjacent equal letters wherever braid
/// moves expose them, then take the lexicographically least word of the
/// remaining braid orbit.
pub fn canonical_word(matrix: &CoxeterMatrix, word: &[u8]) -> Word {
    let mut current = word.to_vec();
    'restart: loop {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(current.clone());
        queue.push_back(current.clone());
        while let Some(u) = queue.pop_front() {
            if let Some(i) = u.windows(2).position(|p| p[0] == p[1]) {
                let mut shorter = u;
                shorter.drain(i..i + 2);
                current = shorter;
                continue 'restart;
            }
            for v in braid_neighbours(matrix, &u) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        return seen.into_iter().min().expect("orbit contains the start word");
    }
}

/// Words obtained from `word` by a single braid move.
fn braid_neighbours(matrix: &CoxeterMatrix, word: &[u8]) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(1) {
        let (s, t) = (word[i], word[i + 1]);
        if s == t {
            continue;
        }
        let m = matrix.order(s as usize, t as usize) as usize;
        if i + m > word.len() {
            continue;
        }
        let alternates = (0..m).all(|k| word[i + k] == if k % 2 == 0 { s } else { t });
        if alternates {
            let mut v = word.to_vec();
            for k in 0..m {
                v[i + k] = if k % 2 == 0 { t } else { s };
            }
            out.push(v);
        }
    }
    out
}

/// Square bit matrix, row-major.
struct BitMatrix {
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix {
            stride,
            bits: vec![0; stride * n],
        }
    }
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.stride + col / 64] & (1 << (col % 64)) != 0
    }
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.stride + col / 64] |= 1 << (col % 64);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterGroup {
        CoxeterGroup::preset("A2").unwrap()
    }

    #[test]
    fn sizes_and_longest_lengths() {
        assert_eq!(CoxeterGroup::preset("A1xA1").unwrap().size(), 4);
        let g = a2();
        assert_eq!(g.size(), 6);
        assert_eq!(g.length(g.longest_element(g.generators())), 3);
        let b2 = CoxeterGroup::preset("B2").unwrap();
        assert_eq!(b2.size(), 8);
        assert_eq!(b2.length(b2.longest_element(b2.generators())), 4);
    }

    #[test]
    fn shortlex_numbering() {
        let g = a2();
        let words: Vec<String> = g.elements().map(|x| g.format(x)).collect();
        assert_eq!(words, ["-", "1", "2", "1-2", "2-1", "1-2-1"]);
    }

    #[test]
    fn multiply_examples() {
        let g = a2();
        let p = |w: &str| g.parse_element(w).unwrap();
        assert_eq!(g.multiply(p("1"), p("1")), Element::IDENTITY);
        assert_eq!(g.multiply(p("1-2"), p("1")), p("1-2-1"));
        assert_eq!(g.multiply(p("1"), p("2-1")), p("1-2-1"));
        assert_eq!(g.multiply(p("1-2-1"), p("2")), p("2-1"));
        assert_eq!(g.format(p("2-1-2")), "1-2-1");
    }

    #[test]
    fn demazure_examples() {
        let g = a2();
        let p = |w: &str| g.parse_element(w).unwrap();
        assert_eq!(g.demazure(p("1"), p("1")), p("1"));
        assert_eq!(g.demazure(p("1-2"), p("1")), p("1-2-1"));
        assert_eq!(g.demazure(p("1-2-1"), p("2")), p("1-2-1"));
        for w in g.elements() {
            assert_eq!(g.demazure(Element::IDENTITY, w), w);
        }
    }

    #[test]
    fn bruhat_examples() {
        let g = a2();
        let p = |w: &str| g.parse_element(w).unwrap();
        assert!(g.bruhat_leq(p("1"), p("1-2")));
        assert!(!g.bruhat_leq(p("1"), p("2")));
        // s = 1, t = 2: 1 = ss < sts and s < sts.
        assert!(g.bruhat_lt(g.multiply(p("1"), p("1")), p("1-2-1")));
        assert!(g.bruhat_lt(p("1"), p("1-2-1")));
        for w in g.elements() {
            assert!(g.bruhat_leq(Element::IDENTITY, w));
        }
    }

    #[test]
    fn parabolic_subgroups() {
        let g = a2();
        assert_eq!(g.longest_element(GenSet::EMPTY), Element::IDENTITY);
        assert_eq!(g.parabolic_elements(GenSet::EMPTY), vec![Element::IDENTITY]);
        assert_eq!(g.parabolic_elements(GenSet::singleton(0)).len(), 2);
        assert_eq!(g.parabolic_elements(g.generators()).len(), 6);
        assert_eq!(g.format(g.longest_element(g.generators())), "1-2-1");
        assert_eq!(g.set_length(g.generators()), 3);
    }

    #[test]
    fn cap_guard() {
        let affine = CoxeterMatrix::preset("A2")
            .unwrap()
            .to_string()
            .replace("rank 2", "rank 3")
            + "m 2 3 3\nm 1 3 3\n";
        let m = CoxeterMatrix::parse_file(&affine).unwrap();
        assert_eq!(
            CoxeterGroup::build(m, 500).unwrap_err(),
            Error::CapExceeded { cap: 500 }
        );
        let a2 = CoxeterMatrix::preset("A2").unwrap();
        assert!(CoxeterGroup::build(a2.clone(), 5).is_err());
        assert!(CoxeterGroup::build(a2, 6).is_ok());
    }

    #[test]
    fn canonical_word_reduces_and_picks_least() {
        let m = CoxeterMatrix::preset("A2").unwrap();
        assert_eq!(canonical_word(&m, &[1, 0, 1]), vec![0, 1, 0]);
        assert_eq!(canonical_word(&m, &[0, 1, 0, 1]), vec![1, 0]);
        assert_eq!(canonical_word(&m, &[0, 0]), Vec::<u8>::new());
    }

    #[test]
    fn parse_word_errors_name_token() {
        let err = parse_word("1-5", 3).unwrap_err();
        assert!(err.to_string().contains("\"5\""));
    }
}
