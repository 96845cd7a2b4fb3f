//! Subsets of the simple generators, stored as bit sets.

use std::fmt;

use crate::error::{Error, Result};

/// Largest rank a [`GenSet`] can address.
pub const MAX_RANK: usize = 32;

/// A subset of the simple generators `{0, .., rank - 1}`.
///
/// Internally 0-indexed. The [`fmt::Display`] impl and [`GenSet::parse`] use
/// the 1-indexed, space-separated form shown to users, with `-` for the empty
/// set.
#[derive(Debug, Default, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        GenSet(bits)
    }
    pub fn bits(self) -> u32 {
        self.0
    }
    pub fn singleton(s: usize) -> Self {
        debug_assert!(s < MAX_RANK);
        GenSet(1 << s)
    }
    /// All generators of a rank-`rank` system.
    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            GenSet(u32::MAX)
        } else {
            GenSet((1u32 << rank) - 1)
        }
    }

    pub fn contains(self, s: usize) -> bool {
        s < MAX_RANK && self.0 & (1 << s) != 0
    }
    pub fn with(self, s: usize) -> Self {
        GenSet(self.0 | (1 << s))
    }
    pub fn without(self, s: usize) -> Self {
        GenSet(self.0 & !(1 << s))
    }
    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }
    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The single generator by which `self` and `other` differ, if they differ
    /// by exactly one.
    pub fn single_difference(self, other: GenSet) -> Option<usize> {
        let diff = self.0 ^ other.0;
        (diff.count_ones() == 1).then(|| diff.trailing_zeros() as usize)
    }

    /// Generators in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |&s| bits & (1 << s) != 0)
    }

    /// Every subset of `{0, .., rank - 1}`, ordered by bit pattern.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        assert!(rank < MAX_RANK, "rank {rank} too large to enumerate subsets");
        (0..1u32 << rank).map(GenSet)
    }

    /// Every subset of `self`, ordered by bit pattern.
    pub fn subsets(self) -> Vec<GenSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u32;
        loop {
            out.push(GenSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out.sort();
        out
    }

    /// Parses 1-indexed generators separated by spaces or commas. The empty
    /// string and `-` both denote the empty set.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(GenSet::EMPTY);
        }
        let mut set = GenSet::EMPTY;
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let s: usize = token.parse().map_err(|_| Error::Parse {
                token: token.to_string(),
                reason: "expected a generator index".into(),
            })?;
            if s == 0 || s > rank {
                return Err(Error::Parse {
                    token: token.to_string(),
                    reason: format!("generator out of range 1..={rank}"),
                });
            }
            set = set.with(s - 1);
        }
        Ok(set)
    }

    /// Space-separated 1-indexed generators with no placeholder for the empty
    /// set (used inside bracketed expression text).
    pub fn to_bare_string(self) -> String {
        self.iter()
            .map(|s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&self.to_bare_string())
        }
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, GenSet::with)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(GenSet::parse("1 3", 3).unwrap(), GenSet::from_bits(0b101));
        assert_eq!(GenSet::parse("", 3).unwrap(), GenSet::EMPTY);
        assert_eq!(GenSet::parse("-", 3).unwrap(), GenSet::EMPTY);
        assert_eq!(GenSet::parse("2,1", 2).unwrap().to_string(), "1 2");
        assert_eq!(GenSet::EMPTY.to_string(), "-");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = GenSet::parse("1 4", 3).unwrap_err();
        assert!(err.to_string().contains("\"4\""), "{err}");
        assert!(GenSet::parse("0", 3).is_err());
        assert!(GenSet::parse("x", 3).is_err());
    }

    #[test]
    fn subsets_of_set() {
        let s = GenSet::from_bits(0b1010);
        let subs: Vec<u32> = s.subsets().into_iter().map(GenSet::bits).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(GenSet::all_subsets(3).count(), 8);
    }

    #[test]
    fn single_difference() {
        let a = GenSet::from_bits(0b011);
        assert_eq!(a.single_difference(GenSet::from_bits(0b001)), Some(1));
        assert_eq!(a.single_difference(GenSet::from_bits(0b111)), Some(2));
        assert_eq!(a.single_difference(GenSet::from_bits(0b100)), None);
        assert_eq!(a.single_difference(a), None);
    }
}
