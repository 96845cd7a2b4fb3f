//! Coxeter matrices, named presets, and the line-oriented group file format.

use std::fmt;

use crate::error::{Error, Result};
use crate::gens::MAX_RANK;

/// Largest braid order accepted; anything bigger is almost certainly a typo
/// and would make braid-orbit exploration very slow.
const MAX_ORDER: u32 = 1000;

/// Symmetric matrix of braid orders `m(s, t)` with `1` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from a full table of entries, validating it.
    pub fn new(rank: usize, entries: Vec<u32>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {rank} out of range 1..={MAX_RANK}")));
        }
        if entries.len() != rank * rank {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                rank * rank,
                entries.len()
            )));
        }
        for i in 0..rank {
            for j in 0..rank {
                let v = entries[i * rank + j];
                if v != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if i == j && v != 1 {
                    return Err(Error::InvalidMatrix(format!(
                        "diagonal entry m({0},{0}) = {v}, expected 1",
                        i + 1
                    )));
                }
                if i != j && !(2..=MAX_ORDER).contains(&v) {
                    return Err(Error::InvalidMatrix(format!(
                        "m({},{}) = {v} must be between 2 and {MAX_ORDER}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// The matrix of `rank` pairwise commuting generators, to be edited with
    /// [`CoxeterMatrix::with_order`].
    pub fn commuting(rank: usize) -> Result<Self> {
        let entries = (0..rank * rank)
            .map(|k| if k / rank.max(1) == k % rank.max(1) { 1 } else { 2 })
            .collect();
        Self::new(rank, entries)
    }

    /// Sets `m(s, t) = m(t, s) = order` (0-indexed).
    pub fn with_order(mut self, s: usize, t: usize, order: u32) -> Result<Self> {
        if s >= self.rank || t >= self.rank || s == t {
            return Err(Error::InvalidMatrix(format!(
                "bad generator pair ({}, {})",
                s + 1,
                t + 1
            )));
        }
        self.entries[s * self.rank + t] = order;
        self.entries[t * self.rank + s] = order;
        Self::new(self.rank, self.entries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m(s, t)` for 0-indexed generators.
    pub fn order(&self, s: usize, t: usize) -> u32 {
        self.entries[s * self.rank + t]
    }

    /// Looks up a named preset: `A1`, `A1xA1`, `An`, `Bn`, `Dn`, `H3`, `H4`,
    /// or `I2(k)`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let trimmed = name.trim();
        if trimmed.eq_ignore_ascii_case("A1xA1") {
            return Self::commuting(2);
        }
        if let Some(inner) = trimmed
            .strip_prefix("I2(")
            .and_then(|rest| rest.strip_suffix(')'))
        {
            let k: u32 = inner.trim().parse().map_err(|_| unknown())?;
            return Self::commuting(2)?.with_order(0, 1, k);
        }
        let (family, n) = trimmed.split_at(trimmed.len().min(1));
        let n: usize = n.parse().map_err(|_| unknown())?;
        match family {
            "A" if n >= 1 => chain(n, &[]),
            "B" if n >= 2 => chain(n, &[(0, 1, 4)]),
            "H" if n == 3 || n == 4 => chain(n, &[(0, 1, 5)]),
            "D" if n >= 4 => {
                // Branch node n-3 carries both n-2 and n-1.
                let m = chain(n - 1, &[])?;
                let mut entries = vec![2; n * n];
                for i in 0..n - 1 {
                    for j in 0..n - 1 {
                        entries[i * n + j] = m.order(i, j);
                    }
                }
                entries[(n - 1) * n + (n - 1)] = 1;
                entries[(n - 1) * n + (n - 3)] = 3;
                entries[(n - 3) * n + (n - 1)] = 3;
                Self::new(n, entries)
            }
            _ => Err(unknown()),
        }
    }

    /// Parses the group file format:
    ///
    /// ```text
    /// rank 3
    /// m 1 2 4
    /// m 2 3 3
    /// ```
    ///
    /// Generators are 1-indexed, unlisted pairs commute, and `#` starts a
    /// comment.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut matrix: Option<CoxeterMatrix> = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "rank" => {
                    if matrix.is_some() {
                        return Err(parse_err(line, "rank given twice"));
                    }
                    let [_, n] = tokens[..] else {
                        return Err(parse_err(line, "expected `rank N`"));
                    };
                    let n: usize = n.parse().map_err(|_| parse_err(n, "expected a rank"))?;
                    matrix = Some(Self::commuting(n)?);
                }
                "m" => {
                    let Some(m) = matrix.take() else {
                        return Err(parse_err(line, "`m` line before `rank`"));
                    };
                    let [_, i, j, v] = tokens[..] else {
                        return Err(parse_err(line, "expected `m i j v`"));
                    };
                    let gen = |tok: &str| -> Result<usize> {
                        match tok.parse::<usize>() {
                            Ok(g) if g >= 1 && g <= m.rank() => Ok(g - 1),
                            _ => Err(parse_err(tok, "generator out of range")),
                        }
                    };
                    let (i, j) = (gen(i)?, gen(j)?);
                    let v: u32 = v.parse().map_err(|_| parse_err(v, "expected an order"))?;
                    matrix = Some(m.with_order(i, j, v)?);
                }
                other => return Err(parse_err(other, "expected `rank` or `m`")),
            }
        }
        matrix.ok_or_else(|| parse_err("", "missing `rank` line"))
    }
}

fn parse_err(token: &str, reason: &str) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

/// Linear diagram of `n` nodes with order 3 on each edge unless overridden.
fn chain(n: usize, overrides: &[(usize, usize, u32)]) -> Result<CoxeterMatrix> {
    let mut m = CoxeterMatrix::commuting(n)?;
    for i in 1..n {
        m = m.with_order(i - 1, i, 3)?;
    }
    for &(s, t, v) in overrides {
        m = m.with_order(s, t, v)?;
    }
    Ok(m)
}

impl fmt::Display for CoxeterMatrix {
    /// Writes the matrix in group file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let v = self.order(i, j);
                if v != 2 {
                    writeln!(f, "m {} {} {v}", i + 1, j + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let b3 = CoxeterMatrix::preset("B3").unwrap();
        assert_eq!(b3.order(0, 1), 4);
        assert_eq!(b3.order(1, 2), 3);
        assert_eq!(b3.order(0, 2), 2);
        assert_eq!(CoxeterMatrix::preset("I2(7)").unwrap().order(1, 0), 7);
        assert_eq!(CoxeterMatrix::preset("A1xA1").unwrap().order(0, 1), 2);
        let d4 = CoxeterMatrix::preset("D4").unwrap();
        assert_eq!(d4.order(1, 3), 3);
        assert_eq!(d4.order(2, 3), 2);
        assert!(matches!(CoxeterMatrix::preset("Z9"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn file_round_trip() {
        let text = "# H3\nrank 3\nm 1 2 5\nm 2 3 3\n";
        let m = CoxeterMatrix::parse_file(text).unwrap();
        assert_eq!(m, CoxeterMatrix::preset("H3").unwrap());
        assert_eq!(CoxeterMatrix::parse_file(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(CoxeterMatrix::new(2, vec![1, 3, 4, 1]).is_err());
        assert!(CoxeterMatrix::new(2, vec![2, 3, 3, 1]).is_err());
        assert!(CoxeterMatrix::new(2, vec![1, 1, 1, 1]).is_err());
        assert!(CoxeterMatrix::parse_file("m 1 2 3").is_err());
        assert!(CoxeterMatrix::parse_file("rank 2\nm 1 3 3").is_err());
        let err = CoxeterMatrix::parse_file("rank 2\nm 1 2 x").unwrap_err();
        assert!(err.to_string().contains("\"x\""));
    }
}
