//! Bigraded Betti tables: `Tor_{i,j}` dimensions by homological degree `i`
//! and internal degree `j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::series::Series2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// highest homological degree computed
    pub max_i: usize,
    /// highest internal degree computed
    pub max_j: usize,
    /// `entries[i][j]`
    pub entries: Vec<Vec<u64>>,
}

impl BettiTable {
    pub fn new(max_i: usize, max_j: usize) -> Self {
        Self {
            max_i,
            max_j,
            entries: vec![vec![0; max_j + 1]; max_i + 1],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i]
    }

    /// Total rank in homological degree `i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries[i].iter().sum()
    }

    /// True when every nonzero entry has `i == j`.
    pub fn is_diagonal(&self) -> bool {
        self.nonzero().all(|(i, j, _)| i == j)
    }

    /// Nonzero entries as `(i, j, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| (i, j, *v)))
    }

    /// `sum betti_{i,j} x^i y^j` truncated at the table bounds.
    pub fn series(&self) -> Series2 {
        let mut s = Series2::zero(self.max_i, self.max_j);
        for (i, j, v) in self.nonzero() {
            s.set(i, j, BigRational::from_integer(BigInt::from(v)));
        }
        s
    }

    /// Table restricted to smaller bounds.
    pub fn truncate(&self, max_i: usize, max_j: usize) -> Self {
        let mut t = Self::new(max_i, max_j);
        for (i, j, v) in self.nonzero() {
            if i <= max_i && j <= max_j {
                t.set(i, j, v);
            }
        }
        t
    }
}

impl fmt::Display for BettiTable {
    /// Rows are homological degrees, columns internal degrees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .nonzero()
            .map(|(_, _, v)| v.to_string().len())
            .chain([self.max_j.to_string().len()])
            .max()
            .unwrap_or(1);
        write!(f, "{:>3} |", "i\\j")?;
        for j in 0..=self.max_j {
            write!(f, " {:>width$}", j)?;
        }
        writeln!(f)?;
        for (i, row) in self.entries.iter().enumerate() {
            write!(f, "{:>3} |", i)?;
            for v in row {
                if *v == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {:>width$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_display() {
        let mut t = BettiTable::new(2, 2);
        t.set(0, 0, 1);
        t.set(1, 1, 2);
        t.set(2, 2, 3);
        assert!(t.is_diagonal());
        assert_eq!(t.total(1), 2);
        assert_eq!(t.series().get(2, 2), BigRational::from_integer(3.into()));
        let s = t.to_string();
        assert!(s.contains("  2 |"));
        t.set(2, 1, 1);
        assert!(!t.is_diagonal());
        assert_eq!(t.truncate(1, 2).total(2 - 1), 2);
    }
}
