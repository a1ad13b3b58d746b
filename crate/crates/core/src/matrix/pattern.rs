use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// An `rows × cols` grid whose entries are a permutation of `1..=rows*cols`.
///
/// Rank `k` marks the cell that receives the `k`-th smallest entry of a
/// matrix under [`apply_permutation`](crate::apply_permutation).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermPattern {
    rows: usize,
    cols: usize,
    ranks: Vec<usize>,
}

impl PermPattern {
    /// Validates a row-major candidate grid.
    ///
    /// Values outside `1..=rows*cols` and repeated values are rejected with
    /// the offending value in the error.
    pub fn new(rows: usize, cols: usize, ranks: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} pattern")));
        }
        let len = rows * cols;
        if ranks.len() != len {
            return Err(Error::Dimension(format!(
                "{} ranks supplied for a {rows}x{cols} pattern",
                ranks.len()
            )));
        }
        let mut seen = vec![false; len + 1];
        let mut out = Vec::with_capacity(len);
        for &r in &ranks {
            if r < 1 || r as u64 > len as u64 {
                return Err(Error::RankOutOfRange { value: r, max: len });
            }
            let r = r as usize;
            if seen[r] {
                return Err(Error::DuplicateRank(r));
            }
            seen[r] = true;
            out.push(r);
        }
        Ok(PermPattern {
            rows,
            cols,
            ranks: out,
        })
    }

    /// Validates a candidate given as nested rows.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != ncols) {
            return Err(Error::Dimension("ragged pattern rows".into()));
        }
        let flat = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(nrows, ncols, flat)
    }

    /// Caller guarantees `ranks` is a permutation of `1..=rows*cols`.
    pub(crate) fn from_ranks_unchecked(rows: usize, cols: usize, ranks: Vec<usize>) -> Self {
        debug_assert_eq!(ranks.len(), rows * cols);
        debug_assert_eq!(ranks.iter().collect::<HashSet<_>>().len(), ranks.len());
        PermPattern { rows, cols, ranks }
    }

    /// Row-major identity `1, 2, …, rows*cols`.
    pub fn identity(rows: usize, cols: usize) -> Self {
        Self::from_ranks_unchecked(rows, cols, (1..=rows * cols).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Rank at `(row, col)`, 0-based indices.
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.ranks[row * self.cols + col]
    }

    /// Row-major ranks.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Row-major cell index holding each rank; `cells_by_rank()[k - 1]` is
    /// the cell of rank `k`.
    pub fn cells_by_rank(&self) -> Vec<usize> {
        let mut cells = vec![0; self.ranks.len()];
        for (cell, &r) in self.ranks.iter().enumerate() {
            cells[r - 1] = cell;
        }
        cells
    }

    pub fn transpose(&self) -> Self {
        let mut ranks = Vec::with_capacity(self.ranks.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                ranks.push(self.get(r, c));
            }
        }
        Self::from_ranks_unchecked(self.cols, self.rows, ranks)
    }

    pub fn rotate_180(&self) -> Self {
        let mut ranks = self.ranks.clone();
        ranks.reverse();
        Self::from_ranks_unchecked(self.rows, self.cols, ranks)
    }
}

impl fmt::Display for PermPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.ranks.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, r) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{r}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PermPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermPattern{:?}",
            self.ranks.chunks(self.cols).collect::<Vec<_>>()
        )
    }
}
