//! Exact matrices, rank patterns and the rearrangement `A^σ`.

mod pattern;
mod scalar;

use std::fmt;

pub use pattern::PermPattern;
pub use scalar::Scalar;

use crate::error::{Error, Result};

/// A dense row-major `rows × cols` matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T, R>(rows: &[R]) -> Result<Self>
    where
        T: Into<Scalar> + Copy,
        R: AsRef<[T]>,
    {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != ncols) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {ncols}",
                bad + 1,
                rows[bad].as_ref().len()
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&v| v.into()))
            .collect();
        Self::new(nrows, ncols, entries)
    }

    pub fn filled(rows: usize, cols: usize, value: Scalar) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries[row * self.cols + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map(&self, f: impl Fn(Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix{:?}",
            self.entries.chunks(self.cols).collect::<Vec<_>>()
        )
    }
}

/// The entries of a matrix in nondecreasing order, `a_1 <= … <= a_mn`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortedEntries(Vec<Scalar>);

impl SortedEntries {
    /// Sorts `values`.
    pub fn new(mut values: Vec<Scalar>) -> Self {
        values.sort();
        SortedEntries(values)
    }

    /// `values` must already be nondecreasing.
    pub fn from_sorted(values: Vec<Scalar>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("sequence is not nondecreasing".into()));
        }
        Ok(SortedEntries(values))
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_k`, 1-based.
    pub fn nth(&self, k: usize) -> Scalar {
        self.0[k - 1]
    }

    /// The entries laid out row-major as a `rows × cols` matrix.
    pub fn to_matrix(&self, rows: usize, cols: usize) -> Result<Matrix> {
        Matrix::new(rows, cols, self.0.clone())
    }

    /// Builds `A^σ` directly from the sorted entries.
    pub fn arrange(&self, sigma: &PermPattern) -> Result<Matrix> {
        if sigma.len() != self.0.len() {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {}x{} pattern",
                self.0.len(),
                sigma.rows(),
                sigma.cols()
            )));
        }
        let entries = sigma.ranks().iter().map(|&r| self.0[r - 1]).collect();
        Matrix::new(sigma.rows(), sigma.cols(), entries)
    }
}

impl fmt::Display for SortedEntries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SortedEntries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SortedEntries{:?}", self.0)
    }
}

pub fn sort_entries(a: &Matrix) -> SortedEntries {
    SortedEntries::new(a.entries.clone())
}

/// `A^σ`: the cell holding rank `k` in `sigma` receives the `k`-th smallest
/// entry of `a`. Tied entries are equal scalars, so the result is unique.
pub fn apply_permutation(a: &Matrix, sigma: &PermPattern) -> Result<Matrix> {
    if a.rows != sigma.rows() || a.cols != sigma.cols() {
        return Err(Error::Dimension(format!(
            "matrix is {}x{} but pattern is {}x{}",
            a.rows,
            a.cols,
            sigma.rows(),
            sigma.cols()
        )));
    }
    sort_entries(a).arrange(sigma)
}
