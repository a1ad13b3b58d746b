//! Goodness of rank patterns.
//!
//! A pattern is *good* on the adjacent window at `(i, j)` when the largest
//! of its four ranks sits on the main diagonal (top-left or bottom-right)
//! and the smallest on the antidiagonal. A good window forces the window
//! inequality in `A^σ` for every matrix `A`; a bad window admits a
//! `{1, 2}`-valued counterexample ([`violating_witness`]). Patterns good on
//! every window are therefore exactly the universal ones.

mod census;

pub use census::{enumerate_good, enumerate_good_with, CensusOptions, GoodCensus};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, PermPattern, Scalar};

/// The ranks of one adjacent window:
///
/// ```text
/// r p
/// q s
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowRoles {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub s: usize,
}

/// Which way a window fails to be good. A window can fail both ways; the
/// minimum rule is reported first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadRole {
    /// Minimum at top-left.
    MinAtR,
    /// Minimum at bottom-right.
    MinAtS,
    /// Maximum at top-right.
    MaxAtP,
    /// Maximum at bottom-left.
    MaxAtQ,
}

impl WindowRoles {
    pub fn of(sigma: &PermPattern, i: usize, j: usize) -> Result<Self> {
        check_window(sigma, i, j)?;
        Ok(WindowRoles {
            r: sigma.get(i, j),
            p: sigma.get(i, j + 1),
            q: sigma.get(i + 1, j),
            s: sigma.get(i + 1, j + 1),
        })
    }

    pub fn max(&self) -> usize {
        self.r.max(self.p).max(self.q).max(self.s)
    }

    pub fn min(&self) -> usize {
        self.r.min(self.p).min(self.q).min(self.s)
    }

    pub fn is_good(&self) -> bool {
        self.bad_role().is_none()
    }

    pub fn bad_role(&self) -> Option<BadRole> {
        let (lo, hi) = (self.min(), self.max());
        if lo == self.r {
            Some(BadRole::MinAtR)
        } else if lo == self.s {
            Some(BadRole::MinAtS)
        } else if hi == self.p {
            Some(BadRole::MaxAtP)
        } else if hi == self.q {
            Some(BadRole::MaxAtQ)
        } else {
            None
        }
    }
}

fn check_window(sigma: &PermPattern, i: usize, j: usize) -> Result<()> {
    if i + 1 >= sigma.rows() || j + 1 >= sigma.cols() {
        return Err(Error::WindowOutOfRange {
            row: i + 1,
            col: j + 1,
            rows: sigma.rows(),
            cols: sigma.cols(),
        });
    }
    Ok(())
}

/// Goodness of the window with top-left corner `(i, j)`, 0-based.
pub fn is_good_on(sigma: &PermPattern, i: usize, j: usize) -> Result<bool> {
    Ok(WindowRoles::of(sigma, i, j)?.is_good())
}

/// Bad windows in row-major order.
pub fn bad_windows(sigma: &PermPattern) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sigma.rows().saturating_sub(1) {
        for j in 0..sigma.cols().saturating_sub(1) {
            if !WindowRoles::of(sigma, i, j)
                .map(|w| w.is_good())
                .unwrap_or(true)
            {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn is_good_everywhere(sigma: &PermPattern) -> bool {
    bad_windows(sigma).is_empty()
}

/// A pattern making `A^σ` supmodular for every `rows × cols` matrix, when
/// one exists. Requires `rows <= cols`.
///
/// * one row: the identity,
/// * two rows: top row `n, n-1, …, 1`, bottom row `n+1, …, 2n`,
/// * 3×3: `[[8,7,1],[4,5,3],[2,6,9]]`,
/// * anything else: `None`, no universal pattern exists.
pub fn universal_pattern(rows: usize, cols: usize) -> Result<Option<PermPattern>> {
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!("empty {rows}x{cols} pattern")));
    }
    if rows > cols {
        return Err(Error::Precondition(format!(
            "{rows}x{cols} has more rows than columns; transpose first"
        )));
    }
    let pattern = match (rows, cols) {
        (1, n) => Some(PermPattern::identity(1, n)),
        (2, n) => {
            let top = (1..=n).rev();
            let bottom = n + 1..=2 * n;
            Some(PermPattern::from_ranks_unchecked(
                2,
                n,
                top.chain(bottom).collect(),
            ))
        }
        (3, 3) => Some(PermPattern::from_ranks_unchecked(
            3,
            3,
            vec![8, 7, 1, 4, 5, 3, 2, 6, 9],
        )),
        _ => None,
    };
    Ok(pattern)
}

/// The 3×4 covering pair `(σ, τ)`: for every 3×4 matrix `A`, `A^σ` is
/// supmodular when `a_8 + a_5 >= a_7 + a_6` and `A^τ` is supmodular when
/// `a_8 + a_5 <= a_7 + a_6`.
pub fn cover_pair_3x4() -> (PermPattern, PermPattern) {
    let sigma = vec![9, 8, 7, 3, 2, 6, 5, 4, 1, 10, 11, 12];
    let tau = vec![12, 3, 2, 1, 11, 7, 8, 9, 4, 5, 6, 10];
    (
        PermPattern::from_ranks_unchecked(3, 4, sigma),
        PermPattern::from_ranks_unchecked(3, 4, tau),
    )
}

/// A matrix `A` for which `A^σ` fails the window inequality at `(i, j)`
/// by exactly 1. The window must be bad.
///
/// The entries, listed row-major, are the nondecreasing sequence
/// `a_1..a_mn` over `{1, 2}` that isolates the offending rank: when the
/// minimum sits on the diagonal at rank `k`, `a_t = 1` for `t <= k` and `2`
/// above; when the maximum sits on the antidiagonal at rank `k`, `a_t = 1`
/// for `t < k` and `2` from `k` on.
pub fn violating_witness(sigma: &PermPattern, i: usize, j: usize) -> Result<Matrix> {
    let roles = WindowRoles::of(sigma, i, j)?;
    let Some(bad) = roles.bad_role() else {
        return Err(Error::Precondition(format!(
            "pattern is good on window ({}, {})",
            i + 1,
            j + 1
        )));
    };
    // Ranks up to `last_one` get 1, the rest 2.
    let last_one = match bad {
        BadRole::MinAtR => roles.r,
        BadRole::MinAtS => roles.s,
        BadRole::MaxAtP => roles.p - 1,
        BadRole::MaxAtQ => roles.q - 1,
    };
    let entries = (1..=sigma.len())
        .map(|t| {
            if t <= last_one {
                Scalar::ONE
            } else {
                Scalar::from(2)
            }
        })
        .collect();
    Matrix::new(sigma.rows(), sigma.cols(), entries)
}
