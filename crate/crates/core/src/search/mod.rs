//! Permutability of concrete matrices and covering sets of patterns.

mod cover;

use std::fmt;
use std::time::{Duration, Instant};

pub use cover::{
    permute_3x4, random_cover_test, random_cover_test_with, refute_cover, refute_cover_with,
    CoverReport, CoverSet,
};

use crate::error::{Error, Result};
use crate::matrix::{sort_entries, Matrix, PermPattern, Scalar};
use crate::supmodular::is_supmodular_full;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermuteStatus {
    /// `A^σ` is supmodular for the carried pattern.
    Permutable(PermPattern),
    /// The whole placement tree was exhausted.
    NotPermutable,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermuteOutcome {
    pub status: PermuteStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// `permutable` / `not-permutable` / `unknown`, the pattern when there is
/// one, then `nodes=<k> ms=<t>`.
impl fmt::Display for PermuteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            PermuteStatus::Permutable(p) => write!(f, "permutable\n{p}\n")?,
            PermuteStatus::NotPermutable => writeln!(f, "not-permutable")?,
            PermuteStatus::Unknown => writeln!(f, "unknown")?,
        }
        write!(
            f,
            "nodes={} ms={}",
            self.nodes_explored,
            self.elapsed.as_millis()
        )
    }
}

/// Rank pattern that reproduces `grid` from its own entries: ranks ascend
/// with value, ties broken by row-major cell order.
pub(crate) fn pattern_of_grid(rows: usize, cols: usize, grid: &[Scalar]) -> PermPattern {
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&x, &y| grid[x].cmp(&grid[y]).then(x.cmp(&y)));
    let mut ranks = vec![0; grid.len()];
    for (k, cell) in order.into_iter().enumerate() {
        ranks[cell] = k + 1;
    }
    PermPattern::from_ranks_unchecked(rows, cols, ranks)
}

/// Decides whether the entries of `a` can be rearranged into a supmodular
/// matrix.
///
/// Values are placed largest first, equal values as one symbol with
/// multiplicity. A placement is pruned when it completes a window that
/// violates the window inequality, or leaves a window with one empty cell
/// that no remaining value can rescue: remaining values are all at most the
/// current one, so the best filler for an empty diagonal corner is the next
/// value to place and for an antidiagonal corner the smallest value.
pub fn decide_permutable(a: &Matrix, node_budget: u64) -> PermuteOutcome {
    let start = Instant::now();
    let mut search = Placement::new(a, node_budget);
    let found = search.run();
    let status = match found {
        Some(true) => {
            let grid: Vec<Scalar> = search
                .grid
                .iter()
                .map(|g| search.values[g.unwrap()])
                .collect();
            let sigma = pattern_of_grid(a.rows(), a.cols(), &grid);
            let arranged = crate::matrix::apply_permutation(a, &sigma).expect("shape preserved");
            assert!(
                is_supmodular_full(&arranged),
                "placement search produced a non-supmodular arrangement"
            );
            PermuteStatus::Permutable(sigma)
        }
        Some(false) => PermuteStatus::NotPermutable,
        None => PermuteStatus::Unknown,
    };
    PermuteOutcome {
        status,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    }
}

struct Placement {
    rows: usize,
    cols: usize,
    /// Distinct values, descending.
    values: Vec<Scalar>,
    remaining: Vec<usize>,
    /// Index into `values` per cell.
    grid: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl Placement {
    fn new(a: &Matrix, budget: u64) -> Self {
        let sorted = sort_entries(a);
        let mut values: Vec<Scalar> = Vec::new();
        let mut remaining: Vec<usize> = Vec::new();
        for &v in sorted.values().iter().rev() {
            if values.last() == Some(&v) {
                *remaining.last_mut().unwrap() += 1;
            } else {
                values.push(v);
                remaining.push(1);
            }
        }
        Placement {
            rows: a.rows(),
            cols: a.cols(),
            values,
            remaining,
            grid: vec![None; a.len()],
            nodes: 0,
            budget,
        }
    }

    /// `Some(true)` on success (grid left filled), `Some(false)` when
    /// exhausted, `None` when over budget.
    fn run(&mut self) -> Option<bool> {
        self.step(0, 0)
    }

    /// Places the next copy of `values[group]`, in a cell at or after
    /// `min_cell` so copies of one value are placed in increasing cell order.
    fn step(&mut self, group: usize, min_cell: usize) -> Option<bool> {
        if group == self.values.len() {
            return Some(true);
        }
        if self.remaining[group] == 0 {
            return self.step(group + 1, 0);
        }
        for cell in min_cell..self.grid.len() {
            if self.grid[cell].is_some() {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.grid[cell] = Some(group);
            self.remaining[group] -= 1;
            if self.feasible(cell, group) {
                match self.step(group, cell + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.remaining[group] += 1;
            self.grid[cell] = None;
        }
        Some(false)
    }

    /// Largest value still to place, after the current placement.
    fn next_value(&self, group: usize) -> Option<Scalar> {
        (group..self.values.len())
            .find(|&g| self.remaining[g] > 0)
            .map(|g| self.values[g])
    }

    fn feasible(&self, cell: usize, group: usize) -> bool {
        let (row, col) = (cell / self.cols, cell % self.cols);
        let smallest = *self.values.last().unwrap();
        let next = self.next_value(group);
        for i in row.saturating_sub(1)..=row.min(self.rows.saturating_sub(2)) {
            for j in col.saturating_sub(1)..=col.min(self.cols.saturating_sub(2)) {
                if i + 1 >= self.rows || j + 1 >= self.cols {
                    continue;
                }
                let corners = [
                    i * self.cols + j,
                    (i + 1) * self.cols + j + 1,
                    i * self.cols + j + 1,
                    (i + 1) * self.cols + j,
                ];
                let mut vals = [None; 4];
                let mut empty = None;
                for (k, &c) in corners.iter().enumerate() {
                    match self.grid[c] {
                        Some(g) => vals[k] = Some(self.values[g]),
                        None if empty.is_none() => empty = Some(k),
                        None => {
                            empty = Some(usize::MAX);
                        }
                    }
                }
                match empty {
                    None => {}
                    Some(usize::MAX) => continue,
                    Some(k) => {
                        let Some(next) = next else { continue };
                        // diagonal corners are 0, 1; antidiagonal 2, 3
                        vals[k] = Some(if k < 2 { next } else { smallest });
                    }
                }
                let [d0, d1, a0, a1] = vals.map(Option::unwrap);
                if d0 + d1 < a0 + a1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Steps `v` to its next lexicographic permutation; false after the last.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exhaustive oracle: tries every distinct arrangement of the entries, in
/// lexicographic row-major order, and returns the pattern of the first
/// supmodular one. Refuses more than `max_cells` cells (9 by default via
/// [`brute_force_permutable`]).
pub fn brute_force_permutable_with(a: &Matrix, max_cells: usize) -> Result<Option<PermPattern>> {
    if a.len() > max_cells {
        return Err(Error::ResourceGuard(format!(
            "{}x{} has {} cells, brute force limit is {max_cells}",
            a.rows(),
            a.cols(),
            a.len()
        )));
    }
    let mut arrangement = sort_entries(a).values().to_vec();
    loop {
        let candidate = Matrix::new(a.rows(), a.cols(), arrangement.clone())?;
        if is_supmodular_full(&candidate) {
            return Ok(Some(pattern_of_grid(a.rows(), a.cols(), &arrangement)));
        }
        if !next_permutation(&mut arrangement) {
            return Ok(None);
        }
    }
}

pub fn brute_force_permutable(a: &Matrix) -> Result<Option<PermPattern>> {
    brute_force_permutable_with(a, 9)
}
