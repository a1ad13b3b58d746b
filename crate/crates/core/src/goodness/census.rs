//! Exhaustive enumeration of patterns that are good on every window.
//!
//! Ranks are placed from `mn` down to `1`. Within a window the first rank
//! placed is its maximum and the last is its minimum, so goodness reduces
//! to two local rules checked at placement time: a cell may open a window
//! only from a diagonal corner and close it only from an antidiagonal
//! corner. A window left with a single empty diagonal corner is dead and
//! pruned immediately.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::PermPattern;

/// Census of good-everywhere patterns of one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodCensus {
    pub rows: usize,
    pub cols: usize,
    pub count: u64,
    /// Orbits under 180° rotation, plus transposition when square. Only
    /// filled when requested.
    pub orbits: Option<u64>,
    /// Up to `emit_limit` patterns, sorted.
    pub patterns: Vec<PermPattern>,
}

/// Header `rows cols count`, an `orbits=<k>` line when computed, then the
/// listed patterns separated by blank lines.
impl fmt::Display for GoodCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.rows, self.cols, self.count)?;
        if let Some(o) = self.orbits {
            write!(f, "\norbits={o}")?;
        }
        for p in &self.patterns {
            write!(f, "\n\n{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub emit_limit: usize,
    pub orbits: bool,
    /// Refuse shapes with more cells than this.
    pub max_cells: usize,
    pub exec: Exec,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            emit_limit: 0,
            orbits: false,
            max_cells: 16,
            exec: Exec::default(),
        }
    }
}

pub fn enumerate_good(rows: usize, cols: usize, emit_limit: usize) -> Result<GoodCensus> {
    enumerate_good_with(
        rows,
        cols,
        &CensusOptions {
            emit_limit,
            ..Default::default()
        },
    )
}

pub fn enumerate_good_with(rows: usize, cols: usize, opts: &CensusOptions) -> Result<GoodCensus> {
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!("empty {rows}x{cols} pattern")));
    }
    let cells = rows * cols;
    if cells > opts.max_cells {
        return Err(Error::ResourceGuard(format!(
            "{rows}x{cols} has {cells} cells, census limit is {}",
            opts.max_cells
        )));
    }
    let board = Board::new(rows, cols);

    if rows == 1 || cols == 1 {
        // No windows: every arrangement is good.
        let count = (1..=cells as u64).product::<u64>();
        let mut sink = Sink::new(opts.emit_limit, false, true);
        board.clone().descend(cells, &mut sink);
        let mut patterns = sink.patterns;
        patterns.sort();
        return Ok(GoodCensus {
            rows,
            cols,
            count,
            orbits: opts
                .orbits
                .then_some(if cells == 1 { 1 } else { count / 2 }),
            patterns,
        });
    }

    let depth = cells.min(3);
    let mut prefixes = Vec::new();
    board
        .clone()
        .prefixes(cells, depth, &mut Vec::new(), &mut prefixes);

    let parts = opts.exec.map(prefixes, |prefix| {
        let mut b = board.clone();
        for (k, &cell) in prefix.iter().enumerate() {
            b.place(cell, cells - k);
        }
        let mut sink = Sink::new(opts.emit_limit, opts.orbits, false);
        b.descend(cells - prefix.len(), &mut sink);
        sink
    });

    let mut count = 0;
    let mut orbits = 0;
    let mut patterns = Vec::new();
    for part in parts {
        count += part.count;
        orbits += part.orbits;
        for p in part.patterns {
            if patterns.len() < opts.emit_limit {
                patterns.push(p);
            }
        }
    }
    patterns.sort();
    Ok(GoodCensus {
        rows,
        cols,
        count,
        orbits: opts.orbits.then_some(orbits),
        patterns,
    })
}

// corner order: top-left, top-right, bottom-left, bottom-right
const TL: u8 = 0;
const BR: u8 = 3;

fn diagonal(corner: u8) -> bool {
    corner == TL || corner == BR
}

#[derive(Clone)]
struct Board {
    rows: usize,
    cols: usize,
    /// Rank per cell, 0 when empty.
    ranks: Vec<usize>,
    /// Cells of each window indexed by corner.
    windows: Vec<[usize; 4]>,
    filled: Vec<u8>,
    /// `(window, corner)` pairs touching each cell.
    touching: Vec<Vec<(usize, u8)>>,
}

impl Board {
    fn new(rows: usize, cols: usize) -> Self {
        let mut windows = Vec::new();
        let mut touching = vec![Vec::new(); rows * cols];
        for i in 0..rows.saturating_sub(1) {
            for j in 0..cols.saturating_sub(1) {
                let w = windows.len();
                let cells = [
                    i * cols + j,
                    i * cols + j + 1,
                    (i + 1) * cols + j,
                    (i + 1) * cols + j + 1,
                ];
                for (corner, &c) in cells.iter().enumerate() {
                    touching[c].push((w, corner as u8));
                }
                windows.push(cells);
            }
        }
        let filled = vec![0; windows.len()];
        Board {
            rows,
            cols,
            ranks: vec![0; rows * cols],
            windows,
            filled,
            touching,
        }
    }

    /// Whether `cell` may take the next (smaller) rank.
    fn allowed(&self, cell: usize) -> bool {
        self.touching[cell]
            .iter()
            .all(|&(w, corner)| match self.filled[w] {
                0 => diagonal(corner),
                // closing corner must be antidiagonal
                3 => !diagonal(corner),
                // after this placement one cell is left; it must be antidiagonal
                2 => self.windows[w]
                    .iter()
                    .enumerate()
                    .find(|&(k, &c)| c != cell && self.ranks[c] == 0 && k as u8 != corner)
                    .is_none_or(|(k, _)| !diagonal(k as u8)),
                _ => true,
            })
    }

    fn place(&mut self, cell: usize, rank: usize) {
        self.ranks[cell] = rank;
        for &(w, _) in &self.touching[cell] {
            self.filled[w] += 1;
        }
    }

    fn clear(&mut self, cell: usize) {
        self.ranks[cell] = 0;
        for &(w, _) in &self.touching[cell] {
            self.filled[w] -= 1;
        }
    }

    fn prefixes(
        &mut self,
        rank: usize,
        depth: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == 0 || rank == 0 {
            out.push(cur.clone());
            return;
        }
        for cell in 0..self.ranks.len() {
            if self.ranks[cell] == 0 && self.allowed(cell) {
                self.place(cell, rank);
                cur.push(cell);
                self.prefixes(rank - 1, depth - 1, cur, out);
                cur.pop();
                self.clear(cell);
            }
        }
    }

    /// Places ranks `rank, rank-1, …, 1`. Returns false once the sink asks
    /// to stop.
    fn descend(&mut self, rank: usize, sink: &mut Sink) -> bool {
        if rank == 0 {
            return sink.leaf(self);
        }
        for cell in 0..self.ranks.len() {
            if self.ranks[cell] == 0 && self.allowed(cell) {
                self.place(cell, rank);
                let go_on = self.descend(rank - 1, sink);
                self.clear(cell);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

struct Sink {
    count: u64,
    orbits: u64,
    patterns: Vec<PermPattern>,
    limit: usize,
    with_orbits: bool,
    stop_when_full: bool,
}

impl Sink {
    fn new(limit: usize, with_orbits: bool, stop_when_full: bool) -> Self {
        Sink {
            count: 0,
            orbits: 0,
            patterns: Vec::new(),
            limit,
            with_orbits,
            stop_when_full,
        }
    }

    fn leaf(&mut self, board: &Board) -> bool {
        self.count += 1;
        if self.with_orbits && is_canonical(board) {
            self.orbits += 1;
        }
        if self.patterns.len() < self.limit {
            self.patterns.push(PermPattern::from_ranks_unchecked(
                board.rows,
                board.cols,
                board.ranks.clone(),
            ));
        }
        !(self.stop_when_full && self.patterns.len() >= self.limit)
    }
}

/// Lexicographically smallest in its symmetry orbit.
fn is_canonical(board: &Board) -> bool {
    let ranks = &board.ranks;
    let rotated: Vec<usize> = ranks.iter().rev().copied().collect();
    if rotated < *ranks {
        return false;
    }
    if board.rows == board.cols {
        let n = board.rows;
        let transposed: Vec<usize> = (0..n * n).map(|k| ranks[(k % n) * n + k / n]).collect();
        let anti: Vec<usize> = transposed.iter().rev().copied().collect();
        if transposed < *ranks || anti < *ranks {
            return false;
        }
    }
    true
}
