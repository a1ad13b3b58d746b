use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::goodness::cover_pair_3x4;
use crate::matrix::{apply_permutation, sort_entries, Matrix, PermPattern, Scalar, SortedEntries};
use crate::supmodular::{is_supmodular_adjacent, is_supmodular_full};

/// A nonempty set of patterns of one shape, offered as a cover: every
/// matrix should be made supmodular by at least one member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSet {
    patterns: Vec<PermPattern>,
}

impl CoverSet {
    pub fn new(patterns: Vec<PermPattern>) -> Result<Self> {
        let Some(first) = patterns.first() else {
            return Err(Error::Dimension("empty cover set".into()));
        };
        let shape = (first.rows(), first.cols());
        if let Some(bad) = patterns.iter().find(|p| (p.rows(), p.cols()) != shape) {
            return Err(Error::Dimension(format!(
                "cover set mixes {}x{} and {}x{} patterns",
                shape.0,
                shape.1,
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(CoverSet { patterns })
    }

    pub fn patterns(&self) -> &[PermPattern] {
        &self.patterns
    }

    pub fn rows(&self) -> usize {
        self.patterns[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.patterns[0].cols()
    }

    /// Number of entries each pattern arranges.
    pub fn cells(&self) -> usize {
        self.patterns[0].len()
    }

    /// First member (in set order) arranging `entries` into a supmodular
    /// matrix.
    pub fn covering_member(&self, entries: &SortedEntries) -> Option<&PermPattern> {
        self.patterns.iter().find(|p| {
            entries
                .arrange(p)
                .map(|a| is_supmodular_adjacent(&a))
                .unwrap_or(false)
        })
    }

    pub fn covers(&self, entries: &SortedEntries) -> bool {
        self.covering_member(entries).is_some()
    }
}

/// Picks the 3×4 covering pattern for `a` from its sorted entries:
/// `σ` when `a_8 + a_5 >= a_7 + a_6`, otherwise `τ`. A 4×3 matrix is
/// handled through its transpose and gets a 4×3 pattern back.
pub fn permute_3x4(a: &Matrix) -> Result<PermPattern> {
    let transposed = match (a.rows(), a.cols()) {
        (3, 4) => false,
        (4, 3) => true,
        (r, c) => {
            return Err(Error::Dimension(format!(
                "expected a 3x4 or 4x3 matrix, got {r}x{c}"
            )))
        }
    };
    let sorted = sort_entries(a);
    let (sigma, tau) = cover_pair_3x4();
    let pick = if sorted.nth(8) + sorted.nth(5) >= sorted.nth(7) + sorted.nth(6) {
        sigma
    } else {
        tau
    };
    let pick = if transposed { pick.transpose() } else { pick };
    if !is_supmodular_full(&apply_permutation(a, &pick)?) {
        return Err(Error::Invariant(format!(
            "3x4 cover pattern failed on {a:?}"
        )));
    }
    Ok(pick)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub trials: u64,
    pub failures: u64,
    /// Uncovered sample with the smallest trial index.
    pub first_failure: Option<SortedEntries>,
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trials={} failures={}", self.trials, self.failures)?;
        if let Some(seq) = &self.first_failure {
            write!(f, "\nfirst-failure={seq}")?;
        }
        Ok(())
    }
}

pub const DEFAULT_ENTRY_RANGE: RangeInclusive<i64> = -10..=10;
const CHUNK: u64 = 4096;

/// Samples `trials` sorted entry sequences, entries i.i.d. uniform over
/// `-10..=10`, and counts those no member of `set` covers.
pub fn random_cover_test(set: &CoverSet, trials: u64, seed: u64) -> CoverReport {
    random_cover_test_with(set, trials, seed, DEFAULT_ENTRY_RANGE, Exec::default())
}

/// Trials are drawn in fixed chunks, each from its own ChaCha stream, so
/// the report depends only on `seed` and never on `exec`.
pub fn random_cover_test_with(
    set: &CoverSet,
    trials: u64,
    seed: u64,
    range: RangeInclusive<i64>,
    exec: Exec,
) -> CoverReport {
    let chunks: Vec<u64> = (0..trials.div_ceil(CHUNK)).collect();
    let cells = set.cells();
    let parts = exec.map(chunks, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let n = CHUNK.min(trials - chunk * CHUNK);
        let mut failures = 0;
        let mut first = None;
        for _ in 0..n {
            let values = (0..cells)
                .map(|_| Scalar::from(rng.gen_range(range.clone())))
                .collect();
            let seq = SortedEntries::new(values);
            if !set.covers(&seq) {
                failures += 1;
                first.get_or_insert(seq);
            }
        }
        (failures, first)
    });
    let mut report = CoverReport {
        trials,
        failures: 0,
        first_failure: None,
    };
    for (failures, first) in parts {
        report.failures += failures;
        if report.first_failure.is_none() {
            report.first_failure = first;
        }
    }
    report
}

/// Searches every nondecreasing sequence over `0..=max_value` (there are
/// `C(mn + max_value, max_value)`) for one that no member of `set` covers.
/// A returned sequence refutes the set; `None` proves nothing beyond the
/// alphabet searched.
pub fn refute_cover(set: &CoverSet, max_value: u32) -> Option<SortedEntries> {
    refute_cover_with(set, max_value, Exec::default())
}

/// Lexicographically first witness regardless of `exec`.
pub fn refute_cover_with(set: &CoverSet, max_value: u32, exec: Exec) -> Option<SortedEntries> {
    const BATCH: usize = 8192;
    let cells = set.cells();
    let mut seq = vec![0u32; cells];
    let mut batch: Vec<Vec<u32>> = Vec::with_capacity(BATCH);
    let check = |s: &Vec<u32>| {
        let entries = SortedEntries::from_sorted(s.iter().map(|&v| Scalar::from(v)).collect())
            .expect("generated nondecreasing");
        (!set.covers(&entries)).then_some(entries)
    };
    loop {
        batch.push(seq.clone());
        let exhausted = match (0..cells).rev().find(|&k| seq[k] < max_value) {
            Some(k) => {
                let v = seq[k] + 1;
                seq[k..].iter_mut().for_each(|x| *x = v);
                false
            }
            None => true,
        };
        if batch.len() == BATCH || exhausted {
            if let Some(w) = exec.find_first(&batch, check) {
                return Some(w);
            }
            batch.clear();
        }
        if exhausted {
            return None;
        }
    }
}
