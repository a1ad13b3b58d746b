//! Greedy transportation over supmodular utilities.
//!
//! When the utility matrix is supmodular, filling the flow matrix in
//! row-major order, each cell as large as the remaining row supply and
//! column demand allow, is optimal. [`preprocess_transporters`] arranges a
//! fixed set of per-unit prices into such a matrix once, after which every
//! request is served by [`greedy_transport`] in `O(mn)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{apply_permutation, Matrix, PermPattern, Scalar};
use crate::search::{decide_permutable, PermuteStatus};
use crate::supmodular::is_supmodular_full;

/// A balanced transportation problem, maximizing total utility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportInstance {
    utility: Matrix,
    supply: Vec<u64>,
    demand: Vec<u64>,
}

impl TransportInstance {
    pub fn new(utility: Matrix, supply: Vec<u64>, demand: Vec<u64>) -> Result<Self> {
        if supply.len() != utility.rows() || demand.len() != utility.cols() {
            return Err(Error::Dimension(format!(
                "{}x{} utility with {} supplies and {} demands",
                utility.rows(),
                utility.cols(),
                supply.len(),
                demand.len()
            )));
        }
        let (s, d) = (supply.iter().sum::<u64>(), demand.iter().sum::<u64>());
        if s != d {
            return Err(Error::Unbalanced {
                supply: s,
                demand: d,
            });
        }
        Ok(TransportInstance {
            utility,
            supply,
            demand,
        })
    }

    pub fn utility(&self) -> &Matrix {
        &self.utility
    }

    pub fn supply(&self) -> &[u64] {
        &self.supply
    }

    pub fn demand(&self) -> &[u64] {
        &self.demand
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportPlan {
    pub rows: usize,
    pub cols: usize,
    /// Row-major flows.
    pub flow: Vec<u64>,
    pub value: Scalar,
}

impl TransportPlan {
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.flow[row * self.cols + col]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.flow
            .chunks(self.cols)
            .map(|r| r.iter().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }
}

/// Flow matrix, then `value=<scalar>`.
impl fmt::Display for TransportPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.flow.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        write!(f, "value={}", self.value)
    }
}

fn plan_value(utility: &Matrix, flow: &[u64]) -> Scalar {
    utility
        .entries()
        .iter()
        .zip(flow)
        .filter(|(_, &x)| x != 0)
        .map(|(&u, &x)| u * Scalar::from(x))
        .sum()
}

/// Northwest-corner greedy fill. Always feasible; optimal when the utility
/// is supmodular.
pub fn greedy_transport(inst: &TransportInstance) -> TransportPlan {
    let (m, n) = (inst.utility.rows(), inst.utility.cols());
    let mut supply = inst.supply.clone();
    let mut demand = inst.demand.clone();
    let mut flow = vec![0; m * n];
    for i in 0..m {
        for j in 0..n {
            let x = supply[i].min(demand[j]);
            flow[i * n + j] = x;
            supply[i] -= x;
            demand[j] -= x;
        }
    }
    let value = plan_value(&inst.utility, &flow);
    TransportPlan {
        rows: m,
        cols: n,
        flow,
        value,
    }
}

pub const DEFAULT_PLAN_GUARD: u64 = 10_000_000;

/// Exhaustive optimum over all integral plans, visiting at most `guard`
/// search nodes. Ties keep the lexicographically first row-major flow.
pub fn brute_force_transport_with(inst: &TransportInstance, guard: u64) -> Result<TransportPlan> {
    let (m, n) = (inst.utility.rows(), inst.utility.cols());
    let mut state = Enumeration {
        inst,
        cols: n,
        flow: vec![0; m * n],
        supply: inst.supply.clone(),
        demand: inst.demand.clone(),
        best: None,
        nodes: 0,
        guard,
    };
    state.cell(0)?;
    let (value, flow) = state.best.expect("balanced instances always have a plan");
    Ok(TransportPlan {
        rows: m,
        cols: n,
        flow,
        value,
    })
}

pub fn brute_force_transport(inst: &TransportInstance) -> Result<TransportPlan> {
    brute_force_transport_with(inst, DEFAULT_PLAN_GUARD)
}

struct Enumeration<'a> {
    inst: &'a TransportInstance,
    cols: usize,
    flow: Vec<u64>,
    supply: Vec<u64>,
    demand: Vec<u64>,
    best: Option<(Scalar, Vec<u64>)>,
    nodes: u64,
    guard: u64,
}

impl Enumeration<'_> {
    fn cell(&mut self, k: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.guard {
            return Err(Error::ResourceGuard(format!(
                "transport enumeration exceeded {} nodes",
                self.guard
            )));
        }
        if k == self.flow.len() {
            if self.supply.iter().all(|&s| s == 0) {
                let value = plan_value(&self.inst.utility, &self.flow);
                if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                    self.best = Some((value, self.flow.clone()));
                }
            }
            return Ok(());
        }
        let (i, j) = (k / self.cols, k % self.cols);
        let cap = self.supply[i].min(self.demand[j]);
        // the last cell of a row must take the remaining supply
        let lo = if j + 1 == self.cols {
            self.supply[i]
        } else {
            0
        };
        if lo > cap {
            return Ok(());
        }
        for x in lo..=cap {
            self.flow[k] = x;
            self.supply[i] -= x;
            self.demand[j] -= x;
            let r = self.cell(k + 1);
            self.supply[i] += x;
            self.demand[j] += x;
            r?;
        }
        self.flow[k] = 0;
        Ok(())
    }
}

/// Transporters bound to supplier/consumer pairs so that the utility
/// (negated price) matrix is supmodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransporterAssignment {
    /// Per-unit price of each transporter, in input order.
    pub prices: Vec<Scalar>,
    /// Rank pattern applied to the row-major matrix of negated prices.
    pub pattern: PermPattern,
    /// Supmodular utility matrix `-price` per cell.
    pub utility: Matrix,
}

impl TransporterAssignment {
    /// Index into `prices` of the transporter serving each cell,
    /// row-major. Equal prices are matched in input order.
    pub fn transporter_of_cell(&self) -> Vec<usize> {
        let mut by_value: Vec<usize> = (0..self.prices.len()).collect();
        // ascending utility = descending price, ties by input order
        by_value.sort_by(|&x, &y| self.prices[y].cmp(&self.prices[x]).then(x.cmp(&y)));
        self.pattern
            .ranks()
            .iter()
            .map(|&r| by_value[r - 1])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignmentOutcome {
    Assigned(TransporterAssignment),
    NotPermutable,
    BudgetExhausted,
}

/// Lays out `-price` row-major as an `rows × cols` matrix and searches for
/// a supmodular rearrangement.
pub fn preprocess_transporters(
    prices: &[Scalar],
    rows: usize,
    cols: usize,
    budget: u64,
) -> Result<AssignmentOutcome> {
    if prices.len() != rows * cols {
        return Err(Error::Dimension(format!(
            "{} prices for a {rows}x{cols} assignment",
            prices.len()
        )));
    }
    let a = Matrix::new(rows, cols, prices.iter().map(|&p| -p).collect())?;
    let outcome = decide_permutable(&a, budget);
    Ok(match outcome.status {
        PermuteStatus::Permutable(pattern) => {
            let utility = apply_permutation(&a, &pattern)?;
            debug_assert!(is_supmodular_full(&utility));
            AssignmentOutcome::Assigned(TransporterAssignment {
                prices: prices.to_vec(),
                pattern,
                utility,
            })
        }
        PermuteStatus::NotPermutable => AssignmentOutcome::NotPermutable,
        PermuteStatus::Unknown => AssignmentOutcome::BudgetExhausted,
    })
}

/// Serves each `(supply, demand)` request greedily against the fixed
/// utility, in order. A rejected request yields an error in its slot and
/// the stream continues. With `bound`, every supply and demand entry must
/// be at most `bound`.
pub fn serve_stream<I>(
    assignment: &TransporterAssignment,
    requests: I,
    bound: Option<u64>,
) -> Vec<Result<TransportPlan>>
where
    I: IntoIterator<Item = (Vec<u64>, Vec<u64>)>,
{
    requests
        .into_iter()
        .map(|(supply, demand)| {
            if let Some(bound) = bound {
                if let Some(&value) = supply.iter().chain(&demand).find(|&&v| v > bound) {
                    return Err(Error::BoundExceeded { bound, value });
                }
            }
            let inst = TransportInstance::new(assignment.utility.clone(), supply, demand)?;
            Ok(greedy_transport(&inst))
        })
        .collect()
}
