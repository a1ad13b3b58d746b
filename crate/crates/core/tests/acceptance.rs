//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line
//! each, and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supmod::goodness::{bad_windows, WindowRoles};
use supmod::search::{next_permutation, DEFAULT_NODE_BUDGET};
use supmod::supmodular::rectangle_margin;
use supmod::text::{parse_matrix, parse_pattern};
use supmod::*;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| Scalar::from(rng.gen_range(lo..=hi)))
        .collect();
    Matrix::new(rows, cols, entries).unwrap()
}

/// Entries `p/q` with `q` in 1..=4, so exactness matters.
fn random_rational_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| Scalar::new(rng.gen_range(-40..=40), rng.gen_range(1..=4)))
        .collect();
    Matrix::new(rows, cols, entries).unwrap()
}

/// Every matrix of the shape with entries in `0..=max`, row-major odometer.
fn all_matrices(rows: usize, cols: usize, max: i64) -> Vec<Matrix> {
    let len = rows * cols;
    let mut digits = vec![0i64; len];
    let mut out = Vec::new();
    loop {
        out.push(
            Matrix::new(
                rows,
                cols,
                digits.iter().map(|&d| Scalar::from(d)).collect(),
            )
            .unwrap(),
        );
        let Some(k) = (0..len).rev().find(|&k| digits[k] < max) else {
            return out;
        };
        digits[k] += 1;
        digits[k + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

/// Every nondecreasing sequence of `len` values over `0..=max`.
fn all_sorted(len: usize, max: i64) -> Vec<SortedEntries> {
    let mut seq = vec![0i64; len];
    let mut out = Vec::new();
    loop {
        out.push(
            SortedEntries::from_sorted(seq.iter().map(|&v| Scalar::from(v)).collect()).unwrap(),
        );
        let Some(k) = (0..len).rev().find(|&k| seq[k] < max) else {
            return out;
        };
        let v = seq[k] + 1;
        seq[k..].iter_mut().for_each(|x| *x = v);
    }
}

fn random_pattern(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PermPattern {
    let mut ranks: Vec<i64> = (1..=(rows * cols) as i64).collect();
    ranks.shuffle(rng);
    PermPattern::new(rows, cols, ranks).unwrap()
}

/// Goodness straight from the definition, independent of the library's
/// window bookkeeping: max of each window at a diagonal cell, min at an
/// antidiagonal cell.
fn oracle_good_everywhere(rows: usize, cols: usize, ranks: &[usize]) -> bool {
    (0..rows - 1).all(|i| {
        (0..cols - 1).all(|j| {
            let at = |r: usize, c: usize| ranks[r * cols + c];
            let cells = [(i, j), (i + 1, j + 1), (i, j + 1), (i + 1, j)];
            let max = cells.iter().max_by_key(|&&(r, c)| at(r, c)).unwrap();
            let min = cells.iter().min_by_key(|&&(r, c)| at(r, c)).unwrap();
            (*max == cells[0] || *max == cells[1]) && (*min == cells[2] || *min == cells[3])
        })
    })
}

fn brute_force_good_count(rows: usize, cols: usize) -> u64 {
    let mut ranks: Vec<usize> = (1..=rows * cols).collect();
    let mut count = 0;
    loop {
        if oracle_good_everywhere(rows, cols, &ranks) {
            count += 1;
        }
        if !next_permutation(&mut ranks) {
            return count;
        }
    }
}

fn ac1_worked_example() -> Outcome {
    let start = Instant::now();
    let a = parse_matrix("1 1 3\n10 3 7\n8 10 6").map_err(|e| e.to_string())?;
    let sigma = parse_pattern("8 7 1\n4 5 3\n2 6 9").map_err(|e| e.to_string())?;
    let arranged = apply_permutation(&a, &sigma).map_err(|e| e.to_string())?;
    let supmodular = is_supmodular_full(&arranged);
    let elapsed = start.elapsed();
    let want = Matrix::from_rows(&[[10, 8, 1], [3, 6, 3], [1, 7, 10]]).unwrap();
    ensure!(arranged == want, "A^σ = {arranged:?}");
    ensure!(
        arranged.to_string() == "10 8 1\n3 6 3\n1 7 10",
        "rendering differs"
    );
    ensure!(supmodular, "A^σ not supmodular");
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!("A^σ reproduced, supmodular, {elapsed:?}"))
}

fn ac2_adjacent_equivalence() -> Outcome {
    let mut checked = 0;
    for (r, c) in [(2, 2), (2, 3)] {
        for a in all_matrices(r, c, 2) {
            ensure!(
                is_supmodular_adjacent(&a) == is_supmodular_full(&a),
                "discrepancy on {a:?}"
            );
            checked += 1;
        }
    }
    let mut g = rng(2);
    let mut positives = 0;
    for _ in 0..10_000 {
        let (r, c) = (g.gen_range(1..=6), g.gen_range(1..=6));
        let a = random_matrix(&mut g, r, c, -5, 5);
        let full = is_supmodular_full(&a);
        ensure!(is_supmodular_adjacent(&a) == full, "discrepancy on {a:?}");
        positives += full as u32;
    }
    Ok(format!(
        "{checked} exhaustive + 10000 random, 0 discrepancies ({positives} random supmodular)"
    ))
}

fn ac3_universal_patterns() -> Outcome {
    let mut g = rng(3);
    let mut trials = 0;
    let mut check = |p: &PermPattern, g: &mut ChaCha8Rng| -> std::result::Result<(), String> {
        ensure!(is_good_everywhere(p), "{p:?} not good everywhere");
        for k in 0..1000 {
            let a = if k % 2 == 0 {
                random_matrix(g, p.rows(), p.cols(), -10, 10)
            } else {
                random_rational_matrix(g, p.rows(), p.cols())
            };
            let arranged = apply_permutation(&a, p).unwrap();
            ensure!(is_supmodular_full(&arranged), "{p:?} fails on {a:?}");
            trials += 1;
        }
        Ok(())
    };
    for n in 2..=10 {
        check(&universal_pattern(2, n).unwrap().unwrap(), &mut g)?;
    }
    check(&universal_pattern(3, 3).unwrap().unwrap(), &mut g)?;
    check(&PermPattern::from_rows(&[[4, 3], [1, 2]]).unwrap(), &mut g)?;
    check(
        &PermPattern::from_rows(&[[9, 6, 2], [3, 5, 4], [1, 7, 8]]).unwrap(),
        &mut g,
    )?;
    Ok(format!(
        "12 patterns good everywhere, {trials} random A^σ supmodular"
    ))
}

fn ac4_three_by_four_exhaustive() -> Outcome {
    let start = Instant::now();
    let (sigma, tau) = cover_pair_3x4();
    let seqs = all_sorted(12, 4);
    ensure!(seqs.len() == 1820, "{} sequences", seqs.len());
    let (mut via_sigma, mut via_tau) = (0, 0);
    for seq in &seqs {
        let a = seq.to_matrix(3, 4).unwrap();
        let picked = permute_3x4(&a).map_err(|e| e.to_string())?;
        ensure!(
            is_supmodular_full(&apply_permutation(&a, &picked).unwrap()),
            "{seq:?}"
        );
        let lhs = seq.nth(8) + seq.nth(5);
        let rhs = seq.nth(7) + seq.nth(6);
        if lhs >= rhs {
            ensure!(picked == sigma, "σ branch not taken for {seq:?}");
            ensure!(
                is_supmodular_full(&seq.arrange(&sigma).unwrap()),
                "σ fails on {seq:?}"
            );
            via_sigma += 1;
        } else {
            ensure!(picked == tau, "τ branch not taken for {seq:?}");
            via_tau += 1;
        }
        if lhs <= rhs {
            ensure!(
                is_supmodular_full(&seq.arrange(&tau).unwrap()),
                "τ fails on {seq:?}"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "1820 sequences ({via_sigma} via σ, {via_tau} via τ), {elapsed:?}"
    ))
}

fn ac5_census() -> Outcome {
    let start = Instant::now();
    let c34 = enumerate_good(3, 4, 0).map_err(|e| e.to_string())?;
    let t34 = start.elapsed();
    ensure!(c34.count == 0, "3x4 count {}", c34.count);
    ensure!(t34 < Duration::from_secs(60), "3x4 census took {t34:?}");

    let c22 = enumerate_good(2, 2, 0).unwrap().count;
    let b22 = brute_force_good_count(2, 2);
    ensure!(c22 == 8 && b22 == 8, "2x2 census {c22}, brute force {b22}");

    let c33 = enumerate_good(3, 3, 100).unwrap();
    let b33 = brute_force_good_count(3, 3);
    ensure!(
        c33.count >= 2 && c33.count == b33,
        "3x3 census {}, brute force {b33}",
        c33.count
    );
    for p in [
        [[8, 7, 1], [4, 5, 3], [2, 6, 9]],
        [[9, 6, 2], [3, 5, 4], [1, 7, 8]],
    ] {
        let p = PermPattern::from_rows(&p).unwrap();
        ensure!(c33.patterns.contains(&p), "3x3 census misses {p:?}");
    }
    Ok(format!(
        "3x4: 0 ({t34:?}); 2x2: 8 = brute force; 3x3: {} = 9! brute force",
        c33.count
    ))
}

fn ac6_witnesses() -> Outcome {
    let mut g = rng(6);
    let mut witnesses = 0;
    for _ in 0..1000 {
        let (r, c) = (g.gen_range(2..=4), g.gen_range(2..=4));
        let p = random_pattern(&mut g, r, c);
        for (i, j) in bad_windows(&p) {
            let w = violating_witness(&p, i, j).map_err(|e| e.to_string())?;
            let arranged = apply_permutation(&w, &p).unwrap();
            ensure!(
                !is_supmodular_full(&arranged),
                "{p:?} window ({i},{j}) not violated"
            );
            let margin = rectangle_margin(&arranged, i, i + 1, j, j + 1);
            ensure!(
                margin == Scalar::from(-1),
                "{p:?} window ({i},{j}) margin {margin}"
            );
            ensure!(
                !WindowRoles::of(&p, i, j).unwrap().is_good(),
                "window reported bad but is good"
            );
            witnesses += 1;
        }
    }
    Ok(format!(
        "1000 patterns, {witnesses} bad windows, every witness deficit exactly 1"
    ))
}

fn ac7_decision_oracle() -> Outcome {
    let shapes: Vec<(usize, usize)> = (1..=9)
        .flat_map(|r| (1..=9).map(move |c| (r, c)))
        .filter(|(r, c)| r * c <= 9)
        .collect();
    let mut g = rng(7);
    let mut not_permutable = 0;
    for _ in 0..1000 {
        let (r, c) = *shapes.choose(&mut g).unwrap();
        let a = random_matrix(&mut g, r, c, 0, 3);
        let decided = decide_permutable(&a, u64::MAX);
        let oracle = brute_force_permutable(&a).map_err(|e| e.to_string())?;
        let yes = match decided.status {
            PermuteStatus::Permutable(_) => true,
            PermuteStatus::NotPermutable => false,
            PermuteStatus::Unknown => return Err("unbounded search returned unknown".into()),
        };
        ensure!(yes == oracle.is_some(), "disagreement on {a:?}");
        not_permutable += (!yes) as u32;
    }
    Ok(format!(
        "1000 matrices, 0 disagreements; non-permutable instances seen: {not_permutable}"
    ))
}

fn ac8_cover_pair() -> Outcome {
    let (sigma, tau) = cover_pair_3x4();
    let pair = CoverSet::new(vec![sigma.clone(), tau]).unwrap();
    let report = random_cover_test(&pair, 100_000, 8);
    ensure!(report.failures == 0, "{report}");
    ensure!(
        refute_cover(&pair, 3).is_none(),
        "pair refuted at max_value 3"
    );
    let alone = CoverSet::new(vec![sigma]).unwrap();
    let witness = refute_cover(&alone, 2).ok_or("no witness against σ alone")?;
    ensure!(!alone.covers(&witness), "witness is covered");
    Ok(format!(
        "100000 trials 0 failures; no refutation at max 3; σ alone refuted by {witness}"
    ))
}

fn random_balanced(g: &mut ChaCha8Rng, rows: usize, cols: usize, cap: u64) -> (Vec<u64>, Vec<u64>) {
    loop {
        let s: Vec<u64> = (0..rows).map(|_| g.gen_range(0..=cap)).collect();
        let d: Vec<u64> = (0..cols).map(|_| g.gen_range(0..=cap)).collect();
        if s.iter().sum::<u64>() == d.iter().sum::<u64>() {
            return (s, d);
        }
    }
}

fn supmodular_utility(g: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let a = random_matrix(g, rows, cols, -10, 10);
    let sigma = if (rows, cols) == (3, 4) || (rows, cols) == (4, 3) {
        permute_3x4(&a).unwrap()
    } else if rows <= cols {
        universal_pattern(rows, cols).unwrap().unwrap()
    } else {
        universal_pattern(cols, rows).unwrap().unwrap().transpose()
    };
    apply_permutation(&a, &sigma).unwrap()
}

fn ac9_greedy_optimality() -> Outcome {
    let shapes: Vec<(usize, usize)> = [
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 3),
        (3, 4),
    ]
    .into_iter()
    .flat_map(|(r, c)| [(r, c), (c, r)])
    .collect();
    let mut g = rng(9);
    for _ in 0..100 {
        let (r, c) = *shapes.choose(&mut g).unwrap();
        let utility = supmodular_utility(&mut g, r, c);
        ensure!(is_supmodular_full(&utility), "utility not supmodular");
        let (s, d) = random_balanced(&mut g, r, c, 6);
        let inst = TransportInstance::new(utility, s, d).unwrap();
        let greedy = greedy_transport(&inst);
        let best = brute_force_transport(&inst).map_err(|e| e.to_string())?;
        ensure!(
            greedy.value == best.value,
            "greedy {} < optimum {} on {inst:?}",
            greedy.value,
            best.value
        );
    }
    let anti = TransportInstance::new(
        Matrix::from_rows(&[[0, 1], [1, 0]]).unwrap(),
        vec![1, 1],
        vec![1, 1],
    )
    .unwrap();
    let (gv, bv) = (
        greedy_transport(&anti).value,
        brute_force_transport(&anti).unwrap().value,
    );
    ensure!(
        gv == Scalar::ZERO && bv == Scalar::from(2),
        "anti-supmodular: greedy {gv}, optimum {bv}"
    );
    Ok("100 supmodular instances greedy = optimum; anti-supmodular 2x2 greedy 0 < 2".into())
}

fn ac10_pipeline() -> Outcome {
    let mut g = rng(10);
    let prices: Vec<Scalar> = (0..12).map(|_| Scalar::from(g.gen_range(1..=50))).collect();
    let AssignmentOutcome::Assigned(assignment) =
        preprocess_transporters(&prices, 3, 4, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?
    else {
        return Err("preprocessing did not assign".into());
    };
    ensure!(
        is_supmodular_full(&assignment.utility),
        "assigned utility not supmodular"
    );
    let requests: Vec<(Vec<u64>, Vec<u64>)> = (0..1000)
        .map(|_| random_balanced(&mut g, 3, 4, 6))
        .collect();

    let start = Instant::now();
    let plans = serve_stream(&assignment, requests.clone(), Some(6));
    let per_request = start.elapsed() / 1000;

    for (plan, (s, d)) in plans.into_iter().zip(requests) {
        let plan = plan.map_err(|e| e.to_string())?;
        let inst = TransportInstance::new(assignment.utility.clone(), s, d).unwrap();
        let best = brute_force_transport(&inst).map_err(|e| e.to_string())?;
        ensure!(
            plan.value == best.value,
            "served {} < optimum {}",
            plan.value,
            best.value
        );
        ensure!(
            plan.row_sums() == inst.supply() && plan.col_sums() == inst.demand(),
            "infeasible plan"
        );
    }
    ensure!(
        per_request < Duration::from_micros(10),
        "{per_request:?} per request"
    );
    Ok(format!(
        "assignment found; 1000 requests optimal; {per_request:?} per request"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 worked example", ac1_worked_example),
        ("AC2 adjacent-window equivalence", ac2_adjacent_equivalence),
        ("AC3 universal patterns", ac3_universal_patterns),
        (
            "AC4 3x4 case split, exhaustive",
            ac4_three_by_four_exhaustive,
        ),
        ("AC5 good-pattern census", ac5_census),
        ("AC6 violating witnesses", ac6_witnesses),
        ("AC7 decision vs brute force", ac7_decision_oracle),
        ("AC8 3x4 covering pair", ac8_cover_pair),
        ("AC9 greedy optimality", ac9_greedy_optimality),
        ("AC10 assignment pipeline", ac10_pipeline),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
