//! `supmod` command-line interface.
//!
//! Exit status: 0 affirmative result, 1 negative result (certificate on
//! stdout), 2 usage or input error, 3 search budget or resource guard
//! exhausted.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use supmod::goodness::bad_windows;
use supmod::search::{brute_force_permutable_with, DEFAULT_NODE_BUDGET};
use supmod::text;
use supmod::{
    apply_permutation, brute_force_transport, decide_permutable, enumerate_good_with,
    find_violation, greedy_transport, is_supmodular_full, permute_3x4, preprocess_transporters,
    refute_cover, serve_stream, universal_pattern, violating_witness, AssignmentOutcome,
    CensusOptions, CoverSet, Error, Exec, Matrix, PermPattern, PermuteStatus, TransportInstance,
};

#[derive(Parser, Debug)]
#[command(
    name = "supmod",
    version,
    about = "Supmodular rearrangements of exact matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a matrix for supmodularity.
    Check { matrix: PathBuf },
    /// Rearrange a matrix with a given pattern, or find a pattern for it.
    Permute {
        matrix: PathBuf,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check that a pattern is good on every window.
    Good { pattern: PathBuf },
    /// Count the patterns of a shape that are good on every window.
    Census {
        rows: usize,
        cols: usize,
        #[arg(long, default_value_t = 0)]
        emit_limit: usize,
        /// Also count orbits under rotation (and transposition when square).
        #[arg(long)]
        orbits: bool,
        #[arg(long, default_value_t = 16)]
        max_cells: usize,
    },
    /// Decide whether a matrix is permutable to a supmodular one.
    Decide {
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Cross-check with exhaustive enumeration (small matrices only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Search a bounded alphabet for a matrix no pattern of a set covers.
    Refute {
        cover_set: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_value: u32,
    },
    /// Sample random matrices and count those a pattern set fails to cover.
    CoverTest {
        cover_set: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries are drawn uniformly from -RANGE..=RANGE.
        #[arg(long, default_value_t = 10)]
        range: i64,
    },
    /// Solve a transportation instance greedily.
    Greedy {
        instance: PathBuf,
        /// Also compute the exhaustive optimum.
        #[arg(long)]
        verify: bool,
    },
    /// Assign transporters (one price each) to cells so the utility is supmodular.
    Assign {
        prices: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Assign transporters, then answer a stream of `supplies | demands` requests.
    Serve {
        prices: PathBuf,
        requests: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Upper bound on every supply and demand.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

const AFFIRMATIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const EXHAUSTED: u8 = 3;

struct Report {
    code: u8,
    out: String,
}

impl Report {
    fn new(code: u8, out: impl Into<String>) -> Self {
        Report {
            code,
            out: out.into(),
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceGuard(_) => EXHAUSTED,
            _ => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure {
        code: INPUT_ERROR,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(text)
}

fn in_file<T>(path: &Path, r: supmod::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    in_file(path, text::parse_matrix(&read(path)?))
}

fn read_cover_set(path: &Path) -> Result<CoverSet, Failure> {
    let patterns = in_file(path, text::parse_patterns(&read(path)?))?;
    in_file(path, CoverSet::new(patterns))
}

fn check(a: &Matrix) -> Report {
    match find_violation(a) {
        None => Report::new(AFFIRMATIVE, "supmodular\n"),
        Some(cert) => Report::new(NEGATIVE, format!("not-supmodular\n{cert}\n")),
    }
}

fn pattern_and_matrix(p: &PermPattern, a: &Matrix) -> String {
    format!("{p}\n\n{a}\n")
}

fn outcome_code(status: &PermuteStatus) -> u8 {
    match status {
        PermuteStatus::Permutable(_) => AFFIRMATIVE,
        PermuteStatus::NotPermutable => NEGATIVE,
        PermuteStatus::Unknown => EXHAUSTED,
    }
}

/// A pattern from the closed-form constructions when the shape has one.
fn constructed_pattern(a: &Matrix) -> Result<Option<PermPattern>, Error> {
    let (m, n) = (a.rows(), a.cols());
    if (m, n) == (3, 4) || (m, n) == (4, 3) {
        return permute_3x4(a).map(Some);
    }
    if m <= n {
        universal_pattern(m, n)
    } else {
        Ok(universal_pattern(n, m)?.map(|p| p.transpose()))
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Check { matrix } => Ok(check(&read_matrix(&matrix)?)),

        Command::Permute {
            matrix,
            pattern,
            budget,
        } => {
            let a = read_matrix(&matrix)?;
            if let Some(path) = pattern {
                let sigma = in_file(&path, text::parse_pattern(&read(&path)?))?;
                let arranged = apply_permutation(&a, &sigma)?;
                let mut report = check(&arranged);
                report.out = format!("{arranged}\n{}", report.out);
                return Ok(report);
            }
            let sigma = match constructed_pattern(&a)? {
                Some(sigma) => sigma,
                None => {
                    let outcome = decide_permutable(&a, budget);
                    match outcome.status {
                        PermuteStatus::Permutable(sigma) => sigma,
                        ref status => {
                            return Ok(Report::new(outcome_code(status), format!("{outcome}\n")))
                        }
                    }
                }
            };
            let arranged = apply_permutation(&a, &sigma)?;
            Ok(Report::new(
                AFFIRMATIVE,
                pattern_and_matrix(&sigma, &arranged),
            ))
        }

        Command::Good { pattern } => {
            let sigma = in_file(&pattern, text::parse_pattern(&read(&pattern)?))?;
            let bad = bad_windows(&sigma);
            let Some(&(i, j)) = bad.first() else {
                return Ok(Report::new(AFFIRMATIVE, "good\n"));
            };
            let mut out = String::from("not-good\n");
            for (i, j) in &bad {
                writeln!(out, "bad-window={},{}", i + 1, j + 1).unwrap();
            }
            let witness = violating_witness(&sigma, i, j)?;
            write!(out, "\n{witness}\n").unwrap();
            Ok(Report::new(NEGATIVE, out))
        }

        Command::Census {
            rows,
            cols,
            emit_limit,
            orbits,
            max_cells,
        } => {
            let opts = CensusOptions {
                emit_limit,
                orbits,
                max_cells,
                ..Default::default()
            };
            let census = enumerate_good_with(rows, cols, &opts)?;
            Ok(Report::new(AFFIRMATIVE, format!("{census}\n")))
        }

        Command::Decide {
            matrix,
            budget,
            brute_force,
        } => {
            let a = read_matrix(&matrix)?;
            let outcome = decide_permutable(&a, budget);
            let mut out = format!("{outcome}\n");
            if brute_force {
                let oracle = brute_force_permutable_with(&a, 9)?;
                let agree = matches!(outcome.status, PermuteStatus::Permutable(_))
                    == oracle.is_some()
                    || outcome.status == PermuteStatus::Unknown;
                writeln!(
                    out,
                    "brute-force={}",
                    if oracle.is_some() {
                        "permutable"
                    } else {
                        "not-permutable"
                    }
                )
                .unwrap();
                if !agree {
                    return Err(Failure {
                        code: INPUT_ERROR,
                        message: "search and brute force disagree".into(),
                    });
                }
            }
            Ok(Report::new(outcome_code(&outcome.status), out))
        }

        Command::Refute {
            cover_set,
            max_value,
        } => {
            let set = read_cover_set(&cover_set)?;
            Ok(match refute_cover(&set, max_value) {
                None => Report::new(AFFIRMATIVE, format!("no-witness max-value={max_value}\n")),
                Some(w) => {
                    let a = w.to_matrix(set.rows(), set.cols())?;
                    Report::new(NEGATIVE, format!("refuted\n{a}\n"))
                }
            })
        }

        Command::CoverTest {
            cover_set,
            trials,
            seed,
            range,
        } => {
            let set = read_cover_set(&cover_set)?;
            if range < 0 {
                return Err(Failure {
                    code: INPUT_ERROR,
                    message: "--range must be nonnegative".into(),
                });
            }
            let report = supmod::search::random_cover_test_with(
                &set,
                trials,
                seed,
                -range..=range,
                Exec::default(),
            );
            let code = if report.failures == 0 {
                AFFIRMATIVE
            } else {
                NEGATIVE
            };
            Ok(Report::new(code, format!("{report}\n")))
        }

        Command::Greedy { instance, verify } => {
            let (utility, supply, demand) =
                in_file(&instance, text::parse_instance(&read(&instance)?))?;
            let inst = in_file(&instance, TransportInstance::new(utility, supply, demand))?;
            if !is_supmodular_full(inst.utility()) {
                eprintln!("warning: utility is not supmodular; the greedy plan may be suboptimal");
            }
            let plan = greedy_transport(&inst);
            let mut out = format!("{plan}\n");
            if verify {
                let best = brute_force_transport(&inst)?;
                writeln!(out, "optimum={}", best.value).unwrap();
                if best.value != plan.value {
                    return Ok(Report::new(NEGATIVE, out));
                }
            }
            Ok(Report::new(AFFIRMATIVE, out))
        }

        Command::Assign {
            prices,
            rows,
            cols,
            budget,
        } => {
            let prices = in_file(&prices, text::parse_scalars(&read(&prices)?))?;
            Ok(
                match preprocess_transporters(&prices, rows, cols, budget)? {
                    AssignmentOutcome::Assigned(a) => {
                        let cells: Vec<String> = a
                            .transporter_of_cell()
                            .iter()
                            .map(|k| (k + 1).to_string())
                            .collect();
                        let mut out = pattern_and_matrix(&a.pattern, &a.utility);
                        writeln!(out, "\ntransporters={}", cells.join(" ")).unwrap();
                        Report::new(AFFIRMATIVE, out)
                    }
                    AssignmentOutcome::NotPermutable => Report::new(NEGATIVE, "not-permutable\n"),
                    AssignmentOutcome::BudgetExhausted => Report::new(EXHAUSTED, "unknown\n"),
                },
            )
        }

        Command::Serve {
            prices,
            requests,
            rows,
            cols,
            bound,
            budget,
        } => {
            let prices = in_file(&prices, text::parse_scalars(&read(&prices)?))?;
            let assignment = match preprocess_transporters(&prices, rows, cols, budget)? {
                AssignmentOutcome::Assigned(a) => a,
                AssignmentOutcome::NotPermutable => {
                    return Ok(Report::new(NEGATIVE, "not-permutable\n"))
                }
                AssignmentOutcome::BudgetExhausted => {
                    return Ok(Report::new(EXHAUSTED, "unknown\n"))
                }
            };
            let text = read(&requests)?;
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| (i + 1, l))
                .collect();
            let parsed: Vec<supmod::Result<(Vec<u64>, Vec<u64>)>> = lines
                .iter()
                .map(|&(n, l)| text::parse_request(l, n))
                .collect();
            let valid: Vec<(Vec<u64>, Vec<u64>)> =
                parsed.iter().filter_map(|r| r.clone().ok()).collect();
            let mut served = serve_stream(&assignment, valid, bound).into_iter();
            let mut out = String::new();
            let mut rejected = false;
            for (k, request) in parsed.into_iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                match request.and_then(|_| served.next().expect("one result per valid request")) {
                    Ok(plan) => writeln!(out, "{plan}").unwrap(),
                    Err(e) => {
                        rejected = true;
                        writeln!(out, "error: line {}: {e}", lines[k].0).unwrap();
                    }
                }
            }
            Ok(Report::new(
                if rejected { INPUT_ERROR } else { AFFIRMATIVE },
                out,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.out);
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
