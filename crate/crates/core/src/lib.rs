//! Supmodular (anti-Monge) rearrangements of exact matrices.
//!
//! A matrix `A` is supmodular when `A[i][j] + A[r][s] >= A[i][s] + A[r][j]`
//! for every `i < r` and `j < s`. This crate answers the question of which
//! matrices can have their entries rearranged into a supmodular matrix:
//!
//! * [`matrix`] holds exact scalars, matrices and rank patterns, and builds
//!   `A^σ`, the rearrangement of `A` whose `k`-th smallest entry lands on the
//!   cell holding rank `k` in the pattern `σ`.
//! * [`supmodular`] tests supmodularity through adjacent 2×2 windows and
//!   through the full definition, with violation certificates.
//! * [`goodness`] decides when a pattern makes *every* matrix supmodular,
//!   constructs counterexamples and enumerates all such patterns.
//! * [`search`] decides permutability of a concrete matrix and probes
//!   covering sets of patterns.
//! * [`transport`] runs the greedy transportation algorithm over supmodular
//!   utilities and the transporter assignment pipeline built on top of it.
//!
//! Row and column indices in the Rust API are 0-based. Everything rendered
//! as text (certificates, error messages, pattern ranks) is 1-based.

pub mod error;
pub mod exec;
pub mod goodness;
pub mod matrix;
pub mod search;
pub mod supmodular;
pub mod text;
pub mod transport;

pub use error::{Error, Result};
pub use exec::Exec;
pub use goodness::{
    cover_pair_3x4, enumerate_good, enumerate_good_with, is_good_everywhere, is_good_on,
    universal_pattern, violating_witness, CensusOptions, GoodCensus, WindowRoles,
};
pub use matrix::{apply_permutation, sort_entries, Matrix, PermPattern, Scalar, SortedEntries};
pub use search::{
    brute_force_permutable, decide_permutable, permute_3x4, random_cover_test, refute_cover,
    CoverReport, CoverSet, PermuteOutcome, PermuteStatus,
};
pub use supmodular::{find_violation, is_supmodular_adjacent, is_supmodular_full, ViolationCert};
pub use transport::{
    brute_force_transport, greedy_transport, preprocess_transporters, serve_stream,
    AssignmentOutcome, TransportInstance, TransportPlan, TransporterAssignment,
};
