//! Supmodularity tests.
//!
//! [`is_supmodular_adjacent`] only looks at the `(m-1)(n-1)` windows made of
//! consecutive rows and columns; the inequality telescopes over any larger
//! rectangle, so this is equivalent to [`is_supmodular_full`], which checks
//! every `i < r`, `j < s` directly.

use std::fmt;

use crate::matrix::{Matrix, Scalar};

/// Failure of `A[i][j] + A[r][s] >= A[i][s] + A[r][j]`.
///
/// Indices are 0-based; `Display` renders them 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViolationCert {
    pub i: usize,
    pub r: usize,
    pub j: usize,
    pub s: usize,
    /// `(A[i][s] + A[r][j]) - (A[i][j] + A[r][s])`, strictly positive.
    pub deficit: Scalar,
}

impl fmt::Display for ViolationCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "violation rows={},{} cols={},{} deficit={}",
            self.i + 1,
            self.r + 1,
            self.j + 1,
            self.s + 1,
            self.deficit
        )
    }
}

/// `(A[i][j] + A[r][s]) - (A[i][s] + A[r][j])`.
pub fn rectangle_margin(a: &Matrix, i: usize, r: usize, j: usize, s: usize) -> Scalar {
    (a.get(i, j) + a.get(r, s)) - (a.get(i, s) + a.get(r, j))
}

fn holds(a: &Matrix, i: usize, r: usize, j: usize, s: usize) -> bool {
    a.get(i, j) + a.get(r, s) >= a.get(i, s) + a.get(r, j)
}

pub fn is_supmodular_adjacent(a: &Matrix) -> bool {
    (0..a.rows().saturating_sub(1))
        .all(|i| (0..a.cols().saturating_sub(1)).all(|j| holds(a, i, i + 1, j, j + 1)))
}

/// First failing adjacent window `(i, j)` in row-major order.
pub fn first_bad_window(a: &Matrix) -> Option<(usize, usize)> {
    (0..a.rows().saturating_sub(1))
        .flat_map(|i| (0..a.cols().saturating_sub(1)).map(move |j| (i, j)))
        .find(|&(i, j)| !holds(a, i, i + 1, j, j + 1))
}

pub fn is_supmodular_full(a: &Matrix) -> bool {
    find_violation(a).is_none()
}

/// Lexicographically first `(i, j, r, s)` violating the definition.
pub fn find_violation(a: &Matrix) -> Option<ViolationCert> {
    let (m, n) = (a.rows(), a.cols());
    for i in 0..m {
        for j in 0..n {
            for r in i + 1..m {
                for s in j + 1..n {
                    let margin = rectangle_margin(a, i, r, j, s);
                    if margin.is_negative() {
                        return Some(ViolationCert {
                            i,
                            r,
                            j,
                            s,
                            deficit: -margin,
                        });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m<const C: usize>(rows: &[[i32; C]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn worked_example_is_supmodular() {
        let a = m(&[[10, 8, 1], [3, 6, 3], [1, 7, 10]]);
        assert!(is_supmodular_adjacent(&a));
        assert!(is_supmodular_full(&a));
        assert_eq!(find_violation(&a), None);
    }

    #[test]
    fn single_row_and_constant() {
        assert!(is_supmodular_adjacent(&m(&[[5, -3, 9, 0]])));
        assert!(is_supmodular_full(&m(&[[5, -3, 9, 0]])));
        assert!(is_supmodular_full(&m(&[[5, 5], [5, 5], [5, 5]])));
        assert!(is_supmodular_full(&m(&[[1], [7], [-2]])));
    }

    #[test]
    fn antidiagonal_heavy() {
        let a = m(&[[0, 1], [1, 0]]);
        assert!(!is_supmodular_adjacent(&a));
        assert_eq!(
            find_violation(&a),
            Some(ViolationCert {
                i: 0,
                r: 1,
                j: 0,
                s: 1,
                deficit: Scalar::from(2)
            })
        );
        assert_eq!(
            find_violation(&a).unwrap().to_string(),
            "violation rows=1,2 cols=1,2 deficit=2"
        );
    }

    #[test]
    fn corner_violation() {
        let a = m(&[[0, 0, 1], [0, 0, 0], [1, 0, 0]]);
        assert!(!is_supmodular_full(&a));
        assert!(!is_supmodular_adjacent(&a));
        // the corner rectangle fails by 2, but (i, j, r, s) = (0, 0, 1, 2)
        // comes first lexicographically and fails by 1
        assert_eq!(rectangle_margin(&a, 0, 2, 0, 2), Scalar::from(-2));
        let cert = find_violation(&a).unwrap();
        assert_eq!((cert.i, cert.j, cert.r, cert.s), (0, 0, 1, 2));
        assert_eq!(cert.deficit, Scalar::from(1));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-5i64..=5, r * c).prop_map(move |v| {
                Matrix::new(r, c, v.into_iter().map(Scalar::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn adjacent_matches_full(a in small_matrix()) {
            prop_assert_eq!(is_supmodular_adjacent(&a), is_supmodular_full(&a));
        }

        #[test]
        fn transpose_symmetry(a in small_matrix()) {
            prop_assert_eq!(is_supmodular_full(&a), is_supmodular_full(&a.transpose()));
        }

        #[test]
        fn certificates_are_valid(a in small_matrix()) {
            if let Some(c) = find_violation(&a) {
                prop_assert!(c.i < c.r && c.j < c.s);
                prop_assert!(c.deficit.is_positive());
                prop_assert_eq!(c.deficit, -rectangle_margin(&a, c.i, c.r, c.j, c.s));
            }
        }

        // exp(A) is 2-totally-positive iff A is supmodular. exp is strictly
        // increasing and turns sums into products, so the sign of each 2x2
        // minor of exp(A) is the sign of the corresponding exponent margin.
        #[test]
        fn two_total_positivity_sign(a in small_matrix()) {
            for i in 0..a.rows() {
                for r in i + 1..a.rows() {
                    for j in 0..a.cols() {
                        for s in j + 1..a.cols() {
                            let diag = a.get(i, j) + a.get(r, s);
                            let anti = a.get(i, s) + a.get(r, j);
                            let margin = rectangle_margin(&a, i, r, j, s);
                            prop_assert_eq!(diag.cmp(&anti), margin.signum());
                        }
                    }
                }
            }
            let minors_nonnegative = (0..a.rows()).all(|i| (i + 1..a.rows()).all(|r| {
                (0..a.cols()).all(|j| (j + 1..a.cols()).all(|s| {
                    a.get(i, j) + a.get(r, s) >= a.get(i, s) + a.get(r, j)
                }))
            }));
            prop_assert_eq!(minors_nonnegative, is_supmodular_adjacent(&a));
        }
    }
}
