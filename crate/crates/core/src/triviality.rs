//! Triviality of simple matrices.
//!
//! A simple matrix is non-trivial exactly when for every pair of rows
//! `(i, i')` there are left columns `j, j'` with `x_ij = y_i`,
//! `x_i'j' = y_i'` and `j` related to `j'` by the join of the row kernels of
//! `i` and `i'`. A matrix without left columns is trivial.

use serde::Serialize;

use crate::error::MatrixError;
use crate::matrix::SimpleMatrix;
use crate::partition::Partition;

/// Kernel of the left part of row `i`: columns are related when their
/// entries in that row coincide.
pub fn row_kernel(matrix: &SimpleMatrix, i: usize) -> Result<Partition, MatrixError> {
    if matrix.m() == 0 {
        return Err(MatrixError::NoLeftColumns);
    }
    if i >= matrix.n() {
        return Err(MatrixError::RowOutOfRange { row: i, n: matrix.n() });
    }
    Ok(Partition::kernel(matrix.left_row(i)))
}

/// Witness entry for one pair of rows (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub rows: [usize; 2],
    pub columns: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum TrivialityWitness {
    /// `m = 0`.
    EmptyLeft,
    /// A pair of rows (1-based) admitting no witnessing columns.
    Pair { rows: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "witness", rename_all = "snake_case")]
pub enum Triviality {
    Trivial(TrivialityWitness),
    /// One entry per unordered pair `i <= i'`, in lexicographic order.
    NonTrivial(Vec<PairWitness>),
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial(_))
    }
}

pub fn is_trivial(matrix: &SimpleMatrix) -> Triviality {
    if matrix.m() == 0 {
        return Triviality::Trivial(TrivialityWitness::EmptyLeft);
    }
    let kernels: Vec<Partition> = (0..matrix.n()).map(|i| Partition::kernel(matrix.left_row(i))).collect();
    let hits: Vec<Vec<usize>> = (0..matrix.n())
        .map(|i| {
            let y = matrix.y(i);
            (0..matrix.m()).filter(|&j| matrix.left_row(i)[j] == y).collect()
        })
        .collect();

    let mut table = Vec::new();
    for i in 0..matrix.n() {
        for i2 in i..matrix.n() {
            let joined = kernels[i].join(&kernels[i2]).expect("row kernels share the column set");
            let found = hits[i]
                .iter()
                .find_map(|&j| hits[i2].iter().find(|&&j2| joined.related(j, j2)).map(|&j2| (j, j2)));
            match found {
                Some((j, j2)) => table.push(PairWitness {
                    rows: [i + 1, i2 + 1],
                    columns: [j + 1, j2 + 1],
                }),
                None => {
                    return Triviality::Trivial(TrivialityWitness::Pair { rows: [i + 1, i2 + 1] });
                }
            }
        }
    }
    Triviality::NonTrivial(table)
}

/// Re-checks a verdict against the matrix without reusing [`is_trivial`].
pub fn check_triviality(matrix: &SimpleMatrix, verdict: &Triviality) -> bool {
    let pair_ok = |i: usize, i2: usize, j: usize, j2: usize| {
        let row = matrix.left_row(i);
        let row2 = matrix.left_row(i2);
        if row[j] != matrix.y(i) || row2[j2] != matrix.y(i2) {
            return false;
        }
        Partition::kernel(row)
            .join(&Partition::kernel(row2))
            .map(|p| p.related(j, j2))
            .unwrap_or(false)
    };
    match verdict {
        Triviality::Trivial(TrivialityWitness::EmptyLeft) => matrix.m() == 0,
        Triviality::Trivial(TrivialityWitness::Pair { rows: [a, b] }) => {
            let (i, i2) = (a - 1, b - 1);
            if i >= matrix.n() || i2 >= matrix.n() {
                return false;
            }
            !(0..matrix.m()).any(|j| (0..matrix.m()).any(|j2| pair_ok(i, i2, j, j2)))
        }
        Triviality::NonTrivial(table) => {
            let n = matrix.n();
            if matrix.m() == 0 || table.len() != n * (n + 1) / 2 {
                return false;
            }
            let mut expected = (0..n).flat_map(|i| (i..n).map(move |i2| [i + 1, i2 + 1]));
            table.iter().all(|w| {
                expected.next() == Some(w.rows)
                    && w.columns.iter().all(|&c| c >= 1 && c <= matrix.m())
                    && pair_ok(w.rows[0] - 1, w.rows[1] - 1, w.columns[0] - 1, w.columns[1] - 1)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family, Family};

    fn simple(f: Family) -> SimpleMatrix {
        family(f).unwrap().as_simple().unwrap()
    }

    #[test]
    fn kernels_of_named_rows() {
        let mal = simple(Family::Mal);
        assert_eq!(row_kernel(&mal, 0).unwrap().blocks(), vec![vec![0], vec![1, 2]]);
        let ari = simple(Family::Ari);
        assert_eq!(row_kernel(&ari, 2).unwrap().blocks(), vec![vec![0, 2], vec![1]]);
        let constant = SimpleMatrix::from_rows(vec![vec![2, 2, 2]], vec![1], 2).unwrap();
        assert_eq!(row_kernel(&constant, 0).unwrap().block_count(), 1);
        assert!(row_kernel(&mal, 2).is_err());
        let empty = SimpleMatrix::from_rows(vec![vec![]], vec![1], 1).unwrap();
        assert_eq!(row_kernel(&empty, 0), Err(MatrixError::NoLeftColumns));
    }

    #[test]
    fn mal_is_non_trivial() {
        let mal = simple(Family::Mal);
        let verdict = is_trivial(&mal);
        assert!(!verdict.is_trivial());
        let Triviality::NonTrivial(table) = &verdict else {
            unreachable!()
        };
        assert_eq!(table.len(), 3);
        assert_eq!(
            table[1],
            PairWitness {
                rows: [1, 2],
                columns: [1, 3]
            }
        );
        assert!(check_triviality(&mal, &verdict));
    }

    #[test]
    fn missing_right_entry_is_trivial() {
        let m = SimpleMatrix::from_rows(vec![vec![1, 1]], vec![2], 2).unwrap();
        let verdict = is_trivial(&m);
        assert_eq!(verdict, Triviality::Trivial(TrivialityWitness::Pair { rows: [1, 1] }));
        assert!(check_triviality(&m, &verdict));
    }

    #[test]
    fn empty_left_is_trivial() {
        let m = SimpleMatrix::from_rows(vec![vec![]], vec![1], 1).unwrap();
        assert_eq!(is_trivial(&m), Triviality::Trivial(TrivialityWitness::EmptyLeft));
    }

    #[test]
    fn trivial_by_unrelated_columns() {
        // rows x1 x2 | x1 and x1 x2 | x2: the witnessing columns 1 and 2 are
        // never identified by either kernel
        let m = SimpleMatrix::from_rows(vec![vec![1, 2], vec![1, 2]], vec![1, 2], 2).unwrap();
        let verdict = is_trivial(&m);
        assert_eq!(verdict, Triviality::Trivial(TrivialityWitness::Pair { rows: [1, 2] }));
        assert!(check_triviality(&m, &verdict));
    }

    #[test]
    fn families_are_non_trivial() {
        let mut fams = vec![Family::Mal, Family::Perm { r: 2 }, Family::Ari, Family::Maj];
        for n in 2..=3 {
            for k in 2..=3 {
                fams.push(Family::Cube { n, k });
            }
        }
        for n in 2..=4 {
            fams.push(Family::Edge { n });
        }
        for f in fams {
            let m = simple(f);
            let verdict = is_trivial(&m);
            assert!(!verdict.is_trivial(), "{f}");
            assert!(check_triviality(&m, &verdict));
        }
    }
}
