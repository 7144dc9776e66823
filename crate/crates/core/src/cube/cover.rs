//! Row-cover test for `M => Cube_n'` on simple matrices.
//!
//! `M` implies the `n'`-cube condition iff some `n'` rows `i_1..i_n'`
//! (repetition allowed) admit no column `j` with `x_{i_a j} = y_{i_a}` for
//! every `a`. The sets `S_j = { i : x_ij = y_i }` are computed once, using
//! `n * m` element comparisons; the row tuples are then checked against
//! them. Only the set of rows in a tuple matters, so tuples are enumerated
//! as non-decreasing sequences in lexicographic order.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cube::boolean::{decode, encode, BooleanOperation, MAX_ARITY};
use crate::error::AlgebraError;
use crate::matrix::SimpleMatrix;
use crate::Outcome;

/// Rows (1-based) with no common witnessing column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowWitness {
    pub rows: Vec<usize>,
}

/// A row tuple (1-based) and a column (1-based) covering it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverEntry {
    pub rows: Vec<usize>,
    pub column: usize,
}

/// Serializes as `{"rows":[..]}` or `{"cover":[..]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverWitness {
    Rows(RowWitness),
    Cover(Vec<CoverEntry>),
}

impl Serialize for CoverWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CoverWitness::Rows(w) => w.serialize(serializer),
            CoverWitness::Cover(table) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("cover", table)?;
                map.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeVerdict {
    pub outcome: Outcome,
    pub n_prime: usize,
    pub witness: CoverWitness,
    /// Comparisons between matrix entries.
    pub element_comparisons: u64,
    /// Tests of a row tuple against one column.
    pub column_checks: u64,
}

impl CubeVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

/// Decides `M => Cube_n'`.
///
/// # Panics
/// Panics if `n_prime < 2`.
pub fn implies_cube_simple(matrix: &SimpleMatrix, n_prime: usize) -> CubeVerdict {
    assert!(n_prime >= 2, "the cube condition needs n' >= 2");
    let n = matrix.n();
    let m = matrix.m();
    let mut element_comparisons = 0u64;
    let covers: Vec<Vec<bool>> = (0..m)
        .map(|j| {
            (0..n)
                .map(|i| {
                    element_comparisons += 1;
                    matrix.left_row(i)[j] == matrix.y(i)
                })
                .collect()
        })
        .collect();

    let mut column_checks = 0u64;
    let mut table = Vec::new();
    let mut tuple = vec![0usize; n_prime];
    loop {
        let covering = (0..m).find(|&j| {
            column_checks += 1;
            tuple.iter().all(|&i| covers[j][i])
        });
        let rows: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
        match covering {
            None => {
                return CubeVerdict {
                    outcome: Outcome::Holds,
                    n_prime,
                    witness: CoverWitness::Rows(RowWitness { rows }),
                    element_comparisons,
                    column_checks,
                };
            }
            Some(j) => table.push(CoverEntry { rows, column: j + 1 }),
        }
        if !next_multiset(&mut tuple, n) {
            break;
        }
    }
    CubeVerdict {
        outcome: Outcome::Fails,
        n_prime,
        witness: CoverWitness::Cover(table),
        element_comparisons,
        column_checks,
    }
}

/// Next non-decreasing tuple over `0..n`.
fn next_multiset(tuple: &mut [usize], n: usize) -> bool {
    for pos in (0..tuple.len()).rev() {
        if tuple[pos] + 1 < n {
            let v = tuple[pos] + 1;
            for slot in &mut tuple[pos..] {
                *slot = v;
            }
            return true;
        }
    }
    false
}

/// Number of element comparisons the cover test performs on `M`.
pub fn comparison_count(matrix: &SimpleMatrix, n_prime: usize) -> u64 {
    implies_cube_simple(matrix, n_prime).element_comparisons
}

/// Re-checks a cover verdict directly against the matrix entries.
pub fn check_cube_verdict(matrix: &SimpleMatrix, verdict: &CubeVerdict) -> Result<(), String> {
    let in_range = |rows: &[usize]| rows.len() == verdict.n_prime && rows.iter().all(|&i| i >= 1 && i <= matrix.n());
    let covered_by = |rows: &[usize], j: usize| rows.iter().all(|&i| matrix.left_row(i - 1)[j] == matrix.y(i - 1));
    match (&verdict.outcome, &verdict.witness) {
        (Outcome::Holds, CoverWitness::Rows(w)) => {
            if !in_range(&w.rows) {
                return Err("row witness has the wrong shape".into());
            }
            match (0..matrix.m()).find(|&j| covered_by(&w.rows, j)) {
                Some(j) => Err(format!("column {} covers the row witness", j + 1)),
                None => Ok(()),
            }
        }
        (Outcome::Fails, CoverWitness::Cover(table)) => {
            let mut expected = vec![0usize; verdict.n_prime];
            let mut entries = table.iter();
            loop {
                let rows: Vec<usize> = expected.iter().map(|i| i + 1).collect();
                let Some(entry) = entries.next() else {
                    return Err(format!("cover table misses rows {rows:?}"));
                };
                if entry.rows != rows || entry.column == 0 || entry.column > matrix.m() {
                    return Err(format!("bad cover entry for rows {rows:?}"));
                }
                if !covered_by(&rows, entry.column - 1) {
                    return Err(format!("column {} does not cover rows {rows:?}", entry.column));
                }
                if !next_multiset(&mut expected, matrix.n()) {
                    break;
                }
            }
            if entries.next().is_some() {
                return Err("cover table has extra entries".into());
            }
            Ok(())
        }
        _ => Err("witness kind does not match the outcome".into()),
    }
}

/// The operation `p` with `p(b) = 0` iff `b = (f(x_i1),..,f(x_im))` for some
/// row `i` and some `f: {x_1..x_k} -> {0,1}` with `f(y_i) = 0`.
///
/// When the row-cover test fails, `({0,1}, p)` is a model of the matrix's
/// presentation whose `n'`-th power preserves `R_n'`.
pub fn build_counterexample_algebra(matrix: &SimpleMatrix, n_prime: usize) -> Result<BooleanOperation, AlgebraError> {
    if implies_cube_simple(matrix, n_prime).holds() {
        return Err(AlgebraError::ImplicationHolds);
    }
    let m = matrix.m();
    let k = matrix.k() as usize;
    if m > MAX_ARITY {
        return Err(AlgebraError::TooLarge {
            arity: m,
            max: MAX_ARITY,
        });
    }
    if k > MAX_ARITY {
        return Err(AlgebraError::TooLarge {
            arity: k,
            max: MAX_ARITY,
        });
    }
    let mut table = vec![true; 1 << m];
    for code in 0..1usize << k {
        let f = decode(code, k);
        for i in 0..matrix.n() {
            if !f[matrix.y(i).slot()] {
                let b: Vec<bool> = matrix.left_row(i).iter().map(|v| f[v.slot()]).collect();
                table[encode(&b)] = false;
            }
        }
    }
    BooleanOperation::from_bools(m, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::boolean::{
        algebra_satisfies, preserves, preserves_direct, CubeRelation, NamedOperation, TwoElementAlgebra,
    };
    use crate::families::{family, Family};
    use crate::presentation::presentation;

    fn simple(f: Family) -> SimpleMatrix {
        family(f).unwrap().as_simple().unwrap()
    }

    fn decide(f: Family, n_prime: usize) -> CubeVerdict {
        let m = simple(f);
        let v = implies_cube_simple(&m, n_prime);
        check_cube_verdict(&m, &v).unwrap();
        v
    }

    #[test]
    fn mal_implies_cube_2() {
        let v = decide(Family::Mal, 2);
        assert!(v.holds());
        assert_eq!(v.witness, CoverWitness::Rows(RowWitness { rows: vec![1, 2] }));
        assert!(v.element_comparisons <= 2 * 3 * 4);
    }

    #[test]
    fn maj_fails_for_pairs() {
        let v = decide(Family::Maj, 2);
        assert!(!v.holds());
        let CoverWitness::Cover(table) = &v.witness else {
            panic!()
        };
        let col = |rows: &[usize]| table.iter().find(|e| e.rows == rows).unwrap().column;
        assert_eq!(col(&[1, 2]), 1);
        assert_eq!(col(&[1, 3]), 2);
        assert_eq!(col(&[2, 3]), 3);
        assert_eq!(table.len(), 6);
    }

    #[test]
    fn maj_implies_cube_3() {
        let v = decide(Family::Maj, 3);
        assert_eq!(v.witness, CoverWitness::Rows(RowWitness { rows: vec![1, 2, 3] }));
        assert!(v.element_comparisons <= 3 * 3 * 27);
    }

    #[test]
    fn ari_implies_cube_2() {
        let v = decide(Family::Ari, 2);
        assert_eq!(v.witness, CoverWitness::Rows(RowWitness { rows: vec![1, 2] }));
    }

    #[test]
    fn empty_left_part_holds_without_comparisons() {
        let m = SimpleMatrix::from_rows(vec![vec![], vec![]], vec![1, 1], 1).unwrap();
        for n_prime in 2..=4 {
            let v = implies_cube_simple(&m, n_prime);
            assert!(v.holds());
            assert_eq!(comparison_count(&m, n_prime), 0);
        }
    }

    #[test]
    fn majority_is_the_maj_counterexample() {
        let maj = simple(Family::Maj);
        let p = build_counterexample_algebra(&maj, 2).unwrap();
        let zeros: Vec<usize> = p.zeros().collect();
        assert_eq!(zeros, vec![0b000, 0b001, 0b010, 0b100]);
        let r2 = CubeRelation::new(2);
        assert!(preserves(&p, &r2));
        assert!(preserves_direct(&p, &r2));
        let algebra = TwoElementAlgebra::new(vec![NamedOperation {
            symbol: "p".into(),
            op: p,
        }]);
        assert_eq!(algebra_satisfies(&algebra, &presentation(&maj)), Ok(true));
    }

    #[test]
    fn maj_counterexample_squares_into_r2() {
        // all 27 triples of members of R_2
        let p = build_counterexample_algebra(&simple(Family::Maj), 2).unwrap();
        let r2 = CubeRelation::new(2);
        let members = r2.members();
        for a in &members {
            for b in &members {
                for c in &members {
                    let image: Vec<bool> = (0..2).map(|row| p.eval(&[a[row], b[row], c[row]])).collect();
                    assert!(r2.contains(&image));
                }
            }
        }
    }

    #[test]
    fn counterexample_refused_when_implication_holds() {
        assert_eq!(
            build_counterexample_algebra(&simple(Family::Mal), 2),
            Err(AlgebraError::ImplicationHolds)
        );
    }

    #[test]
    fn column_witness_everywhere_gives_projection() {
        // column 2 has x_i2 = y_i in every row
        let m = SimpleMatrix::from_rows(vec![vec![2, 1, 2], vec![1, 2, 2]], vec![1, 2], 2).unwrap();
        let p = build_counterexample_algebra(&m, 3).unwrap();
        let projection = BooleanOperation::from_fn(3, |b| b[1]).unwrap();
        let eqs = presentation(&m);
        for op in [p, projection] {
            let algebra = TwoElementAlgebra::new(vec![NamedOperation { symbol: "p".into(), op }]);
            assert_eq!(algebra_satisfies(&algebra, &eqs), Ok(true));
        }
    }

    #[test]
    fn tampered_witnesses_rejected() {
        let maj = simple(Family::Maj);
        let mut v = implies_cube_simple(&maj, 2);
        if let CoverWitness::Cover(table) = &mut v.witness {
            table[1].column = 3;
        }
        assert!(check_cube_verdict(&maj, &v).is_err());
        let mal = simple(Family::Mal);
        let mut v = implies_cube_simple(&mal, 2);
        v.witness = CoverWitness::Rows(RowWitness { rows: vec![1, 1] });
        assert!(check_cube_verdict(&mal, &v).is_err());
    }
}
