//! Spotting matrices that present the cube condition.

use std::collections::HashSet;

use mcheck_core::families::lex_tuples;
use mcheck_core::ExtendedMatrix;

/// Returns `n` when `matrix` is `Cube_{n,k}` up to column order and a swap
/// of `y_i` with `x_1` inside each row `i`. `Mal` is recognised as
/// `Cube_{2,2}`.
pub fn cube_arity(matrix: &ExtendedMatrix) -> Option<usize> {
    let simple = matrix.as_simple()?;
    let (n, k) = (simple.n(), simple.k());
    if n < 2 || k < 2 {
        return None;
    }
    let expected = (k as u64).checked_pow(n as u32)? - 1;
    if simple.m() as u64 != expected {
        return None;
    }
    let swapped: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let y = simple.y(i).index();
            simple
                .left_row(i)
                .iter()
                .map(|v| match v.index() {
                    1 => y,
                    x if x == y => 1,
                    x => x,
                })
                .collect()
        })
        .collect();
    let columns: HashSet<Vec<u32>> = (0..simple.m())
        .map(|j| swapped.iter().map(|row| row[j]).collect())
        .collect();
    if columns.len() != simple.m() {
        return None;
    }
    let all_x1 = vec![1; n];
    lex_tuples(n, k)
        .filter(|t| *t != all_x1)
        .all(|t| columns.contains(&t))
        .then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcheck_core::families::{family, Family};
    use mcheck_core::parse_matrix;

    #[test]
    fn families() {
        let arity = |f| cube_arity(&family(f).unwrap());
        assert_eq!(arity(Family::Mal), Some(2));
        assert_eq!(arity(Family::Perm { r: 2 }), Some(2));
        assert_eq!(arity(Family::Cube { n: 3, k: 2 }), Some(3));
        assert_eq!(arity(Family::Cube { n: 2, k: 3 }), Some(2));
        assert_eq!(arity(Family::Ari), None);
        assert_eq!(arity(Family::Maj), None);
        assert_eq!(arity(Family::Edge { n: 3 }), None);
        assert_eq!(arity(Family::Perm { r: 3 }), None);
    }

    #[test]
    fn reordered_columns() {
        let m = parse_matrix("x2 x1 x2 | x1\nx1 x1 x2 | x2\n").unwrap();
        assert_eq!(cube_arity(&m), Some(2));
        let dup = parse_matrix("x2 x2 x1 | x1\nx1 x1 x2 | x2\n").unwrap();
        assert_eq!(cube_arity(&dup), None);
    }
}
