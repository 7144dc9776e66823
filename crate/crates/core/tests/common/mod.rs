#![allow(dead_code)]

use std::collections::BTreeSet;

use mcheck_core::SimpleMatrix;
use proptest::prelude::*;

pub fn simple_matrix(nmax: usize, mmax: usize, kmax: u32) -> impl Strategy<Value = SimpleMatrix> {
    (1..=nmax, 0..=mmax, 1..=kmax).prop_flat_map(|(n, m, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(1..=k, m), n),
            proptest::collection::vec(1..=k, n),
        )
            .prop_map(move |(left, right)| SimpleMatrix::from_rows(left, right, k).unwrap())
    })
}

pub fn grid(m: &SimpleMatrix) -> (Vec<Vec<u32>>, Vec<u32>) {
    let left = m
        .left_rows()
        .iter()
        .map(|r| r.iter().map(|v| v.index()).collect())
        .collect();
    let right = m.right().iter().map(|v| v.index()).collect();
    (left, right)
}

/// Row-cover condition checked over all ordered row tuples.
pub fn naive_cover_holds(m: &SimpleMatrix, n_prime: usize) -> bool {
    let (left, right) = grid(m);
    let n = left.len();
    let total = n.pow(n_prime as u32);
    (0..total).any(|mut code| {
        let mut rows = Vec::with_capacity(n_prime);
        for _ in 0..n_prime {
            rows.push(code % n);
            code /= n;
        }
        !(0..m.m()).any(|j| rows.iter().all(|&i| left[i][j] == right[i]))
    })
}

/// Closure of the left columns of `m2` under all stacked interpretations of
/// rows of `m1`, by exhaustive enumeration over full interpretations.
pub fn naive_closure(m1: &SimpleMatrix, m2: &SimpleMatrix) -> BTreeSet<Vec<u32>> {
    let (l1, r1) = grid(m1);
    let (l2, _) = grid(m2);
    let n2 = m2.n();
    let k1 = m1.k() as usize;
    let k2 = m2.k() as usize;
    let mut set: BTreeSet<Vec<u32>> = (0..m2.m()).map(|j| l2.iter().map(|r| r[j]).collect()).collect();

    let interps: Vec<Vec<u32>> = (0..k2.pow(k1 as u32))
        .map(|mut code| {
            let mut f = vec![0; k1];
            for slot in f.iter_mut() {
                *slot = (code % k2) as u32 + 1;
                code /= k2;
            }
            f
        })
        .collect();
    let per_row: Vec<(usize, &Vec<u32>)> = (0..m1.n()).flat_map(|i| interps.iter().map(move |f| (i, f))).collect();
    let combos = per_row.len().pow(n2 as u32);
    loop {
        let mut added = false;
        for mut code in 0..combos {
            let mut choice = Vec::with_capacity(n2);
            for _ in 0..n2 {
                choice.push(per_row[code % per_row.len()]);
                code /= per_row.len();
            }
            let right: Vec<u32> = choice.iter().map(|(i, f)| f[r1[*i] as usize - 1]).collect();
            if set.contains(&right) {
                continue;
            }
            let lefts_ok = (0..m1.m()).all(|j| {
                let col: Vec<u32> = choice.iter().map(|(i, f)| f[l1[*i][j] as usize - 1]).collect();
                set.contains(&col)
            });
            if lefts_ok {
                set.insert(right);
                added = true;
            }
        }
        if !added {
            return set;
        }
    }
}

/// Applies a row permutation, a left-column permutation and a variable
/// bijection.
pub fn transform(m: &SimpleMatrix, rows: &[usize], cols: &[usize], rename: &[u32]) -> SimpleMatrix {
    let (left, right) = grid(m);
    let new_left = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| rename[left[i][j] as usize - 1]).collect())
        .collect();
    let new_right = rows.iter().map(|&i| rename[right[i] as usize - 1]).collect();
    SimpleMatrix::from_rows(new_left, new_right, m.k()).unwrap()
}

pub fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}
