//! Extended matrices of variables.
//!
//! An extended matrix has `n` rows, `m` left columns and `m'` right columns.
//! Left entries are drawn from `x_1..x_l` and right entries from `x_1..x_k`
//! with `k >= l`. A matrix is *simple* when `m' = 1` and `k = l`.
//!
//! Row and column arguments of the functions in this crate are 0-based.
//! Witness objects that are meant to be read next to a printed matrix
//! (row tuples, cover tables, derivation logs) use 1-based indices.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::MatrixError;

/// The variable `x_a`, stored by its 1-based index `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Variable(u32);

impl Variable {
    pub fn new(index: u32) -> Result<Self, MatrixError> {
        if index == 0 {
            return Err(MatrixError::ZeroIndex);
        }
        Ok(Variable(index))
    }

    /// # Panics
    /// Panics if `index` is zero.
    pub const fn x(index: u32) -> Self {
        assert!(index > 0, "variables are numbered from 1");
        Variable(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// Position of this variable in a 0-based value table.
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Unvalidated matrix data, as produced by a parser or a generator.
///
/// Any of the parameters may be omitted. `n`, `m` and `m'` are then read off
/// the grids; `l` and `k` are inferred only when the matrix satisfies the
/// shorthand convention (see [`validate`]).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawMatrix {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub m_prime: Option<usize>,
    pub l: Option<u32>,
    pub k: Option<u32>,
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
}

impl RawMatrix {
    pub fn new(left: Vec<Vec<u32>>, right: Vec<Vec<u32>>) -> Self {
        RawMatrix {
            left,
            right,
            ..Default::default()
        }
    }

    pub fn with_bounds(mut self, l: u32, k: u32) -> Self {
        self.l = Some(l);
        self.k = Some(k);
        self
    }
}

/// A validated extended matrix. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    m: usize,
    m_prime: usize,
    l: u32,
    k: u32,
    left: Vec<Vec<Variable>>,
    right: Vec<Vec<Variable>>,
}

/// Validates raw matrix data.
///
/// When `l` or `k` is missing it is inferred from the entries, which is only
/// allowed when all of the following hold: `m + m' > 0`, the left entries are
/// exactly `{x_1,..,x_l}`, and the left entries together with the right
/// entries are exactly `{x_1,..,x_k}`.
pub fn validate(raw: RawMatrix) -> Result<ExtendedMatrix, MatrixError> {
    let RawMatrix {
        n,
        m,
        m_prime,
        l,
        k,
        left,
        right,
    } = raw;

    let rows = left.len();
    if rows != right.len() {
        return Err(MatrixError::RowCountMismatch {
            left: rows,
            right: right.len(),
        });
    }
    if rows == 0 {
        return Err(MatrixError::NoRows);
    }
    check_declared("n", n, rows)?;

    let width = left[0].len();
    let right_width = right[0].len();
    for (i, (lrow, rrow)) in left.iter().zip(&right).enumerate() {
        if lrow.len() != width {
            return Err(MatrixError::Ragged {
                row: i + 1,
                part: "left",
                expected: width,
                found: lrow.len(),
            });
        }
        if rrow.len() != right_width {
            return Err(MatrixError::Ragged {
                row: i + 1,
                part: "right",
                expected: right_width,
                found: rrow.len(),
            });
        }
    }
    check_declared("m", m, width)?;
    check_declared("m'", m_prime, right_width)?;

    if left.iter().chain(&right).flatten().any(|&v| v == 0) {
        return Err(MatrixError::ZeroIndex);
    }

    let left_vars: BTreeSet<u32> = left.iter().flatten().copied().collect();
    let all_vars: BTreeSet<u32> = left_vars
        .iter()
        .copied()
        .chain(right.iter().flatten().copied())
        .collect();

    let l = match l {
        Some(l) => l,
        None => infer_bound(&left_vars, width + right_width, "left entries")?,
    };
    let k = match k {
        Some(k) => k,
        None => {
            if !is_initial_segment(&left_vars) {
                return Err(MatrixError::ConventionViolated(
                    "left entries are not x1..xl for any l".into(),
                ));
            }
            infer_bound(&all_vars, width + right_width, "entries")?
        }
    };
    if k < l {
        return Err(MatrixError::BoundOrder { l, k });
    }

    let mut left_grid = Vec::with_capacity(rows);
    for (i, row) in left.iter().enumerate() {
        let mut out = Vec::with_capacity(width);
        for (j, &v) in row.iter().enumerate() {
            if v > l {
                return Err(MatrixError::LeftOutOfRange {
                    row: i + 1,
                    column: j + 1,
                    index: v,
                    bound: l,
                });
            }
            out.push(Variable(v));
        }
        left_grid.push(out);
    }
    let mut right_grid = Vec::with_capacity(rows);
    for (i, row) in right.iter().enumerate() {
        let mut out = Vec::with_capacity(right_width);
        for (j, &v) in row.iter().enumerate() {
            if v > k {
                return Err(MatrixError::RightOutOfRange {
                    row: i + 1,
                    column: j + 1,
                    index: v,
                    bound: k,
                });
            }
            out.push(Variable(v));
        }
        right_grid.push(out);
    }

    Ok(ExtendedMatrix {
        m: width,
        m_prime: right_width,
        l,
        k,
        left: left_grid,
        right: right_grid,
    })
}

fn check_declared(name: &'static str, declared: Option<usize>, actual: usize) -> Result<(), MatrixError> {
    match declared {
        Some(d) if d != actual => Err(MatrixError::ParamMismatch {
            param: name,
            declared: d,
            actual,
        }),
        _ => Ok(()),
    }
}

fn is_initial_segment(vars: &BTreeSet<u32>) -> bool {
    vars.iter().zip(1u32..).all(|(&v, expected)| v == expected)
}

fn infer_bound(vars: &BTreeSet<u32>, columns: usize, what: &str) -> Result<u32, MatrixError> {
    if columns == 0 {
        return Err(MatrixError::ConventionViolated(
            "matrix has no columns (m + m' = 0)".into(),
        ));
    }
    if !is_initial_segment(vars) {
        return Err(MatrixError::ConventionViolated(format!(
            "{what} do not form an initial segment x1..xN"
        )));
    }
    Ok(vars.len() as u32)
}

/// Image of one row under an interpretation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RowImage<T> {
    pub left: Vec<T>,
    pub right: Vec<T>,
}

impl ExtendedMatrix {
    pub fn n(&self) -> usize {
        self.left.len()
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn m_prime(&self) -> usize {
        self.m_prime
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_simple(&self) -> bool {
        self.m_prime == 1 && self.k == self.l
    }

    /// Left part of row `i`.
    pub fn left_row(&self, i: usize) -> &[Variable] {
        &self.left[i]
    }

    /// Right part of row `i`.
    pub fn right_row(&self, i: usize) -> &[Variable] {
        &self.right[i]
    }

    pub fn left_rows(&self) -> &[Vec<Variable>] {
        &self.left
    }

    pub fn right_rows(&self) -> &[Vec<Variable>] {
        &self.right
    }

    /// The `j`-th left column, top to bottom.
    pub fn left_column(&self, j: usize) -> Vec<Variable> {
        self.left.iter().map(|row| row[j]).collect()
    }

    pub fn right_column(&self, j: usize) -> Vec<Variable> {
        self.right.iter().map(|row| row[j]).collect()
    }

    /// Applies `f` (a value per variable `x_1..x_k`) to the entries of row `i`.
    pub fn interpret_row<T: Clone>(&self, i: usize, f: &Interpretation<T>) -> Result<RowImage<T>, MatrixError> {
        if i >= self.n() {
            return Err(MatrixError::RowOutOfRange { row: i, n: self.n() });
        }
        if f.len() != self.k as usize {
            return Err(MatrixError::InterpretationArity {
                expected: self.k as usize,
                found: f.len(),
            });
        }
        Ok(RowImage {
            left: self.left[i].iter().map(|&v| f.apply(v).clone()).collect(),
            right: self.right[i].iter().map(|&v| f.apply(v).clone()).collect(),
        })
    }

    pub fn as_simple(&self) -> Option<SimpleMatrix> {
        SimpleMatrix::try_from(self.clone()).ok()
    }
}

/// A total map from `{x_1,..,x_k}` into a value set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Interpretation<T> {
    values: Vec<T>,
}

impl<T> Interpretation<T> {
    /// `values[a - 1]` is the image of `x_a`.
    pub fn new(values: Vec<T>) -> Self {
        Interpretation { values }
    }

    pub fn apply(&self, v: Variable) -> &T {
        &self.values[v.slot()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn map<U>(&self, g: impl FnMut(&T) -> U) -> Interpretation<U> {
        Interpretation {
            values: self.values.iter().map(g).collect(),
        }
    }
}

/// An extended matrix with `m' = 1` and `k = l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleMatrix(ExtendedMatrix);

impl TryFrom<ExtendedMatrix> for SimpleMatrix {
    type Error = MatrixError;

    fn try_from(matrix: ExtendedMatrix) -> Result<Self, Self::Error> {
        if !matrix.is_simple() {
            return Err(MatrixError::NotSimple {
                m_prime: matrix.m_prime,
                l: matrix.l,
                k: matrix.k,
            });
        }
        Ok(SimpleMatrix(matrix))
    }
}

impl Deref for SimpleMatrix {
    type Target = ExtendedMatrix;

    fn deref(&self) -> &ExtendedMatrix {
        &self.0
    }
}

impl SimpleMatrix {
    /// Builds a simple matrix from left rows and the right column, with
    /// `k = l` given explicitly.
    pub fn from_rows(left: Vec<Vec<u32>>, right: Vec<u32>, k: u32) -> Result<Self, MatrixError> {
        let raw = RawMatrix::new(left, right.into_iter().map(|y| vec![y]).collect()).with_bounds(k, k);
        SimpleMatrix::try_from(validate(raw)?)
    }

    /// The right-hand entry `y_i`.
    pub fn y(&self, i: usize) -> Variable {
        self.0.right[i][0]
    }

    pub fn right(&self) -> Vec<Variable> {
        self.0.right_column(0)
    }

    pub fn into_inner(self) -> ExtendedMatrix {
        self.0
    }

    pub fn as_extended(&self) -> &ExtendedMatrix {
        &self.0
    }
}

/// Stacks `a` over `b`: the result has `n_a + n_b` rows and one left column
/// per pair `(j_a, j_b)` in lexicographic order with `j_a` major. Its
/// variable bound is `max(k_a, k_b)`.
pub fn intersect(a: &SimpleMatrix, b: &SimpleMatrix) -> SimpleMatrix {
    let k = a.k().max(b.k());
    let pairs: Vec<(usize, usize)> = (0..a.m()).flat_map(|ja| (0..b.m()).map(move |jb| (ja, jb))).collect();
    let mut left = Vec::with_capacity(a.n() + b.n());
    let mut right = Vec::with_capacity(a.n() + b.n());
    for i in 0..a.n() {
        left.push(pairs.iter().map(|&(ja, _)| a.left_row(i)[ja]).collect());
        right.push(vec![a.y(i)]);
    }
    for i in 0..b.n() {
        left.push(pairs.iter().map(|&(_, jb)| b.left_row(i)[jb]).collect());
        right.push(vec![b.y(i)]);
    }
    SimpleMatrix(ExtendedMatrix {
        m: pairs.len(),
        m_prime: 1,
        l: k,
        k,
        left,
        right,
    })
}
