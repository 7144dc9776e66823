//! Named matrices: Mal, Perm_r, Ari, Maj, Cube_{n,k} and Edge_n.

use std::fmt;
use std::str::FromStr;

use crate::error::MatrixError;
use crate::matrix::{validate, ExtendedMatrix, RawMatrix};

/// Largest number of columns a generated cube matrix may have.
const MAX_CUBE_COLUMNS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Mal,
    Perm { r: u32 },
    Ari,
    Maj,
    Cube { n: u32, k: u32 },
    Edge { n: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Mal => "mal",
            Family::Perm { .. } => "perm",
            Family::Ari => "ari",
            Family::Maj => "maj",
            Family::Cube { .. } => "cube",
            Family::Edge { .. } => "edge",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Mal => write!(f, "Mal"),
            Family::Perm { r } => write!(f, "Perm_{r}"),
            Family::Ari => write!(f, "Ari"),
            Family::Maj => write!(f, "Maj"),
            Family::Cube { n, k } => write!(f, "Cube_{{{n},{k}}}"),
            Family::Edge { n } => write!(f, "Edge_{n}"),
        }
    }
}

/// Family name without parameters, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Mal,
    Perm,
    Ari,
    Maj,
    Cube,
    Edge,
}

impl FromStr for FamilyName {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mal" => Ok(FamilyName::Mal),
            "perm" => Ok(FamilyName::Perm),
            "ari" => Ok(FamilyName::Ari),
            "maj" => Ok(FamilyName::Maj),
            "cube" => Ok(FamilyName::Cube),
            "edge" => Ok(FamilyName::Edge),
            other => Err(MatrixError::FamilyParams(format!("unknown family `{other}`"))),
        }
    }
}

/// Builds the displayed matrix of a family, with its declared parameters.
pub fn family(which: Family) -> Result<ExtendedMatrix, MatrixError> {
    let raw = match which {
        Family::Mal => simple(vec![vec![1, 2, 2], vec![1, 1, 2]], vec![1, 2], 2),
        Family::Perm { r } => {
            if r < 2 {
                return Err(MatrixError::FamilyParams(format!("Perm needs r >= 2, got {r}")));
            }
            // Row 1 right part: x1 x3 .. xr; row 2 right part: x3 .. xr x2.
            let middle: Vec<u32> = (3..=r).collect();
            let mut top = vec![1];
            top.extend(&middle);
            let mut bottom = middle;
            bottom.push(2);
            RawMatrix::new(vec![vec![1, 2, 2], vec![1, 1, 2]], vec![top, bottom]).with_bounds(2, r)
        }
        Family::Ari => simple(vec![vec![1, 2, 2], vec![1, 1, 2], vec![1, 2, 1]], vec![1, 2, 1], 2),
        Family::Maj => simple(vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]], vec![1, 1, 1], 2),
        Family::Cube { n, k } => {
            if n < 2 || k < 2 {
                return Err(MatrixError::FamilyParams(format!(
                    "Cube needs n >= 2 and k >= 2, got n={n}, k={k}"
                )));
            }
            let total = (k as u64).checked_pow(n).filter(|&t| t <= MAX_CUBE_COLUMNS + 1);
            if total.is_none() {
                return Err(MatrixError::FamilyParams(format!(
                    "Cube_{{{n},{k}}} has more than {MAX_CUBE_COLUMNS} columns"
                )));
            }
            let columns = lex_tuples(n as usize, k).skip(1);
            let mut left = vec![Vec::new(); n as usize];
            for column in columns {
                for (row, v) in left.iter_mut().zip(column) {
                    row.push(v);
                }
            }
            simple(left, vec![1; n as usize], k)
        }
        Family::Edge { n } => {
            if n < 2 {
                return Err(MatrixError::FamilyParams(format!("Edge needs n >= 2, got {n}")));
            }
            let n = n as usize;
            let mut left = vec![vec![1; n + 1]; n];
            left[0][0] = 2;
            left[1][0] = 2;
            for (i, row) in left.iter_mut().enumerate() {
                row[i + 1] = 2;
            }
            simple(left, vec![1; n], 2)
        }
    };
    validate(raw)
}

fn simple(left: Vec<Vec<u32>>, right: Vec<u32>, k: u32) -> RawMatrix {
    RawMatrix::new(left, right.into_iter().map(|y| vec![y]).collect()).with_bounds(k, k)
}

/// All tuples of length `len` over `1..=k`, lexicographic with the first
/// coordinate most significant.
pub fn lex_tuples(len: usize, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (k as usize).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut tuple = vec![0; len];
        for slot in tuple.iter_mut().rev() {
            *slot = (code % k as usize) as u32 + 1;
            code /= k as usize;
        }
        tuple
    })
}
