//! Deciding whether a matrix condition implies the `n'`-cube condition.
//!
//! [`cover`] is the polynomial test for simple matrices, [`oracle`] the
//! two-element-algebra search for arbitrary extended matrices. On simple
//! matrices the two agree, and both agree with saturation against
//! `Cube_n'`.

pub mod boolean;
pub mod cover;
pub mod oracle;

use serde::Serialize;

use crate::matrix::{intersect, SimpleMatrix};
use crate::Outcome;

pub use boolean::{
    algebra_satisfies, preserves, preserves_direct, BooleanOperation, CubeRelation, NamedOperation, TwoElementAlgebra,
};
pub use cover::{
    build_counterexample_algebra, check_cube_verdict, comparison_count, implies_cube_simple, CoverEntry, CoverWitness,
    CubeVerdict, RowWitness,
};
pub use oracle::{implies_cube_general, implies_cube_general_capped, HoldsReason, OracleVerdict, DEFAULT_NODE_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyVerdict {
    pub outcome: Outcome,
    /// First member (1-based) implying the cube condition on its own.
    pub member: Option<usize>,
    /// Verdict of the row-cover test on the stacked intersection of all
    /// members; `None` for an empty list.
    pub intersection: Option<Outcome>,
}

impl FamilyVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    /// The member-wise and intersection verdicts coincide.
    pub fn consistent(&self) -> bool {
        self.intersection.is_none_or(|o| o == self.outcome)
    }
}

/// Decides whether the conjunction of the members' conditions implies
/// `Cube_n'`, by testing each member and, independently, their intersection.
/// An empty list fails.
pub fn implies_cube_family(members: &[SimpleMatrix], n_prime: usize) -> FamilyVerdict {
    let member = members
        .iter()
        .position(|m| implies_cube_simple(m, n_prime).holds())
        .map(|i| i + 1);
    let intersection = members
        .split_first()
        .map(|(first, rest)| rest.iter().fold(first.clone(), |acc, m| intersect(&acc, m)))
        .map(|stacked| implies_cube_simple(&stacked, n_prime).outcome);
    FamilyVerdict {
        outcome: if member.is_some() {
            Outcome::Holds
        } else {
            Outcome::Fails
        },
        member,
        intersection,
    }
}
