//! Decision procedures for matrix conditions.
//!
//! - [`triviality`]: whether a simple matrix is trivial;
//! - [`lex`]: `M1 =>_lex M2` for simple matrices, by saturation;
//! - [`cube`]: `M => Cube_n'`, by a row-cover test (simple matrices) or a
//!   search for two-element algebras (any extended matrix).
//!
//! Every verdict carries a witness that can be re-checked by the `check_*`
//! functions without going through the procedure that produced it.

pub mod cube;
pub mod error;
pub mod families;
pub mod lex;
pub mod matrix;
pub mod partition;
pub mod presentation;
pub mod text;
pub mod triviality;

use serde::Serialize;

pub use error::{AlgebraError, MatrixError};
pub use families::{family, Family, FamilyName};
pub use matrix::{intersect, validate, ExtendedMatrix, Interpretation, RawMatrix, SimpleMatrix, Variable};
pub use presentation::{presentation, VarietyPresentation};
pub use text::{parse_matrix, to_text, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}
