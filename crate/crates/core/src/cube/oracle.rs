//! Two-element-algebra oracle for `M => Cube_n'` on arbitrary extended
//! matrices.
//!
//! The implication holds iff there is no assignment of truth tables to the
//! symbols of the presentation of `M` that satisfies every equation and
//! makes every operation preserve `R_n'`.
//!
//! Each equation instance under an assignment `{x_1..x_l} -> {0,1}` either
//! pins a table entry to a constant or identifies two entries, so the
//! equations are propagated up front with a union-find over table entries
//! and the two constants. The entries joined to the constant 0 are then
//! checked against the zero-set criterion; all other classes are free and
//! are set to 1, which is always safe because preservation of `R_n'` is
//! kept when zeros become ones.

use serde::Serialize;

use crate::cube::boolean::{
    full_mask, BooleanOperation, CubeRelation, NamedOperation, TwoElementAlgebra, ZeroSet, MAX_ARITY,
};
use crate::error::AlgebraError;
use crate::matrix::ExtendedMatrix;
use crate::partition::DisjointSets;
use crate::presentation::{presentation, Rhs};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoldsReason {
    /// The equations force `0 = 1`, so no two-element algebra exists.
    NoTwoElementModel,
    /// The entries forced to 0 already break `R_n'`.
    ForcedZeros,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OracleVerdict {
    Holds {
        reason: HoldsReason,
        nodes: u64,
    },
    Fails {
        algebra: TwoElementAlgebra,
        nodes: u64,
    },
    /// The node cap was reached before every class was assigned.
    Undecided {
        nodes: u64,
    },
}

impl OracleVerdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            OracleVerdict::Holds { .. } => Some(true),
            OracleVerdict::Fails { .. } => Some(false),
            OracleVerdict::Undecided { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            OracleVerdict::Holds { nodes, .. }
            | OracleVerdict::Fails { nodes, .. }
            | OracleVerdict::Undecided { nodes } => *nodes,
        }
    }
}

pub fn implies_cube_general(matrix: &ExtendedMatrix, n_prime: usize) -> Result<OracleVerdict, AlgebraError> {
    implies_cube_general_capped(matrix, n_prime, DEFAULT_NODE_CAP)
}

/// # Panics
/// Panics if `n_prime < 2`.
pub fn implies_cube_general_capped(
    matrix: &ExtendedMatrix,
    n_prime: usize,
    node_cap: u64,
) -> Result<OracleVerdict, AlgebraError> {
    let relation = CubeRelation::new(n_prime);
    let pres = presentation(matrix);
    let symbols = pres.symbols();
    if let Some(sym) = symbols.iter().find(|s| s.arity > MAX_ARITY) {
        return Err(AlgebraError::TooLarge {
            arity: sym.arity,
            max: MAX_ARITY,
        });
    }
    let l = pres.variables() as usize;
    if l > MAX_ARITY {
        return Err(AlgebraError::TooLarge {
            arity: l,
            max: MAX_ARITY,
        });
    }

    let mut offsets = Vec::with_capacity(symbols.len());
    let mut total = 0usize;
    for sym in symbols {
        offsets.push(total);
        total += 1 << sym.arity;
    }
    let zero = total;
    let one = total + 1;
    let mut sets = DisjointSets::new(total + 2);

    for g in 0..1usize << l {
        let value = |slot: usize| (g >> (l - 1 - slot)) & 1;
        for eq in pres.equations() {
            let input = eq.args.iter().fold(0usize, |acc, v| (acc << 1) | value(v.slot()));
            let lhs = offsets[eq.symbol] + input;
            let rhs = match eq.rhs {
                Rhs::Variable(v) => {
                    if value(v.slot()) == 1 {
                        one
                    } else {
                        zero
                    }
                }
                Rhs::Term(s) => offsets[s] + g,
            };
            sets.union(lhs, rhs);
        }
    }
    if sets.find(zero) == sets.find(one) {
        return Ok(OracleVerdict::Holds {
            reason: HoldsReason::NoTwoElementModel,
            nodes: 0,
        });
    }

    // entry -> (symbol, input)
    let owner: Vec<(usize, usize)> = symbols
        .iter()
        .enumerate()
        .flat_map(|(s, sym)| (0..1usize << sym.arity).map(move |input| (s, input)))
        .collect();
    let root_of: Vec<usize> = (0..total).map(|e| sets.find(e)).collect();
    let zero_root = sets.find(zero);
    let one_root = sets.find(one);

    let mut value: Vec<Option<bool>> = vec![None; total + 2];
    value[zero_root] = Some(false);
    value[one_root] = Some(true);

    let mut zero_sets: Vec<ZeroSet> = symbols
        .iter()
        .map(|s| ZeroSet::new(full_mask(s.arity), relation.n_prime()))
        .collect();
    let forced_ok = (0..total).filter(|&e| root_of[e] == zero_root).all(|e| {
        let (s, input) = owner[e];
        zero_sets[s].push(input as u64)
    });
    if !forced_ok {
        return Ok(OracleVerdict::Holds {
            reason: HoldsReason::ForcedZeros,
            nodes: 0,
        });
    }

    // Turning a 0 into a 1 never breaks preservation, so once the forced
    // zeros pass, every free class can be set to 1. Classes are visited in
    // first-entry order, one node each.
    let mut nodes = 0u64;
    for &root in &root_of {
        if value[root].is_none() {
            if nodes >= node_cap {
                return Ok(OracleVerdict::Undecided { nodes });
            }
            nodes += 1;
            value[root] = Some(true);
        }
    }

    let ops = symbols
        .iter()
        .enumerate()
        .map(|(s, sym)| {
            let table = (0..1usize << sym.arity)
                .map(|input| value[root_of[offsets[s] + input]].expect("every class is assigned"))
                .collect();
            Ok(NamedOperation {
                symbol: sym.name.clone(),
                op: BooleanOperation::from_bools(sym.arity, table)?,
            })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(OracleVerdict::Fails {
        algebra: TwoElementAlgebra::new(ops),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::boolean::{algebra_satisfies, preserves_direct};
    use crate::families::{family, Family};
    use crate::matrix::{validate, RawMatrix};

    fn verify(matrix: &ExtendedMatrix, n_prime: usize, algebra: &TwoElementAlgebra) {
        assert_eq!(algebra_satisfies(algebra, &presentation(matrix)), Ok(true));
        let r = CubeRelation::new(n_prime);
        for named in &algebra.ops {
            assert!(preserves_direct(&named.op, &r), "{} breaks R_{n_prime}", named.symbol);
        }
    }

    #[test]
    fn perm_3_has_a_witness() {
        let perm = family(Family::Perm { r: 3 }).unwrap();
        let verdict = implies_cube_general(&perm, 2).unwrap();
        let OracleVerdict::Fails { algebra, .. } = &verdict else {
            panic!("expected a witness, got {verdict:?}");
        };
        assert_eq!(algebra.ops.len(), 3);
        verify(&perm, 2, algebra);
    }

    #[test]
    fn perm_2_and_mal_hold() {
        for f in [Family::Perm { r: 2 }, Family::Mal] {
            let v = implies_cube_general(&family(f).unwrap(), 2).unwrap();
            assert_eq!(v.holds(), Some(true), "{f}");
        }
    }

    #[test]
    fn maj_fails_for_2_and_holds_for_3() {
        let maj = family(Family::Maj).unwrap();
        let v = implies_cube_general(&maj, 2).unwrap();
        let OracleVerdict::Fails { algebra, .. } = &v else {
            panic!()
        };
        verify(&maj, 2, algebra);
        assert_eq!(implies_cube_general(&maj, 3).unwrap().holds(), Some(true));
    }

    #[test]
    fn inconsistent_equations_hold_vacuously() {
        // p() = x1 cannot hold for both values of x1
        let m = validate(RawMatrix::new(vec![vec![]], vec![vec![1]]).with_bounds(1, 1)).unwrap();
        let v = implies_cube_general(&m, 2).unwrap();
        assert_eq!(
            v,
            OracleVerdict::Holds {
                reason: HoldsReason::NoTwoElementModel,
                nodes: 0
            }
        );
    }

    #[test]
    fn nullary_extra_variable() {
        // l = 0, k = 1: p() = q1(), which the constant 1 satisfies
        let m = validate(RawMatrix::new(vec![vec![]], vec![vec![1]]).with_bounds(0, 1)).unwrap();
        let v = implies_cube_general(&m, 2).unwrap();
        let OracleVerdict::Fails { algebra, .. } = &v else {
            panic!("{v:?}")
        };
        verify(&m, 2, algebra);
    }

    #[test]
    fn node_cap_reports_undecided() {
        let perm = family(Family::Perm { r: 4 }).unwrap();
        assert_eq!(
            implies_cube_general_capped(&perm, 2, 0).unwrap(),
            OracleVerdict::Undecided { nodes: 0 }
        );
        let full = implies_cube_general(&perm, 2).unwrap();
        let OracleVerdict::Fails { algebra, .. } = &full else {
            panic!()
        };
        verify(&perm, 2, algebra);
    }

    #[test]
    fn witness_json_shape() {
        let perm = family(Family::Perm { r: 3 }).unwrap();
        let v = implies_cube_general(&perm, 2).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["outcome"], "fails");
        assert_eq!(json["algebra"]["ops"][0]["symbol"], "p1");
        assert_eq!(json["algebra"]["ops"][2]["arity"], 2);
    }
}
