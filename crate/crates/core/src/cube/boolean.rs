//! Operations on `{0,1}`, the relations `R_n' = {0,1}^n' \ {0..0}` and
//! two-element algebras.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::presentation::{Rhs, VarietyPresentation};

/// Largest arity for which truth tables are materialized.
pub const MAX_ARITY: usize = 24;

/// A truth table indexed by the input read as a big-endian binary number,
/// so the first argument is the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanOperation {
    arity: usize,
    table: Vec<bool>,
}

impl BooleanOperation {
    pub fn new(arity: usize, table: Vec<u8>) -> Result<Self, AlgebraError> {
        if arity > MAX_ARITY {
            return Err(AlgebraError::TooLarge { arity, max: MAX_ARITY });
        }
        if table.len() != 1 << arity {
            return Err(AlgebraError::TableLength {
                arity,
                found: table.len(),
            });
        }
        if table.iter().any(|&b| b > 1) {
            return Err(AlgebraError::NonBoolean);
        }
        Ok(BooleanOperation {
            arity,
            table: table.into_iter().map(|b| b == 1).collect(),
        })
    }

    pub fn from_bools(arity: usize, table: Vec<bool>) -> Result<Self, AlgebraError> {
        if arity > MAX_ARITY {
            return Err(AlgebraError::TooLarge { arity, max: MAX_ARITY });
        }
        if table.len() != 1 << arity {
            return Err(AlgebraError::TableLength {
                arity,
                found: table.len(),
            });
        }
        Ok(BooleanOperation { arity, table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self, AlgebraError> {
        if arity > MAX_ARITY {
            return Err(AlgebraError::TooLarge { arity, max: MAX_ARITY });
        }
        let table = (0..1usize << arity).map(|idx| f(&decode(idx, arity))).collect();
        Ok(BooleanOperation { arity, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, input: &[bool]) -> bool {
        debug_assert_eq!(input.len(), self.arity);
        self.table[encode(input)]
    }

    pub fn eval_index(&self, index: usize) -> bool {
        self.table[index]
    }

    /// Inputs mapped to 0, as table indices.
    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i)
    }
}

impl Serialize for BooleanOperation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BooleanOperation", 2)?;
        s.serialize_field("arity", &self.arity)?;
        let bits: Vec<u8> = self.table.iter().map(|&b| b as u8).collect();
        s.serialize_field("table", &bits)?;
        s.end()
    }
}

/// Big-endian index of a Boolean tuple.
pub fn encode(input: &[bool]) -> usize {
    input.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn decode(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|pos| (index >> (arity - 1 - pos)) & 1 == 1).collect()
}

/// `{0,1}^n'` without the all-zero tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubeRelation {
    n_prime: usize,
}

impl CubeRelation {
    /// # Panics
    /// Panics if `n_prime < 2`.
    pub fn new(n_prime: usize) -> Self {
        assert!(n_prime >= 2, "cube relations need n' >= 2");
        CubeRelation { n_prime }
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn contains(&self, tuple: &[bool]) -> bool {
        tuple.len() == self.n_prime && tuple.iter().any(|&b| b)
    }

    pub fn members(&self) -> Vec<Vec<bool>> {
        (1..1usize << self.n_prime).map(|i| decode(i, self.n_prime)).collect()
    }
}

/// Whether `op` maps `R_n'` into itself when applied coordinatewise.
///
/// The image of `r_1..r_arity` is the all-zero tuple exactly when every row
/// of the `n' x arity` matrix `[r_1 .. r_arity]` is a zero of `op`, and every
/// column `r_j` is non-zero. So `op` preserves `R_n'` iff no `n'` zeros of
/// `op` (repetition allowed) have 1 in every coordinate when OR-ed together.
pub fn preserves(op: &BooleanOperation, relation: &CubeRelation) -> bool {
    let zeros: Vec<u64> = op.zeros().map(|z| z as u64).collect();
    let full = full_mask(op.arity());
    let mut zero_set = ZeroSet::new(full, relation.n_prime());
    zeros.iter().all(|&z| zero_set.push(z))
}

/// Direct check over all `(2^n' - 1)^arity` choices of arguments.
pub fn preserves_direct(op: &BooleanOperation, relation: &CubeRelation) -> bool {
    let members = relation.members();
    let mut choice = vec![0usize; op.arity()];
    loop {
        let image: Vec<bool> = (0..relation.n_prime())
            .map(|row| {
                let input: Vec<bool> = choice.iter().map(|&c| members[c][row]).collect();
                op.eval(&input)
            })
            .collect();
        if !relation.contains(&image) {
            return false;
        }
        // odometer
        let mut pos = op.arity();
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < members.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

pub(crate) fn full_mask(arity: usize) -> u64 {
    if arity == 0 {
        0
    } else {
        u64::MAX >> (64 - arity)
    }
}

/// Incrementally maintained zero set of one operation, rejecting zeros that
/// would complete `n'` zeros covering every coordinate.
#[derive(Clone, Debug)]
pub(crate) struct ZeroSet {
    full: u64,
    n_prime: usize,
    zeros: Vec<u64>,
}

impl ZeroSet {
    pub(crate) fn new(full: u64, n_prime: usize) -> Self {
        ZeroSet {
            full,
            n_prime,
            zeros: Vec::new(),
        }
    }

    /// Adds `z` if that keeps the set compatible; returns false otherwise
    /// and leaves the set unchanged.
    pub(crate) fn push(&mut self, z: u64) -> bool {
        let mut seen: HashMap<u64, usize> = HashMap::new();
        if self.covers(z, 1, &mut seen) {
            return false;
        }
        self.zeros.push(z);
        true
    }

    /// Can `acc` (the OR of `used` zeros, one of them new) be extended to the
    /// full mask with at most `n' - used` further zeros?
    fn covers(&self, acc: u64, used: usize, seen: &mut HashMap<u64, usize>) -> bool {
        if acc == self.full {
            return true;
        }
        if used >= self.n_prime {
            return false;
        }
        match seen.get(&acc) {
            Some(&best) if best <= used => return false,
            _ => {}
        }
        seen.insert(acc, used);
        self.zeros
            .iter()
            .filter(|&&z| z & !acc != 0)
            .any(|&z| self.covers(acc | z, used + 1, seen))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedOperation {
    pub symbol: String,
    #[serde(flatten)]
    pub op: BooleanOperation,
}

/// `({0,1}, p_1, .., p_m', q_1, .., q_{k-l})`, operations in symbol order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoElementAlgebra {
    pub ops: Vec<NamedOperation>,
}

impl TwoElementAlgebra {
    pub fn new(ops: Vec<NamedOperation>) -> Self {
        TwoElementAlgebra { ops }
    }

    /// Every operation preserves `relation`.
    pub fn preserves(&self, relation: &CubeRelation) -> bool {
        self.ops.iter().all(|named| preserves(&named.op, relation))
    }
}

/// Checks every equation of `presentation` under all `2^l` assignments.
pub fn algebra_satisfies(
    algebra: &TwoElementAlgebra,
    presentation: &VarietyPresentation,
) -> Result<bool, AlgebraError> {
    let symbols = presentation.symbols();
    if algebra.ops.len() != symbols.len() {
        return Err(AlgebraError::SymbolCountMismatch {
            expected: symbols.len(),
            found: algebra.ops.len(),
        });
    }
    for (named, sym) in algebra.ops.iter().zip(symbols) {
        if named.op.arity() != sym.arity {
            return Err(AlgebraError::ArityMismatch {
                symbol: sym.name.clone(),
                expected: sym.arity,
                found: named.op.arity(),
            });
        }
    }
    let l = presentation.variables() as usize;
    for g in 0..1usize << l {
        let values = decode(g, l);
        for eq in presentation.equations() {
            let args: Vec<bool> = eq.args.iter().map(|v| values[v.slot()]).collect();
            let lhs = algebra.ops[eq.symbol].op.eval(&args);
            let rhs = match eq.rhs {
                Rhs::Variable(v) => values[v.slot()],
                Rhs::Term(s) => algebra.ops[s].op.eval(&values),
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
