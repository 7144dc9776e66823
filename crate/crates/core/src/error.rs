use thiserror::Error;

/// Errors raised while building or querying matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    NoRows,
    #[error("left part has {left} rows but right part has {right}")]
    RowCountMismatch { left: usize, right: usize },
    #[error("row {row}: {part} part has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        part: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("declared {param}={declared} but the matrix has {actual}")]
    ParamMismatch {
        param: &'static str,
        declared: usize,
        actual: usize,
    },
    #[error("variable index 0 is not allowed (variables are x1, x2, ...)")]
    ZeroIndex,
    #[error("row {row}, left column {column}: x{index} exceeds l={bound}")]
    LeftOutOfRange {
        row: usize,
        column: usize,
        index: u32,
        bound: u32,
    },
    #[error("row {row}, right column {column}: x{index} exceeds k={bound}")]
    RightOutOfRange {
        row: usize,
        column: usize,
        index: u32,
        bound: u32,
    },
    #[error("k={k} is smaller than l={l}")]
    BoundOrder { l: u32, k: u32 },
    #[error("cannot infer l and k ({0}); declare them on a params line")]
    ConventionViolated(String),
    #[error("row index {row} out of range for a matrix with {n} rows")]
    RowOutOfRange { row: usize, n: usize },
    #[error("interpretation covers {found} variables, expected {expected}")]
    InterpretationArity { expected: usize, found: usize },
    #[error("matrix is not simple (m'={m_prime}, l={l}, k={k})")]
    NotSimple { m_prime: usize, l: u32, k: u32 },
    #[error("matrix has no left columns")]
    NoLeftColumns,
    #[error("invalid family parameters: {0}")]
    FamilyParams(String),
}

/// Errors raised by the decision procedures on two-element algebras.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation {symbol} has arity {found}, presentation expects {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("algebra has {found} operations, presentation has {expected} symbols")]
    SymbolCountMismatch { expected: usize, found: usize },
    #[error("truth table of length {found} does not match arity {arity}")]
    TableLength { arity: usize, found: usize },
    #[error("truth table entries must be 0 or 1")]
    NonBoolean,
    #[error("the matrix implies the cube condition, so no counterexample algebra exists")]
    ImplicationHolds,
    #[error("arity {arity} exceeds the supported maximum of {max} for truth tables")]
    TooLarge { arity: usize, max: usize },
}
