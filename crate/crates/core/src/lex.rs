//! Implication between simple matrix conditions over finitely complete
//! categories.
//!
//! Degenerate cases are settled first:
//! - `m1 = 0`: the implication holds;
//! - `M1` trivial with `m1 > 0`: holds iff `m2 > 0`;
//! - `M1` non-trivial and `M2` trivial: fails.
//!
//! Otherwise the left columns of `M2` are saturated. A column `c` over
//! `x_1..x_{k2}` is added when there are rows `i_1..i_{n2}` of `M1` and
//! interpretations `f_1..f_{n2}` into `x_1..x_{k2}` such that stacking the
//! interpreted rows gives a matrix whose left columns are all in the current
//! set and whose right column is `c`. The implication holds iff the right
//! column of `M2` ends up in the set.
//!
//! Search order: absent columns are tried in lexicographic order, pass after
//! pass, until a pass adds nothing. For one target the choices
//! `(i_1, f_1), (i_2, f_2), ..` are enumerated lexicographically, rows
//! before interpretations, each `f_r` as a value table `(f(x_1),..,f(x_{k1}))`
//! in lexicographic order. Variables that do not occur in the chosen row do
//! not affect the interpreted row; they are fixed to `x_1`.

use std::collections::HashSet;

use serde::Serialize;

use crate::families::lex_tuples;
use crate::matrix::{SimpleMatrix, Variable};
use crate::triviality::is_trivial;
use crate::Outcome;

/// A column of variable indices, top to bottom.
pub type Column = Vec<u32>;

/// One added column with the rows (1-based) and interpretations producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub column: Column,
    pub rows: Vec<usize>,
    pub interpretations: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LexCase {
    /// `M1` has no left columns.
    EmptyLeft,
    /// `M1` is trivial and has left columns.
    TrivialLeft,
    /// `M1` is non-trivial and `M2` is trivial.
    TrivialRight,
    Saturation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationState {
    /// Distinct left columns of `M2` in order of first appearance, followed
    /// by added columns in derivation order.
    pub columns: Vec<Column>,
    pub initial_len: usize,
    pub log: Vec<Derivation>,
    /// False when the run stopped early after deriving its target.
    pub fixpoint: bool,
}

impl SaturationState {
    pub fn contains(&self, column: &[u32]) -> bool {
        self.columns.iter().any(|c| c == column)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SaturationOptions {
    /// Stop as soon as this column is derived.
    pub stop_at: Option<Column>,
    /// Order in which absent columns are tried in each pass. Must list every
    /// column over `x_1..x_{k2}` of height `n2`; defaults to lexicographic.
    pub order: Option<Vec<Column>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexVerdict {
    pub outcome: Outcome,
    pub case: LexCase,
    pub derived_columns: Vec<Column>,
    pub log: Vec<Derivation>,
    #[serde(skip)]
    pub fixpoint: bool,
}

impl LexVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

fn indices(vars: &[Variable]) -> Column {
    vars.iter().map(|v| v.index()).collect()
}

/// Decides `M1 =>_lex M2`, stopping early once the right column of `M2` is
/// derived.
pub fn implies_lex(m1: &SimpleMatrix, m2: &SimpleMatrix) -> LexVerdict {
    implies_lex_with(m1, m2, false)
}

/// As [`implies_lex`]; with `full_saturation` the closure is always run to
/// its fixpoint.
pub fn implies_lex_with(m1: &SimpleMatrix, m2: &SimpleMatrix, full_saturation: bool) -> LexVerdict {
    let degenerate = |outcome, case| LexVerdict {
        outcome,
        case,
        derived_columns: Vec::new(),
        log: Vec::new(),
        fixpoint: true,
    };
    if m1.m() == 0 {
        return degenerate(Outcome::Holds, LexCase::EmptyLeft);
    }
    if is_trivial(m1).is_trivial() {
        let outcome = if m2.m() > 0 { Outcome::Holds } else { Outcome::Fails };
        return degenerate(outcome, LexCase::TrivialLeft);
    }
    if is_trivial(m2).is_trivial() {
        return degenerate(Outcome::Fails, LexCase::TrivialRight);
    }

    let target = indices(&m2.right());
    let options = SaturationOptions {
        stop_at: (!full_saturation).then(|| target.clone()),
        order: None,
    };
    let state = saturate_with(m1, m2, &options);
    let outcome = if state.contains(&target) {
        Outcome::Holds
    } else {
        Outcome::Fails
    };
    LexVerdict {
        outcome,
        case: LexCase::Saturation,
        derived_columns: state.columns,
        log: state.log,
        fixpoint: state.fixpoint,
    }
}

/// Least fixpoint of the column set of `M2` under the rows of `M1`.
pub fn saturate(m1: &SimpleMatrix, m2: &SimpleMatrix) -> SaturationState {
    saturate_with(m1, m2, &SaturationOptions::default())
}

pub fn saturate_with(m1: &SimpleMatrix, m2: &SimpleMatrix, options: &SaturationOptions) -> SaturationState {
    let n2 = m2.n();
    let k2 = m2.k();
    let mut set = ColumnSet::new(n2);
    let mut columns = Vec::new();
    for j in 0..m2.m() {
        let c = indices(&m2.left_column(j));
        if set.insert(&c) {
            columns.push(c);
        }
    }
    let initial_len = columns.len();
    let mut state = SaturationState {
        columns,
        initial_len,
        log: Vec::new(),
        fixpoint: false,
    };
    if let Some(stop) = &options.stop_at {
        if set.contains(stop) {
            return state;
        }
    }

    let order: Vec<Column> = match &options.order {
        Some(order) => order.clone(),
        None => lex_tuples(n2, k2).collect(),
    };
    let searcher = Searcher::new(m1, k2);
    loop {
        let mut added = false;
        for target in &order {
            if set.contains(target) {
                continue;
            }
            if let Some(derivation) = searcher.derive(target, &set) {
                set.insert(target);
                state.columns.push(target.clone());
                state.log.push(derivation);
                added = true;
                if options.stop_at.as_ref() == Some(target) {
                    return state;
                }
            }
        }
        if !added {
            state.fixpoint = true;
            return state;
        }
    }
}

/// Columns of a fixed height, with all of their prefixes indexed.
struct ColumnSet {
    prefixes: Vec<HashSet<Vec<u32>>>,
}

impl ColumnSet {
    fn new(height: usize) -> Self {
        ColumnSet {
            prefixes: vec![HashSet::new(); height + 1],
        }
    }

    fn insert(&mut self, column: &[u32]) -> bool {
        let fresh = !self.contains(column);
        for len in 0..=column.len() {
            self.prefixes[len].insert(column[..len].to_vec());
        }
        fresh
    }

    fn contains(&self, column: &[u32]) -> bool {
        self.prefixes[column.len()].contains(column)
    }

    fn has_prefix(&self, prefix: &[u32]) -> bool {
        self.prefixes[prefix.len()].contains(prefix)
    }
}

/// Per-row data of `M1` reused across targets.
struct RowShape {
    left: Vec<usize>,
    y: usize,
    /// Distinct variable slots of the row, increasing.
    vars: Vec<usize>,
}

struct Searcher {
    rows: Vec<RowShape>,
    k1: usize,
    k2: u32,
    m1: usize,
}

struct Frame<'a> {
    target: &'a [u32],
    set: &'a ColumnSet,
    partial: Vec<Vec<u32>>,
    rows: Vec<usize>,
    interps: Vec<Vec<u32>>,
}

impl Searcher {
    fn new(m1: &SimpleMatrix, k2: u32) -> Self {
        let rows = (0..m1.n())
            .map(|i| {
                let left: Vec<usize> = m1.left_row(i).iter().map(|v| v.slot()).collect();
                let y = m1.y(i).slot();
                let mut vars = left.clone();
                vars.push(y);
                vars.sort_unstable();
                vars.dedup();
                RowShape { left, y, vars }
            })
            .collect();
        Searcher {
            rows,
            k1: m1.k() as usize,
            k2,
            m1: m1.m(),
        }
    }

    fn derive(&self, target: &[u32], set: &ColumnSet) -> Option<Derivation> {
        let mut frame = Frame {
            target,
            set,
            partial: vec![Vec::with_capacity(target.len()); self.m1],
            rows: Vec::with_capacity(target.len()),
            interps: Vec::with_capacity(target.len()),
        };
        if self.extend(&mut frame) {
            Some(Derivation {
                column: target.to_vec(),
                rows: frame.rows.iter().map(|i| i + 1).collect(),
                interpretations: frame.interps,
            })
        } else {
            None
        }
    }

    fn extend(&self, frame: &mut Frame<'_>) -> bool {
        let pos = frame.rows.len();
        if pos == frame.target.len() {
            return true;
        }
        let want = frame.target[pos];
        for (i, shape) in self.rows.iter().enumerate() {
            let free: Vec<usize> = shape.vars.iter().copied().filter(|&s| s != shape.y).collect();
            let mut f = vec![1u32; self.k1];
            f[shape.y] = want;
            // odometer over the free variables, first variable most significant
            loop {
                if self.try_row(frame, shape, &f) {
                    frame.rows.push(i);
                    frame.interps.push(f.clone());
                    if self.extend(frame) {
                        return true;
                    }
                    frame.rows.pop();
                    frame.interps.pop();
                    for col in &mut frame.partial {
                        col.pop();
                    }
                }
                if !advance(&mut f, &free, self.k2) {
                    break;
                }
            }
        }
        false
    }

    /// Pushes the interpreted row onto the partial columns if every partial
    /// column stays a prefix of some column in the set.
    fn try_row(&self, frame: &mut Frame<'_>, shape: &RowShape, f: &[u32]) -> bool {
        for (col, &slot) in frame.partial.iter_mut().zip(&shape.left) {
            col.push(f[slot]);
        }
        let ok = frame.partial.iter().all(|col| frame.set.has_prefix(col));
        if !ok {
            for col in &mut frame.partial {
                col.pop();
            }
        }
        ok
    }
}

fn advance(f: &mut [u32], free: &[usize], k2: u32) -> bool {
    for &slot in free.iter().rev() {
        if f[slot] < k2 {
            f[slot] += 1;
            return true;
        }
        f[slot] = 1;
    }
    false
}

/// Replays a verdict: degenerate cases are re-derived from triviality, and
/// every logged addition is re-checked against the column set at its time.
pub fn check_lex_verdict(m1: &SimpleMatrix, m2: &SimpleMatrix, verdict: &LexVerdict) -> Result<(), String> {
    match verdict.case {
        LexCase::EmptyLeft => {
            return (m1.m() == 0 && verdict.holds())
                .then_some(())
                .ok_or_else(|| "empty-left case does not apply".to_string());
        }
        LexCase::TrivialLeft => {
            let ok = m1.m() > 0 && is_trivial(m1).is_trivial() && verdict.holds() == (m2.m() > 0);
            return ok
                .then_some(())
                .ok_or_else(|| "trivial-left case does not apply".to_string());
        }
        LexCase::TrivialRight => {
            let ok = m1.m() > 0 && !is_trivial(m1).is_trivial() && is_trivial(m2).is_trivial() && !verdict.holds();
            return ok
                .then_some(())
                .ok_or_else(|| "trivial-right case does not apply".to_string());
        }
        LexCase::Saturation => {}
    }

    let mut set: Vec<Column> = Vec::new();
    for j in 0..m2.m() {
        let c = indices(&m2.left_column(j));
        if !set.contains(&c) {
            set.push(c);
        }
    }
    for (step, d) in verdict.log.iter().enumerate() {
        let fail = |msg: &str| Err(format!("log entry {}: {msg}", step + 1));
        if d.rows.len() != m2.n() || d.interpretations.len() != m2.n() || d.column.len() != m2.n() {
            return fail("wrong number of rows");
        }
        let mut left_cols = vec![Vec::with_capacity(m2.n()); m1.m()];
        let mut right_col = Vec::with_capacity(m2.n());
        for (&row, f) in d.rows.iter().zip(&d.interpretations) {
            if row == 0 || row > m1.n() {
                return fail("row index out of range");
            }
            if f.len() != m1.k() as usize || f.iter().any(|&v| v == 0 || v > m2.k()) {
                return fail("interpretation is not a map into x1..xk2");
            }
            for (col, v) in left_cols.iter_mut().zip(m1.left_row(row - 1)) {
                col.push(f[v.slot()]);
            }
            right_col.push(f[m1.y(row - 1).slot()]);
        }
        if right_col != d.column {
            return fail("right column differs from the logged column");
        }
        if set.contains(&d.column) {
            return fail("column was already present");
        }
        if let Some(missing) = left_cols.iter().find(|c| !set.contains(c)) {
            return Err(format!(
                "log entry {}: left column {:?} not yet derived",
                step + 1,
                missing
            ));
        }
        set.push(d.column.clone());
    }
    if set != verdict.derived_columns {
        return Err("derived columns do not match the replayed log".into());
    }
    let target = indices(&m2.right());
    if set.contains(&target) != verdict.holds() {
        return Err("outcome disagrees with membership of the right column".into());
    }
    Ok(())
}
