//! The equational presentation of the generic variety of a matrix.
//!
//! One m-ary symbol `p_j` per right column and one l-ary symbol `q_b` per
//! extra variable `x_{l+b}`. Row `i` and right column `j` give the equation
//! `p_j(x_i1,..,x_im) = x_a` when `y_ij = x_a` with `a <= l`, and
//! `p_j(x_i1,..,x_im) = q_{a-l}(x_1,..,x_l)` otherwise.

use std::fmt;

use serde::Serialize;

use crate::matrix::{ExtendedMatrix, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rhs {
    /// A variable among `x_1..x_l`.
    Variable(Variable),
    /// The symbol at this position applied to `x_1..x_l`.
    Term(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    /// 0-based row of the matrix this equation comes from.
    pub row: usize,
    /// Position of the left-hand symbol in [`VarietyPresentation::symbols`].
    pub symbol: usize,
    pub args: Vec<Variable>,
    pub rhs: Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyPresentation {
    symbols: Vec<Symbol>,
    p_count: usize,
    variables: u32,
    equations: Vec<Equation>,
}

impl VarietyPresentation {
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Symbols `p_1..p_{m'}` come first, then `q_1..q_{k-l}`.
    pub fn p_count(&self) -> usize {
        self.p_count
    }

    /// Number of variables `l` the equations are stated in.
    pub fn variables(&self) -> u32 {
        self.variables
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn render_equation(&self, eq: &Equation) -> String {
        let args = eq.args.iter().map(Variable::to_string).collect::<Vec<_>>().join(",");
        let rhs = match eq.rhs {
            Rhs::Variable(v) => v.to_string(),
            Rhs::Term(s) => {
                let vars = (1..=self.variables)
                    .map(|a| format!("x{a}"))
                    .collect::<Vec<_>>()
                    .join(",");
                format!("{}({vars})", self.symbols[s].name)
            }
        };
        format!("{}({args}) = {rhs}", self.symbols[eq.symbol].name)
    }
}

impl fmt::Display for VarietyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{}", self.render_equation(eq))?;
        }
        Ok(())
    }
}

/// Emits one equation per (row, right column) pair, rows outermost.
pub fn presentation(matrix: &ExtendedMatrix) -> VarietyPresentation {
    let m = matrix.m();
    let l = matrix.l();
    let single = matrix.is_simple();
    let mut symbols: Vec<Symbol> = (1..=matrix.m_prime())
        .map(|j| Symbol {
            name: if single { "p".to_string() } else { format!("p{j}") },
            arity: m,
        })
        .collect();
    let p_count = symbols.len();
    symbols.extend((1..=matrix.k() - l).map(|b| Symbol {
        name: format!("q{b}"),
        arity: l as usize,
    }));

    let mut equations = Vec::with_capacity(matrix.n() * matrix.m_prime());
    for i in 0..matrix.n() {
        for (j, &y) in matrix.right_row(i).iter().enumerate() {
            let rhs = if y.index() <= l {
                Rhs::Variable(y)
            } else {
                Rhs::Term(p_count + (y.index() - l - 1) as usize)
            };
            equations.push(Equation {
                row: i,
                symbol: j,
                args: matrix.left_row(i).to_vec(),
                rhs,
            });
        }
    }
    VarietyPresentation {
        symbols,
        p_count,
        variables: l,
        equations,
    }
}
