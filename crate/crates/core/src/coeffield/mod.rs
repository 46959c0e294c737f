//! Exact coefficient field: multivariate rational functions over ℤ.

mod grammar;
mod indet;
mod poly;
mod ratfunc;

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

pub use indet::{rational_sqrt, IndetTable};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("unknown symbol '{name}' at {pos}")]
    UnknownSymbolAt { name: String, pos: usize },
    #[error("sqrt({0}) needs a declared square-root alias")]
    SqrtWithoutAlias(String),
    #[error("'{0}' is not a valid symbol name")]
    BadSymbol(String),
    #[error("symbol '{0}' declared twice")]
    DuplicateSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value for symbol {0}")]
    MissingSymbol(String),
    #[error("denominator vanishes at the assignment")]
    Pole,
    #[error("{symbol} = {value} has no rational square root")]
    NotASquare { symbol: String, value: String },
    #[error("assignment for '{0}' contradicts its square-root alias")]
    InconsistentAssignment(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Parses a coefficient in the text grammar against `table`.
pub fn parse_coeff(text: &str, table: &IndetTable) -> Result<RatFunc, CoeffError> {
    grammar::parse(text, table)
}

/// Canonical text of a coefficient; `parse_coeff(print_coeff(x)) == x`.
pub fn print_coeff(x: &RatFunc, table: &IndetTable) -> String {
    grammar::print(x, table)
}

pub fn arith(x: &RatFunc, y: &RatFunc, op: ArithOp) -> Result<RatFunc, CoeffError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

/// Exact value of `x` under a by-name assignment.
pub fn evaluate(
    x: &RatFunc,
    table: &IndetTable,
    assignment: &BTreeMap<String, BigRational>,
) -> Result<BigRational, CoeffError> {
    let values = table.index_assignment(assignment)?;
    x.eval_at(&values).map_err(|e| match e {
        CoeffError::MissingSymbol(tag) => {
            let idx: usize = tag.trim_start_matches('#').parse().unwrap_or(0);
            CoeffError::MissingSymbol(table.name(idx).to_string())
        }
        other => other,
    })
}

/// Parses an exact rational such as `9/4`, `-3` or `0`.
pub fn parse_rational(text: &str) -> Result<BigRational, CoeffError> {
    let t = text.trim();
    let bad = || CoeffError::Syntax {
        pos: 0,
        msg: format!("'{t}' is not an exact rational"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(CoeffError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}
