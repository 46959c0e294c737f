use thiserror::Error;

use crate::coeffield::CoeffError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("deformation parameter q must be nonzero")]
    ZeroQ,
    #[error("(q^N)^-1 used but the algebra was built without group-like q^N")]
    InverseDisabled,
    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("operation needs arity {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("braiding is only defined on nonnegative powers of q^N")]
    NegativePowerInBraid,
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("unknown structure constant '{0}'")]
    UnknownConstant(String),
    #[error("no table '{0}' in the catalog")]
    UnknownTable(String),
    #[error("no solution {solution} in table '{table}'")]
    UnknownSolution { table: String, solution: String },
    #[error("fock: {0}")]
    Fock(String),
    #[error("degenerate denominator in closed form ({0})")]
    DegenerateDenominator(String),
    #[error("non-generic parameters: {0}")]
    NonGeneric(String),
    #[error("search: {0}")]
    Search(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
