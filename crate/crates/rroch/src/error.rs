//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalcError {
    #[error("operands have different variable tables or truncation degrees")]
    ContextMismatch,
    #[error("invalid variable table: {0}")]
    BadVarTable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("constant term is not 0")]
    NonzeroConstantTerm,
    #[error("division is not exact")]
    NotDivisible,
    #[error("degree {degree} exceeds truncation {trunc}")]
    DegreeOutOfRange { degree: u32, trunc: u32 },
    #[error("symbolic exponent requires a coefficient domain containing t0")]
    SymbolicExponent,
    #[error("input is not symmetric in alphabet {0}")]
    NotSymmetric(String),
    #[error("index {k} out of range for alphabet of size {size}")]
    IndexOutOfRange { k: usize, size: usize },
    #[error("operation requires explicit positive roots")]
    RootsRequired,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}
