use thiserror::Error;

/// Errors raised by the arithmetic, ideal and group routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("both inputs are zero")]
    ZeroInput,
    #[error("pseudo-Euclidean recursion exceeded {cap} steps")]
    IterationCap { cap: usize },
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("not coprime: gcd is {0}")]
    NotCoprime(String),
    #[error("column {column} is not in reduced form (reduced factor {e})")]
    NotReduced { column: String, e: i64 },
    #[error("the zero ideal is not supported here")]
    ZeroIdeal,
    #[error("the unit ideal has a trivial quotient")]
    UnitIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid HNF triple ({d1},{k},{d2}): {reason}")]
    InvalidHnf {
        d1: i64,
        k: i64,
        d2: i64,
        reason: &'static str,
    },
    #[error("enumeration cap of {cap} elements exceeded ({partial} found so far)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("matrix {0} is not an element of the quotient")]
    NotInGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
