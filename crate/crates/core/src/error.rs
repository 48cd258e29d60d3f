use thiserror::Error;

use crate::grid::Domain;

/// Errors raised by the library. All validation happens eagerly, before any
/// numerical work starts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("expected a {expected}-domain function, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("frequency {0} is not on the sampling lattice")]
    OffLattice(String),

    #[error("{0} symbols cannot be evaluated off the frequency lattice")]
    Unsupported(&'static str),

    #[error("rotation does not preserve the lattice")]
    NotLatticePreserving,

    #[error("invalid exponent {0}: must satisfy p >= 1")]
    InvalidExponent(f64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
