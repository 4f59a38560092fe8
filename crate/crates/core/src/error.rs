use thiserror::Error;

use crate::gaussian::GaussianInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gcd of (0, 0) is undefined")]
    ZeroGcd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotUnit(GaussianInt),
    #[error("matrix determinant {0} is not a unit")]
    NonUnitDeterminant(GaussianInt),
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(GaussianInt, GaussianInt),
    #[error("lax vectors do not form a superbasis")]
    NotSuperbasis,
    #[error("circles are not tangent (inner product {0})")]
    NotTangent(String),
    #[error("quadruple is not a Descartes quadruple")]
    NotDescartes,
    #[error("quadruple determinant {0} is not ±8")]
    BadDeterminant(i128),
    #[error("quadruple is negatively ordered")]
    NegativelyOrdered,
    #[error("expected an integer matrix, found a non-integral entry")]
    NonIntegral,
    #[error("exploration of an unbounded packing needs a window")]
    UnboundedWithoutWindow,
    #[error("{0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
