use thiserror::Error;

use crate::half::HalfInt;

/// Why a polynomial is not the Alexander polynomial of an L-space knot.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotRejection {
    #[error("coefficient {coeff} at t^{exp} has absolute value above 1")]
    CoefficientTooLarge { exp: HalfInt, coeff: i64 },
    #[error("coefficients do not alternate in sign at t^{exp}")]
    NonAlternating { exp: HalfInt },
    #[error("polynomial is not symmetric under t -> 1/t")]
    Asymmetric,
    #[error("value at t=1 is {0}, expected 1")]
    BadNormalization(i64),
    #[error("exponent t^{0} is not an integer")]
    HalfIntegerExponent(HalfInt),
    #[error("zero polynomial")]
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("not an L-space knot: {0}")]
    Rejected(#[from] KnotRejection),
    #[error("gcd({0}, {1}) is not 1")]
    NotCoprime(i64, i64),
    #[error("cable ({m},{n}) of a genus {genus} knot is not an L-space knot")]
    CablingCondition { m: i64, n: i64, genus: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the cable link is not an L-space link")]
    NotLSpaceLink,
    #[error("{0} is not available when n = 2g(K)-1")]
    UnsupportedInBoundaryRegime(&'static str),
    #[error("grading coordinate {coord} is not in Z + {lattice}")]
    GradingParity { coord: HalfInt, lattice: HalfInt },
    #[error("grading has {got} coordinates, expected {expected}")]
    GradingLength { got: usize, expected: usize },
    #[error("beta must lie in -1..={max}, got {got}")]
    InvalidBeta { got: i64, max: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("U-truncation {given} is below the stability bound {required}")]
    TruncationTooSmall { given: usize, required: usize },
    #[error("boundary map does not square to zero")]
    NonNilpotentBoundary,
    #[error("boundary entry has bidegree ({0}, {1}), expected (0, -1)")]
    BadBidegree(i64, i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
