use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix has rank {rank} but {cols} columns")]
    NotFullRank { rank: usize, cols: usize },

    #[error("image is not saturated (invariant factor {factor}); the quotient has torsion")]
    NonSaturated { factor: BigInt },

    #[error("invalid arrangement: {0}")]
    Invalid(String),

    #[error("{edges} edges exceed the enumeration cap of {cap}")]
    TooLarge { edges: usize, cap: usize },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("sign vector {0} is not bounded and feasible")]
    NotBoundedFeasible(String),

    #[error("edge subset {0:?} is not a basis")]
    NotABasis(Vec<usize>),

    #[error("truncation window N = {window} is too small for shift {shift}")]
    WindowTooSmall { window: usize, shift: BigInt },

    #[error("weights {0:?} span a non-unimodular sublattice; the quotient is an orbifold")]
    NonUnimodular(Vec<usize>),

    #[error("character lies on a wall of the weight configuration")]
    DegenerateEta,

    #[error("probe must be strictly positive on every coordinate")]
    InvalidProbe,

    #[error("the closed formula is only available for the zero twist")]
    UnsupportedTwist,

    #[error("infinitely many splittings for dual basis {0:?}; check the alpha overrides")]
    InfiniteSplittings(Vec<usize>),

    #[error("convention error: {0}")]
    Convention(String),

    #[error("parse error: {0}")]
    Parse(String),
}
