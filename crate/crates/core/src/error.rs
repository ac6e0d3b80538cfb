use alloc::string::String;

/// Failures raised by the arithmetic engine and the statement machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The prime divides the (reduced) denominator, so the value has no image in Z/p^eZ.
    #[error("denominator is divisible by p = {p}")]
    NonUnitDenominator { p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {p}^{e} does not fit in 63 bits")]
    ModulusTooLarge { p: u64, e: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("residues mod {left_p}^{left_e} and {right_p}^{right_e} are not comparable")]
    ModulusMismatch {
        left_p: u64,
        left_e: u32,
        right_p: u64,
        right_e: u32,
    },
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    /// An evaluator hit a pole at a grid point even after translating the grid.
    #[error("pole on evaluation grid at {0}")]
    PoleOnGrid(String),
    /// Sample values disagree with the interpolant of the declared degree.
    #[error("values are not those of a polynomial of degree <= {degree}")]
    NonPolynomial { degree: usize },
    #[error("unknown statement {0:?}")]
    UnknownStatement(String),
    #[error("invalid prime range {lo}..{hi}")]
    InvalidRange { lo: u64, hi: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
