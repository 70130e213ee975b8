use thiserror::Error;

/// Errors raised across the library. The CLI maps each variant onto an exit
/// code (see `Error::exit_code`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("extension degree {0} exceeds the supported maximum of 64")]
    DegreeTooLarge(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{sub} does not divide the field degree {degree}")]
    NotADivisor { sub: usize, degree: usize },
    #[error("invalid field element: {0}")]
    BadElement(String),

    #[error("curve is singular: gcd(f, f') != 1")]
    Singular,
    #[error("f must be monic of degree exactly 5")]
    BadDegree,
    #[error("random sampling exhausted its attempt budget")]
    RngExhausted,

    #[error("enumeration bound exceeded: {0}")]
    TooLarge(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("Weil polynomial does not split modulo {0}")]
    DoesNotSplit(u64),
    #[error("{ell} does not divide P(1) = {order}")]
    NotDivisible { ell: u64, order: i128 },
    #[error("eigenvalue is zero modulo l")]
    ZeroEigenvalue,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("evaluation point meets the support of a Miller function")]
    SharedSupport,
    #[error("divisor is not l-torsion")]
    NotTorsion,
    #[error("retry budget exhausted: {0}")]
    RetriesExhausted(String),
    #[error("value is not an l-th root of unity")]
    NotInMu,

    #[error("points do not form a basis of J[l]")]
    NotABasis,
    #[error("coordinate reconstruction mismatch")]
    ReconstructionMismatch,
    #[error("projection annihilated {0} consecutive samples; J(F_q)[l] looks bicyclic")]
    NonCyclicRational(usize),
    #[error("Frobenius is not diagonalizable on J[l]: J(F_(q^N)) has points of order l^2")]
    NotDiagonalizable,
    #[error("generator search failed after the retry budget")]
    Failure,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit codes: 0 success, 2 algorithm failure, 3 precondition, 4 parse, 5 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Failure => 2,
            Error::PreconditionFailed(_)
            | Error::NotDivisible { .. }
            | Error::BadInput(_)
            | Error::NonCyclicRational(_)
            | Error::NotDiagonalizable
            | Error::TooLarge(_)
            | Error::Overflow(_) => 3,
            Error::Parse(_)
            | Error::Singular
            | Error::BadDegree
            | Error::NotPrime(_)
            | Error::EvenCharacteristic
            | Error::DegreeTooLarge(_)
            | Error::BadElement(_) => 4,
            _ => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
