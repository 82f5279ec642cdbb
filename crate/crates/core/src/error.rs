use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the numerical core.
///
/// Every variant corresponds to a violated precondition or a genuine
/// analytic obstruction (pole, divergence); none of them indicate internal
/// numerical failure.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The modulus is not an odd prime or a product of two distinct odd
    /// primes, or is below 3.
    UnsupportedModulus(u64),
    /// An operation that requires a two-prime modulus was called with a
    /// prime one.
    SemiprimeRequired(u64),
    /// Family-average identities are only defined for arguments coprime to
    /// the modulus.
    NonCoprimeArguments { a: u64, b: u64, q: u64 },
    /// The operation is only defined for even primitive characters.
    EvenPrimitiveRequired { chi_id: usize },
    /// The operation is undefined for the principal character.
    PrincipalCharacter,
    /// A gamma-function argument landed within the guard radius of a
    /// non-positive integer.
    PoleProximity,
    /// A strictly positive real argument was required.
    NonPositiveArgument(&'static str),
    /// A contour plan violated `height > 0`, `step > 0`, or
    /// `height / step >= 100`.
    InvalidContourPlan,
    /// A scalar argument fell outside the supported numerical domain.
    DomainError(&'static str),
    /// `L(1, f)` diverges for this coefficient source (the degenerate
    /// spectral parameter `t = 0` of the Eisenstein family).
    DivergentLValue,
    /// A coefficient table line could not be parsed.
    ParseError { line: usize, message: String },
    /// The coefficient table does not start with `n = 1`.
    MissingFirstCoefficient,
    /// Coefficient indices must be strictly increasing.
    NonMonotoneIndex { line: usize },
    /// Extending a multiplicative coefficient table requires the value at
    /// this prime, which is absent.
    MissingPrimeValue(u64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedModulus(q) => write!(
                f,
                "modulus {q} is not an odd prime or a product of two distinct odd primes"
            ),
            Error::SemiprimeRequired(q) => {
                write!(f, "modulus {q} is prime; a two-prime modulus is required")
            }
            Error::NonCoprimeArguments { a, b, q } => write!(
                f,
                "arguments ({a}, {b}) share a factor with the modulus {q}"
            ),
            Error::EvenPrimitiveRequired { chi_id } => write!(
                f,
                "character #{chi_id} is not even primitive, which this operation requires"
            ),
            Error::PrincipalCharacter => {
                write!(f, "operation undefined for the principal character")
            }
            Error::PoleProximity => {
                write!(f, "argument within guard radius of a gamma-function pole")
            }
            Error::NonPositiveArgument(name) => {
                write!(f, "argument `{name}` must be strictly positive")
            }
            Error::InvalidContourPlan => write!(
                f,
                "contour plan must satisfy height > 0, step > 0, height/step >= 100"
            ),
            Error::DomainError(msg) => write!(f, "{msg}"),
            Error::DivergentLValue => {
                write!(f, "L(1, f) diverges for this coefficient source")
            }
            Error::ParseError { line, message } => {
                write!(f, "coefficient table, line {line}: {message}")
            }
            Error::MissingFirstCoefficient => {
                write!(f, "coefficient table must start with n = 1 (value 1)")
            }
            Error::NonMonotoneIndex { line } => {
                write!(f, "coefficient table, line {line}: indices must strictly increase")
            }
            Error::MissingPrimeValue(p) => {
                write!(f, "cannot extend coefficients: value at prime {p} is missing")
            }
        }
    }
}

impl core::error::Error for Error {}
