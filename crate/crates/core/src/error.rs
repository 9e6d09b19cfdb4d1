use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrime(u32),
    ReducibleModulus,
    /// Wrong length, not monic, or a coefficient outside `[0, p)`.
    MalformedModulus,
    /// No built-in modulus for this `(p, ell)`, or the field/space is too large.
    UnsupportedSize,
    ZeroInverse,
    FieldMismatch,
    IndexOutOfRange {
        index: usize,
        bound: usize,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    NotABasis,
    PrimeMismatch {
        left: u32,
        right: u32,
    },
    SpecDimensionMismatch,
    UnknownCatalogEntry(alloc::string::String),
    InvalidCatalogParams(&'static str),
    PropertyMismatch {
        entry: &'static str,
        property: &'static str,
    },
    TrivialCharacter,
    EvenCharacteristic,
    EmptySet,
    /// The function handed to `verify_theorem1` is not bent.
    HypothesisFailed,
    NoOpPerturbation,
    NotPlanarBase,
    NotPlanarEntry(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => write!(f, "modulus is reducible"),
            Error::MalformedModulus => {
                write!(f, "modulus must be monic with ell+1 coefficients in [0, p)")
            }
            Error::UnsupportedSize => write!(f, "field or space size not supported"),
            Error::ZeroInverse => write!(f, "zero has no inverse"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range [0, {bound})")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotABasis => write!(f, "vectors do not form an F_p-basis"),
            Error::PrimeMismatch { left, right } => {
                write!(
                    f,
                    "cyclotomic integers over different primes ({left} vs {right})"
                )
            }
            Error::SpecDimensionMismatch => {
                write!(f, "function spec does not match the requested dimension")
            }
            Error::UnknownCatalogEntry(name) => write!(f, "unknown catalog entry `{name}`"),
            Error::InvalidCatalogParams(msg) => write!(f, "invalid catalog parameters: {msg}"),
            Error::PropertyMismatch { entry, property } => {
                write!(
                    f,
                    "catalog entry `{entry}` failed verification of `{property}`"
                )
            }
            Error::TrivialCharacter => write!(f, "character parameter u must be nonzero"),
            Error::EvenCharacteristic => {
                write!(
                    f,
                    "PN/bent equivalence is only claimed for odd characteristic"
                )
            }
            Error::EmptySet => write!(f, "point set is empty"),
            Error::HypothesisFailed => write!(f, "function is not bent"),
            Error::NoOpPerturbation => write!(f, "perturbed value equals the original value"),
            Error::NotPlanarBase => write!(f, "base function is not planar"),
            Error::NotPlanarEntry(i) => write!(f, "function #{i} is not planar"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
