use thiserror::Error;

/// Broad failure category, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    /// A well-formed request with no exact answer in the class ring.
    Algebraic,
    /// A cross-check between two computations disagreed.
    Verification,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("germ has no terms")]
    EmptyGerm,
    #[error("germ has a constant term")]
    ConstantTerm,
    #[error("germ is not convenient: no pure power of variable {0}")]
    NotConvenient(usize),
    #[error("face does not belong to the Newton polyhedron of this germ")]
    FaceMismatch,
    #[error("prime {p} divides a coefficient denominator")]
    BadPrime { p: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("enumeration of {size} points exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("origin lies in the polyhedron")]
    OriginInPolytope,
    #[error("property violation: {0}")]
    PropertyViolation(String),
    #[error("zero ray")]
    ZeroRay,
    #[error("functional has a negative coordinate; minimum is unbounded")]
    UnboundedBelow,
    #[error("input fan is not simplicial")]
    NonSimplicialInput,
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Vec<u32>, Vec<u32>),
    #[error("bad factor selector {0:?}")]
    BadSelector(Vec<usize>),
    #[error("character map is not well defined: {0}")]
    NotASubgroup(String),
    #[error("negative Hodge type after twist ({p},{q})")]
    NegativeHodgeType { p: i64, q: i64 },
    #[error("class is not divisible by 1 - L; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("{d} does not divide {m}")]
    NotDivisor { d: u64, m: u64 },
    #[error("class has no monodromy factor")]
    NoMonodromyFactor,
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("registry has no entry for subset {0:?}")]
    MissingRegistryEntry(Vec<usize>),
    #[error("nonzero coefficient for a character of order {order} outside the order-{d} block")]
    TamenessViolation { order: u64, d: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotDivisible { .. } | Error::NegativeHodgeType { .. } => ErrorKind::Algebraic,
            Error::Mismatch(_) => ErrorKind::Verification,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
