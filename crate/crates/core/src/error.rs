use thiserror::Error;

/// Largest ground set any matroid in this crate may have.
pub const MAX_ELEMENTS: usize = 20;

/// Largest basis family accepted by the eager representation.
pub const MAX_BASES: usize = 2_000_000;

/// Largest ground set on which basis exchange is checked exhaustively.
pub const MAX_AXIOM_CHECK: usize = 12;

/// Largest ground set accepted by the ordering search.
pub const MAX_SEARCH: usize = 16;

/// Largest number of petals for which every petal union is evaluated.
pub const MAX_PETALS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of size {n} exceeds the cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("basis family has {count} members, above the cap of {cap}")]
    TooManyBases { count: usize, cap: usize },

    #[error("basis family is empty")]
    EmptyBasisFamily,

    #[error("bases have unequal sizes ({first} and {other})")]
    UnequalBasisSizes { first: usize, other: usize },

    #[error("circuit family is not an antichain: {smaller:?} is contained in {larger:?}")]
    CircuitsNotIncomparable {
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },

    #[error("circuit family contains the empty set")]
    EmptyCircuit,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix has {found} columns but the ground set has {expected} elements")]
    ColumnCount { expected: usize, found: usize },

    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("set over a universe of size {found} used with a matroid on {expected} elements")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("arguments must be disjoint but share {0:?}")]
    Overlap(Vec<usize>),

    #[error("{0:?} is not a circuit-hyperplane")]
    NotCircuitHyperplane(Vec<usize>),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("flower has {m} petals, above the subset-scan cap of {cap}")]
    TooManyPetals { m: usize, cap: usize },

    #[error("petal unions are neither an anemone nor a daisy pattern (witness petal set {witness:?})")]
    MixedFlower { witness: Vec<usize> },

    #[error("two construction routes disagree: {0}")]
    RouteMismatch(String),

    #[error("family validation failed: {0}")]
    FamilyValidation(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
