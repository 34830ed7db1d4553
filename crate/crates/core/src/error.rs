use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground size {0} out of range (expected 1..=16)")]
    GroundSize(usize),
    #[error("element {element} outside ground set [{n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("could not parse subset {0:?}")]
    ParseSubset(String),
    #[error("could not parse rational {0:?}")]
    ParseRational(String),
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("twist set {0} has odd cardinality")]
    OddTwist(String),
    #[error("ground sizes differ: {0} vs {1}")]
    MismatchedGroundSize(usize, usize),
    #[error("orbit enumeration needs n <= 5, got {0}")]
    GroupTooLarge(usize),
    #[error("weight vector keys do not match the bases of the matroid")]
    WeightKeys,
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("{0} is not a basis transversal")]
    NotABasis(String),
    #[error("index set has size {got}, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("{0} is not a basis of every cell in the family")]
    NotCommonBasis(String),
    #[error("subdivision is not matroidal")]
    NotMatroidal,
    #[error("bad group element {0:?}")]
    ParseGroupElement(String),
    #[error("unknown cone reference {0:?}")]
    UnresolvedRecipe(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
