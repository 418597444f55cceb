use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("part must be positive, found {0}")]
    NonPositivePart(i64),
    #[error("parts must be weakly decreasing and nonnegative")]
    NotAPartition,
    #[error("parts must be strictly decreasing and positive")]
    NotStrict,
    #[error("malformed partition text {0:?}")]
    BadPartitionSyntax(String),
    #[error("pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("element depends on z where a z-free element is required")]
    NotZFree,
    #[error("q-basis extraction left a nonzero residual at weight {weight}")]
    NonzeroResidual { weight: i64 },
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(i64),
    #[error("empty p range: {0}..={1}")]
    EmptyRange(i64, i64),
    #[error("window must be at least 2, got {0}")]
    WindowTooSmall(usize),
    #[error("need at least window+1 = {need} values, got {got}")]
    SequenceTooShort { need: usize, got: usize },
    #[error("partition must be nonempty")]
    EmptyPartitionArgument,
    #[error("invalid serialized element: {0}")]
    BadSerialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
