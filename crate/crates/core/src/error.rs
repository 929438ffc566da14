use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("dimension {n} exceeds the configured cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },

    #[error("expected {expected} basis images, found {found}")]
    WrongImageCount { expected: usize, found: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operator is singular")]
    Singular,

    #[error("matrix is not copositive")]
    NotCopositive,

    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),

    #[error("scale at index {0} is not strictly positive")]
    NonpositiveScale(usize),

    #[error("scale product at ({0}, {1}) is irrational")]
    IrrationalScaleProduct(usize, usize),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("proof pipeline inconclusive: {0}")]
    PipelineInconclusive(Inconclusive),
}

/// Which precondition of `kernel_residual` failed. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    VectorLength { expected: usize, found: usize },
    NotStrictlyPositive { index: usize },
    FormNonzero,
    NotCopositive,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::VectorLength { expected, found } => {
                write!(f, "vector has length {found}, expected {expected}")
            }
            Self::NotStrictlyPositive { index } => {
                write!(f, "coordinate {index} is not strictly positive")
            }
            Self::FormNonzero => f.write_str("quadratic form is nonzero at the vector"),
            Self::NotCopositive => f.write_str("matrix is not copositive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inconclusive {
    NotBijective,
    NoSamples,
    /// An image of a sample was not copositive (1-based sample number).
    ImageNotCopositive {
        sample: usize,
    },
    EmptyIntersection,
    /// The shared zero ray is not supported on a single index.
    NotSingleton {
        supports: Vec<Vec<usize>>,
    },
}

impl std::fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotBijective => f.write_str("operator is not bijective"),
            Self::NoSamples => f.write_str("no samples requested"),
            Self::ImageNotCopositive { sample } => {
                write!(f, "image of sample {sample} is not copositive")
            }
            Self::EmptyIntersection => f.write_str("zero-ray supports have empty intersection"),
            Self::NotSingleton { supports } => {
                write!(f, "shared zero rays are not a single vertex: {supports:?}")
            }
        }
    }
}
