use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by the process exit code the CLI maps them to,
/// see [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    // --- input errors (exit 3)
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid coefficient at byte {position}: {message}")]
    InvalidCoefficient { position: usize, message: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
    #[error("malformed JSON series: {0}")]
    Json(String),

    // --- algebraic preconditions (exit 2)
    #[error("operands disagree: {0}")]
    Mismatch(String),
    #[error("the zero series has no Newton polyhedron")]
    ZeroSeries,
    #[error("{n} variables exceed the supported limit of {limit}")]
    DimensionLimit { n: usize, limit: usize },
    #[error("invalid edge direction {0:?}: needs a primitive vector with a positive and a negative entry")]
    InvalidDirection(Vec<i64>),
    #[error("not homogeneous for the edge grading: {0}")]
    NotHomogeneous(String),
    #[error("G*H does not equal the restriction of f to the edge")]
    SplitMismatch,
    #[error("G is divisible by the variable x{0}; the lift needs G free of monomial factors")]
    DivisibleByVariable(usize),
    #[error("G and H are not relatively prime")]
    NotCoprime,
    #[error("G is not monic in the last variable")]
    NotMonic,
    #[error("weight {0:?} is not in the edge monoid")]
    NotInMonoid(Vec<i64>),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("Weierstrass preparation needs a pure power of the last variable: {0}")]
    NoPureLastPower(String),
    #[error("characteristic {p} is too small for degree {degree}")]
    CharacteristicTooSmall { p: u64, degree: usize },
    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("truncation {trunc} cannot certify a witness whose edge reaches degree {needed}")]
    HorizonTooSmall { trunc: u32, needed: u32 },
    #[error("no loose edge to work with")]
    NoLooseEdge,
    #[error("several loose edges; pass one explicitly")]
    AmbiguousEdge,
    #[error("{0}")]
    Precondition(String),

    // --- geometric preconditions (exit 4)
    #[error("segment {0:?} -- {1:?} is not a compact edge of the Newton polyhedron")]
    NotAnEdge(Vec<i64>, Vec<i64>),
    #[error("edge {0:?} -- {1:?} is not loose")]
    NotLoose(Vec<i64>, Vec<i64>),
    #[error("edge {0:?} -- {1:?} is not descendant")]
    NotDescendant(Vec<i64>, Vec<i64>),

    // --- everything else (exit 1)
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::InvalidCoefficient { .. }
            | Error::NegativeExponent { .. }
            | Error::Json(_) => 3,
            Error::NotAnEdge(..) | Error::NotLoose(..) | Error::NotDescendant(..) => 4,
            Error::Io(_) | Error::Internal(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
