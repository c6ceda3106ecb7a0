use thiserror::Error;

/// Errors raised by the cagekit library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("minimal polynomial of {label} is reducible: gcd with the element has degree {gcd_degree}")]
    ReducibleModulus { label: String, gcd_degree: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid projective point: all coordinates are zero")]
    InvalidPoint,
    #[error("product of an empty list of linear forms")]
    EmptyProduct,
    #[error("affine degree {actual} exceeds requested total degree {requested}")]
    DegreeOverflow { actual: u32, requested: u32 },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("cage has not been validated")]
    NotValidated,
    #[error("cage failed validation: {0}")]
    InvalidCage(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("configuration is not in general position: {0}")]
    NotInGeneralPosition(String),
    #[error("no valid cage found after {attempts} attempts")]
    MaxAttemptsExceeded { attempts: usize },
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("pencil coefficients are all zero")]
    DegeneratePencil,
    #[error("point set contains duplicate points")]
    DuplicatePoint,
    #[error("degree {k} is out of range (maximum {max})")]
    DegreeOutOfRange { k: usize, max: usize },
    #[error("defining rows are linearly dependent (rank {rank} < {rows})")]
    DegenerateVariety { rank: usize, rows: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("tangent subspace is the whole tangent space; nothing to inscribe")]
    NothingToInscribe,
    #[error("variety is singular at node {index}: Jacobian rank {rank} < {expected}")]
    SingularNode {
        index: String,
        rank: usize,
        expected: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown demo {0:?}")]
    UnknownDemo(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
