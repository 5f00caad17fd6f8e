use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input data (bad field parameters, shapes, indices).
    Input,
    /// An algebra or module failed its axioms.
    Validation,
    /// A mathematical precondition of an operation does not hold.
    Precondition,
    /// An internal consistency check failed.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{k}) is too large for packed element storage")]
    FieldTooLarge { p: u64, k: usize },
    #[error("{q} is not the size of a subfield of GF({p}^{k})")]
    NotASubfield { q: u64, p: u64, k: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("value is not an element of the target field")]
    NotInField,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("zero-dimensional module")]
    ZeroDimensional,
    #[error("indices {0:?} do not span a subalgebra")]
    NotSubalgebra(Vec<usize>),
    #[error("subalgebra {0:?} is not closed under the p-map")]
    NotPSubalgebra(Vec<usize>),
    #[error("subalgebra {0:?} is not subnormal")]
    NotSubnormal(Vec<usize>),
    #[error("module is not amenable: minimal polynomial of phi(e_{0}) has a repeated factor")]
    NotAmenable(usize),
    #[error("cluster does not restrict simply to the subalgebra")]
    NotRestrictingSimply,
    #[error("empty cluster")]
    EmptyCluster,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration bound exceeded: {size} candidates > bound {bound}")]
    BoundExceeded { size: u128, bound: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotPrime(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::NotASubfield { .. }
            | Error::FieldMismatch
            | Error::DimensionMismatch(_)
            | Error::NotSquare { .. }
            | Error::ZeroPolynomial
            | Error::NotInField => ErrorKind::Input,
            Error::InvalidAlgebra(_) | Error::InvalidModule(_) | Error::NotSubalgebra(_) => {
                ErrorKind::Validation
            }
            Error::ZeroDimensional
            | Error::NotPSubalgebra(_)
            | Error::NotSubnormal(_)
            | Error::NotAmenable(_)
            | Error::NotRestrictingSimply
            | Error::EmptyCluster
            | Error::Precondition(_)
            | Error::BoundExceeded { .. } => ErrorKind::Precondition,
            Error::Invariant(_) => ErrorKind::Invariant,
        }
    }
}
