use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("presentation has {generators} generators and {relators} relators; deficiency 1 required")]
    WrongDeficiency { generators: usize, relators: usize },

    #[error("braid closure has {components} components; a knot is required")]
    NotAKnot { components: usize },

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("presentation is not of Wirtinger type: {0}")]
    NotWirtinger(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group spec `{0}`")]
    InvalidGroupSpec(String),

    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("images do not define a homomorphism: relator {relator} is not sent to the identity")]
    NotAHomomorphism { relator: usize },

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
