use thiserror::Error;

/// Errors raised by the algebra kernel, the solver pipeline and the I/O layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different polynomial rings, or a point/matrix has the wrong shape.
    #[error("structural error: {0}")]
    Structure(String),

    /// An input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact elimination found no pivot in the given column.
    #[error("singular matrix: no pivot in column {column}")]
    Singular { column: usize },

    /// The ideal I[f] has a positive-dimensional complex variety.
    #[error("problem is not D0: no pure power of {name} among the leading monomials")]
    NotD0 { witness: usize, name: String },

    /// Every candidate change of variables failed to put the radical in shape position.
    #[error("no separating change of variables found after {attempts} attempts (bound {bound})")]
    ShapeExhausted { attempts: u64, bound: String },

    /// The perturbation loop never produced a D0 problem.
    #[error("no D0 perturbation found in {draws} draws; try a different eps or seed")]
    PerturbationExhausted { draws: usize },

    /// The solution set is empty where a nonempty one is required.
    #[error("no solutions")]
    NoSolutions,

    /// A reported point failed its interval residual certificate.
    #[error("certification failed: {0}")]
    Certification(String),

    /// Malformed polynomial expression.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Malformed problem or output document.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
