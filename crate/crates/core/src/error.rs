use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomials live in different ambient algebras ({0} vs {1})")]
    AmbientMismatch(String, String),
    #[error("variable index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("variable x{index} out of range (d = {d})")]
    VariableOutOfRange { index: usize, d: usize },
    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge { what: String, size: String, cap: String },
    #[error("polynomial degree {degree} exceeds window degree {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("generator {index} is not homogeneous")]
    NonHomogeneousGenerator { index: usize },
    #[error("generator {index} has degree {degree} < 2")]
    DegreeBelowTwo { index: usize, degree: usize },
    #[error("degree {degree} exceeds table range (maxdeg = {maxdeg})")]
    DegreeExceedsTable { degree: usize, maxdeg: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension sequence violates the basic inequality at degree {degree}")]
    Eq1Violated { degree: usize },
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("no completed block covers degree {degree}")]
    DegreeNotCovered { degree: usize },
    #[error("inequality could not be decided: {0}")]
    Undecidable(String),
    #[error("invalid blueprint: {0}")]
    InvalidBlueprint(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn too_large(what: &str, size: impl ToString, cap: impl ToString) -> Error {
    Error::TooLarge {
        what: what.to_string(),
        size: size.to_string(),
        cap: cap.to_string(),
    }
}
