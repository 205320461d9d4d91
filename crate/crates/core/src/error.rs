use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("unknown catalogue entry `{0}`")]
    UnknownCatalogue(String),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("wrong presentation: {0}")]
    WrongPresentation(String),
    #[error("basis of {required} vectors exceeds the cap of {cap}; raise HGAUSS_MAX_BASIS to at least {required}")]
    CapExceeded { required: usize, cap: usize },
    #[error("degree overflow: element has degree {degree}, bound is {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
