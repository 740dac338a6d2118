use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {what} = {value} is a nonpositive integer")]
    Pole { what: &'static str, value: String },
    #[error("overflow while computing {0}")]
    Overflow(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operator {atom} does not act on {target}")]
    Incompatible { atom: String, target: String },
    #[error("quadrature did not settle: refinement estimate {estimate:e} above {target:e}")]
    QuadratureStalled { estimate: f64, target: f64 },
    #[error("index {index} out of range for {catalogue} (1..={len})")]
    Index { catalogue: String, index: usize, len: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
