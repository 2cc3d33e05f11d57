use thiserror::Error;

/// Errors surfaced by the library. Mathematical failures of a verification
/// are not errors; they are reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("unsupported Coxeter diagram: {0}")]
    UnsupportedDiagram(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("{0} does not stabilize the given subspace")]
    NotStabilizing(String),
    #[error("parabolic subgroup has a component that is not of type A: {0}")]
    NotTypeA(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
