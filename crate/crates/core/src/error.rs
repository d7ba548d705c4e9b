use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("order is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("elements {0} and {1} have no {2}")]
    MissingBound(usize, usize, &'static str),
    #[error("structure needs {required} elements but the materialization threshold is {threshold}")]
    TooLarge { required: u128, threshold: usize },
    #[error("element {element} is not a projection: {identity} fails")]
    NotProjection { element: usize, identity: &'static str },
    #[error("groupoid is not a pair groupoid")]
    NotPairGroupoid,
    #[error("groupoid is not principal (isotropy at object {0})")]
    NotPrincipal(usize),
    #[error("not an inverse quantal frame: {0} fails")]
    NotInverseQuantalFrame(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("population is empty")]
    EmptyPopulation,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
