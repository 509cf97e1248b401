use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("exponent not in C+: value {value} at node {node} must exceed 1")]
    ExponentNotAdmissible { node: usize, value: f64 },

    #[error("non-finite value {value} at node {node}")]
    NonFinite { node: usize, value: f64 },

    #[error("grid mismatch: expected {expected} nodes, got {got}")]
    GridMismatch { expected: usize, got: usize },

    #[error("grid needs at least 5 nodes per axis, got {0}")]
    GridTooSmall(usize),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Luxemburg norm did not converge after {iterations} iterations")]
    NormNotConverged { iterations: usize },

    #[error("theta must be positive, found {value} at node {node}")]
    NonPositiveTheta { node: usize, value: f64 },

    #[error("singular exponent p/(p-2): p = 2 at node {node}")]
    SingularExponent { node: usize },

    #[error("adaptive quadrature did not reach tolerance on [{a}, {b}]")]
    QuadratureNotConverged { a: f64, b: f64 },

    #[error("ball B(x0, {radius}) is not contained in the domain")]
    BallNotContained { radius: f64 },

    #[error("hypotheses failed: {0}")]
    HypothesesFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
