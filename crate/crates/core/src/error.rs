use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside [0, {n})")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("self-loop on node {0} rejected")]
    SelfLoopRejected(NodeId),

    #[error("node {node} is not in a graph of {n} nodes")]
    InvalidNode { node: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionError { expected: usize, actual: usize },

    #[error("graph has no reachable node pairs")]
    NoReachablePairs,

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
