//! Error types shared across the crate.

use thiserror::Error;

use crate::graph::VertexId;
use crate::label::Label;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("path length must be at least 1")]
    ZeroLengthPath,
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed label `{0}`")]
    BadLabel(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `{0}` line")]
    MissingSection(&'static str),
    #[error("instance validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    pub fn at(line: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Line {
            line,
            msg: msg.into(),
        }
    }
}

/// Construction-time invariant violations. Every variant carries enough text
/// to locate the offending gadget.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

impl BuildError {
    pub fn invariant(msg: impl Into<String>) -> BuildError {
        BuildError::Invariant(msg.into())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("enumeration cap exceeded: needs {needed} candidates, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("invalid query: {0}")]
    BadQuery(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("move {index}: placing a searcher on occupied vertex {vertex}")]
    PlaceOccupied { index: usize, vertex: VertexId },
    #[error("move {index}: vertex {vertex} holds no searcher")]
    NotOccupied { index: usize, vertex: VertexId },
    #[error("move {index}: unknown vertex {vertex}")]
    UnknownVertex { index: usize, vertex: VertexId },
    #[error("strategy generation failed: {0}")]
    Generation(String),
}
