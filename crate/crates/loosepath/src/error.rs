//! Error types shared across the crate.

use crate::pattern::Pattern;
use thiserror::Error;

/// Errors from the core graph layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds the supported maximum of {max}", max = crate::triples::MAX_N)]
    OrderTooLarge(usize),
    #[error("invalid triple ({0}, {1}, {2}): vertices must satisfy a < b < c")]
    InvalidTriple(usize, usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge rank {rank} out of range for a graph on {n} vertices")]
    RankOutOfRange { rank: usize, n: usize },
    #[error("graphs have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("canonical labeling supports at most {cap} vertices, got {n}")]
    CanonOrderCap { n: usize, cap: usize },
    #[error("embedding requires the small graph's order {small} to be at most the host's order {big}")]
    EmbedOrder { small: usize, big: usize },
}

/// Errors from reading or writing the `.3g` and `.col` text formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate edge ({a}, {b}, {c})")]
    DuplicateEdge { line: usize, a: usize, b: usize, c: usize },
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl FormatError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Parse { line, msg: msg.into() }
    }
}

/// Errors from the construction zoo.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("{name} is undefined for n = {n}: {reason}")]
    InvalidParameter { name: String, n: usize, reason: String },
    #[error("rocket has no built-in definition; supply one with a rocket configuration")]
    RocketUndefined,
    #[error("supplied rocket on {n} vertices is invalid: {reason}")]
    RocketInvalid { n: usize, reason: String },
    #[error("unknown construction name '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from the search engine.
#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {nodes} nodes: best value so far {best:?} (result is a lower bound, not exact)")]
    Incomplete {
        nodes: u64,
        best: Option<u32>,
        /// Best qualifying graphs found before the budget ran out.
        witnesses: Vec<crate::graph::ThreeGraph>,
    },
    #[error("query is invalid: {0}")]
    InvalidQuery(String),
    #[error("order-{order} ladder value {value} does not decrease strictly below the order-{prev_order} value {prev}")]
    LadderNotDecreasing { order: usize, value: u32, prev_order: usize, prev: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Errors from certificate verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate color {0} is not a color of the coloring")]
    BadColor(u8),
    #[error("certificate vertices are not distinct, in range, and path-ordered")]
    BadVertices,
    #[error("certificate edge ranks do not match the stated vertices")]
    EdgeMismatch,
    #[error("certificate edge {rank} is not colored {color} in the coloring")]
    WrongColor { rank: usize, color: u8 },
}

/// Reasons a graph fails the decomposition preconditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph contains the forbidden pattern {0}")]
    ContainsForbidden(Pattern),
    #[error("graph has no two disjoint edges")]
    MissingMatching,
    #[error("graph has no cherry with a disjoint third edge")]
    MissingCherryPlusEdge,
}
