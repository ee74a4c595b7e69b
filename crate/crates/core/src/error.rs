use thiserror::Error;

use crate::bracket_b::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("vertex index {index} is out of range for a polygon with {order} vertices")]
    VertexOutOfRange { index: usize, order: usize },
    #[error("malformed vertex label {0:?}")]
    BadVertexLabel(String),
    #[error("chord endpoints must be distinct (got {0} twice)")]
    DegenerateChord(usize),
    #[error("{0} is a polygon edge, not an internal chord")]
    PolygonEdge(String),
    #[error("{0} is not a chord of the triangulation")]
    NotAChord(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("red chords {0} and {1} cross")]
    CrossingRedChords(String, String),
    #[error("red set is not closed under the half turn: partner of {0} is missing")]
    AsymmetricRedSet(String),
    #[error("red set is not realizable: the completed triangulation has a different red set")]
    UnrealizableRedSet,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("entry {value} at position {position} is out of range for n = {n}")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("invalid bracket vector: {0}")]
    InvalidBracketVector(Violation),
    #[error("invalid bracket vector: {0}")]
    InvalidVectorA(String),
    #[error("malformed subset {0:?}: expected comma-separated integers")]
    MalformedSubset(String),
    #[error("tuple does not satisfy condition {0}")]
    OutsideDomain(Violation),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("subset element {value} is out of range for n = {n}")]
    SubsetOutOfRange { value: usize, n: usize },
    #[error("vector {0} does not lie in the subfamily for this subset")]
    NotInSubfamily(String),
    #[error("{0} is not covered by {1}")]
    NotACover(String, String),
    #[error("{0} is not below {1}")]
    NotComparable(String, String),
    #[error("not a partial order: {0}")]
    PosetAxiom(String),
    #[error("n = {n} exceeds the limit of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("element {0} is not in the lattice")]
    UnknownElement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
