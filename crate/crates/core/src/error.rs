use thiserror::Error;

use crate::graph::VertexId;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fat vertices {0} and {1} are adjacent")]
    FatFatEdge(VertexId, VertexId),
    #[error("fat vertex {0} has no slim neighbor")]
    IsolatedFat(VertexId),
    #[error("malformed edge ({0}, {1}): {2}")]
    MalformedEdge(VertexId, VertexId, &'static str),
    #[error("vertex {0} is out of range for a graph on {1} vertices")]
    VertexOutOfRange(VertexId, usize),
    #[error("induced subgraph strands fat vertex {0}")]
    InvalidInduced(VertexId),
    #[error("w(x, y) needs two distinct vertices, got {0} twice")]
    SameVertex(VertexId),
    #[error("vertex {0} is not slim")]
    NotSlim(VertexId),
    #[error("operation needs a nonempty Hoffman graph")]
    EmptyGraph,
    #[error("parts do not partition the slim vertices: {0}")]
    NotAPartition(String),
    #[error("sum condition violated: {0}")]
    SumConditionViolated(String),
    #[error("invalid fat slot assignment: {0}")]
    InvalidAssignment(String),
    #[error("addend on slim vertices {0:?} is neither h1 nor a member of O")]
    AddendOutsideScope(Vec<VertexId>),
    #[error("slim subgraphs differ under the given identification")]
    SlimMismatch,
    #[error("family member {0} is not in O")]
    MemberOutsideO(usize),
    #[error("family is not contained in O")]
    FamilyOutsideO,
    #[error("family is not closed under the bar operation")]
    FamilyNotClosed,
    #[error("family does not contain h2")]
    MissingH2,
    #[error("family members {0} and {1} are isomorphic")]
    DuplicateMember(usize, usize),
    #[error("graph is too large for this operation ({0} vertices, limit {1})")]
    GraphTooLarge(usize, usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable variant name, surfaced by the CLI and the C interface.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FatFatEdge(..) => "FatFatEdge",
            Error::IsolatedFat(..) => "IsolatedFat",
            Error::MalformedEdge(..) => "MalformedEdge",
            Error::VertexOutOfRange(..) => "VertexOutOfRange",
            Error::InvalidInduced(..) => "InvalidInduced",
            Error::SameVertex(..) => "SameVertex",
            Error::NotSlim(..) => "NotSlim",
            Error::EmptyGraph => "EmptyGraph",
            Error::NotAPartition(..) => "NotAPartition",
            Error::SumConditionViolated(..) => "SumConditionViolated",
            Error::InvalidAssignment(..) => "InvalidAssignment",
            Error::AddendOutsideScope(..) => "AddendOutsideScope",
            Error::SlimMismatch => "SlimMismatch",
            Error::MemberOutsideO(..) => "MemberOutsideO",
            Error::FamilyOutsideO => "FamilyOutsideO",
            Error::FamilyNotClosed => "FamilyNotClosed",
            Error::MissingH2 => "MissingH2",
            Error::DuplicateMember(..) => "DuplicateMember",
            Error::GraphTooLarge(..) => "GraphTooLarge",
            Error::Parse { .. } => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
