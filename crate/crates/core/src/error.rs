use thiserror::Error;

use crate::block::Block;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("atoms {0} are not in the range of the partition")]
    AtomNotInRange(Block),
    #[error("ranges are not disjoint: shared atoms {0}")]
    RangesNotDisjoint(Block),
    #[error("insertion map does not cover the host block: {0}")]
    IncompleteInsertionMap(String),
    #[error("index {index} out of range (len {len})")]
    BadIndex { index: usize, len: usize },
    #[error("ideal block {0} is not a block of the quotient")]
    NotAQuotientShape(Block),
    #[error("partition is not the restriction of the host to its range")]
    NotARestriction,
    #[error("quotient is trivial: the touched range equals the divisor range")]
    TrivialQuotient,
    #[error("family is not admissible: {0}")]
    NotAdmissible(String),
    #[error("family is not admissible to the tuple: {0}")]
    NotAdmissibleToTuple(String),
    #[error("invalid partition tuple: {0}")]
    InvalidTuple(String),
    #[error("guest partition is empty")]
    EmptyGuest,
    #[error("operand is empty")]
    EmptyOperand,
    #[error("invalid structure map: {0}")]
    InvalidStructureMap(String),
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),
    #[error("bad selection: {0}")]
    BadSelection(String),
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("graph kinds do not match: {0}")]
    KindMismatch(String),
    #[error("insertion result is not an admissible graph: {}", .0.join("; "))]
    ResultNotAdmissible(Vec<String>),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::AtomNotInRange(_) => "AtomNotInRange",
            Error::RangesNotDisjoint(_) => "RangesNotDisjoint",
            Error::IncompleteInsertionMap(_) => "IncompleteInsertionMap",
            Error::BadIndex { .. } => "BadIndex",
            Error::NotAQuotientShape(_) => "NotAQuotientShape",
            Error::NotARestriction => "NotARestriction",
            Error::TrivialQuotient => "TrivialQuotient",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::NotAdmissibleToTuple(_) => "NotAdmissibleToTuple",
            Error::InvalidTuple(_) => "InvalidTuple",
            Error::EmptyGuest => "EmptyGuest",
            Error::EmptyOperand => "EmptyOperand",
            Error::InvalidStructureMap(_) => "InvalidStructureMap",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::BadSelection(_) => "BadSelection",
            Error::Disconnected(_) => "Disconnected",
            Error::KindMismatch(_) => "KindMismatch",
            Error::ResultNotAdmissible(_) => "ResultNotAdmissible",
        }
    }
}
