use thiserror::Error;

/// Errors raised by domain construction and the island predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IslandError {
    #[error("ground set must contain at least one point")]
    EmptyGround,
    #[error("duplicate point name `{0}`")]
    DuplicateName(String),
    #[error("unknown point name `{0}`")]
    UnknownName(String),
    #[error("subset over {found} points does not match ground set of size {expected}")]
    GroundMismatch { expected: usize, found: usize },
    #[error("the universe U is not a member of the family")]
    MissingUniverse,
    #[error("candidate {0} is not a member of K")]
    NotSubfamily(String),
    #[error("set {0} is not a member of K")]
    NotInK(String),
    #[error("set {0} is not a member of C")]
    NotInC(String),
    #[error("the empty set cannot be a (pre-)island candidate")]
    EmptyCandidate,
    #[error("family contains the empty set")]
    EmptySetMember,
    #[error("family is not admissible: {remaining} member(s) left unlayered")]
    NotAdmissible { remaining: usize },
    #[error("{0} cannot be decided without enumerating K")]
    Undecidable(&'static str),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("candidate {0} does not induce a connected subgraph")]
    DisconnectedCandidate(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("proximity relation violates u ∈ C ⟹ u η C for member {0}")]
    EtaAxiom(String),
}

pub type Result<T, E = IslandError> = std::result::Result<T, E>;
