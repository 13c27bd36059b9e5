use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate candidate label `{0}`")]
    DuplicateCandidate(String),
    #[error("election needs at least one candidate and one voter")]
    EmptyElection,
    #[error("ranking of voter {voter} is not a permutation of the candidates: {detail}")]
    IncompleteRanking { voter: usize, detail: String },
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("invalid committee: {0}")]
    InvalidCommittee(String),
    #[error("set of size {set} cannot be matched against a committee of size {committee}")]
    SizeMismatch { set: usize, committee: usize },
    #[error("invalid quota: {0}")]
    InvalidQuota(String),
    #[error("instance too large: about {estimated} objects to enumerate, budget is {budget}")]
    InstanceTooLarge { estimated: u128, budget: u64 },
    #[error("committee contains every candidate")]
    EmptyComplement,
    #[error("spacing {spacing} with k = {k} needs {needed} voters, election has {n}")]
    SpacingOutOfRange {
        k: usize,
        spacing: usize,
        needed: usize,
        n: usize,
    },
    #[error("election is not single-crossing in the given voter order")]
    NotSingleCrossing,
    #[error("election is not single-peaked with respect to the axis")]
    NotSinglePeaked,
    #[error("election is not a party-list election for k = {0}")]
    NotPartyList(usize),
    #[error("item {item} has weight 2; no strongly connected tournament on two vertices exists")]
    UnsupportedWeight { item: usize, weight: usize },
    #[error("precedence graph contains a cycle")]
    CyclicPrecedence,
    #[error("graph is not 3-regular: vertex {vertex} has degree {degree}")]
    NotThreeRegular { vertex: usize, degree: usize },
    #[error("bound t = {t} must satisfy 0 < t < {limit}")]
    BoundOutOfRange { t: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
