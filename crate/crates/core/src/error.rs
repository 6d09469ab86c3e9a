use thiserror::Error;

/// Errors raised by the graph, election and allocation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("malformed rooted tree: {0}")]
    MalformedTree(String),

    #[error("cannot select {requested} elements out of {available}")]
    InfeasibleCardinality { requested: usize, available: usize },

    #[error("candidate {candidate} is out of range ({m} candidates)")]
    InvalidCandidate { candidate: usize, m: usize },

    #[error("voter {voter} is out of range ({n} voters)")]
    InvalidVoter { voter: usize, n: usize },

    #[error("operation requires the {required} setting")]
    WrongSetting { required: &'static str },

    #[error("setting violation: {0}")]
    SettingViolation(String),

    #[error("component does not belong to any S(n,m) family: {0}")]
    Structural(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("instance error: {0}")]
    Instance(String),

    #[error("oracle budget exceeded: {required} subsets to enumerate, budget is {budget}")]
    OracleBudget { required: u128, budget: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
