use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("number of candidates must be between 1 and {max}, got {m}")]
    BadCandidateCount { m: usize, max: usize },
    #[error("candidate index {candidate} >= m={m}")]
    CandidateOutOfRange { candidate: usize, m: usize },
    #[error("ballots must approve at least one candidate")]
    EmptyBallot,
    #[error("profiles must contain at least one voter")]
    EmptyProfile,
    #[error("voter ids must be positive")]
    InvalidVoterId,
    #[error("voter {0} appears in both profiles")]
    OverlappingVoters(u32),
    #[error("scalar multiple must be at least 1")]
    InvalidScalar,
    #[error("objects over m={left} and m={right} candidates cannot be combined")]
    MismatchedCandidates { left: usize, right: usize },
    #[error("not a permutation of 0..{m}: {detail}")]
    NotAPermutation { m: usize, detail: String },
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap { what: &'static str, size: u128, cap: u128 },
    #[error("branching produced more than {cap} committees")]
    BranchOverflow { cap: usize },
    #[error("committee size {k} exceeds m={m}")]
    CommitteeTooLarge { k: usize, m: usize },
    #[error("committee already contains every candidate")]
    NoCandidates,
    #[error("table domain error: {0}")]
    Domain(String),
    #[error("invalid counting function: {0}")]
    InvalidCounting(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no witness exists: {0}")]
    NoWitness(String),
    #[error("construction not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
