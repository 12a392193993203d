use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number {0:?}: expected an integer, a finite decimal or p/q")]
pub struct RatParseError(pub String);

/// Errors raised while reading or validating an instance document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// A semantic problem with one field of the document. `line` points at
    /// the first line mentioning the offending value, when it can be found.
    #[error("{}{path}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid {
        path: String,
        line: Option<usize>,
        message: String,
    },
}

#[derive(Debug, Error)]
pub enum PbError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("unknown voter {0:?}")]
    UnknownVoter(String),
    #[error("unknown candidate {0:?}")]
    UnknownCandidate(String),
    #[error("voter index {0} out of range")]
    VoterIndex(usize),
    #[error("rank level must be at least 1")]
    ZeroRank,
    #[error("outcome costs {cost} which exceeds the limit {limit}")]
    Infeasible { cost: String, limit: String },
    #[error(
        "instance too large for exhaustive search ({voters} voters, {candidates} candidates; \
         limit is {max_voters} voters and {max_candidates} candidates, use --force to raise it)"
    )]
    TooLarge {
        voters: usize,
        candidates: usize,
        max_voters: usize,
        max_candidates: usize,
    },
    #[error("{axiom} requires dichotomous preferences; voter {voter:?} has {classes} classes")]
    NotDichotomous {
        axiom: &'static str,
        voter: String,
        classes: usize,
    },
    #[error("{axiom} requires {requirement}")]
    Precondition {
        axiom: &'static str,
        requirement: String,
    },
    #[error("({voters}, {candidates}) is not solidly supported")]
    NotSolid { voters: String, candidates: String },
    #[error("invalid generator parameters: {0}")]
    GenParams(String),
    #[error("fixture {name}: {message}")]
    Fixture { name: String, message: String },
}

pub type Result<T, E = PbError> = std::result::Result<T, E>;
