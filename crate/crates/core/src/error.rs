use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown basic relation `{0}`")]
    UnknownRelation(String),
    #[error("malformed relation `{0}` (expected `*`, `{{}}` or `{{TOK,...}}`)")]
    MalformedRelation(String),
    #[error("unknown fragment `{0}`")]
    UnknownFragment(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError::Line {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("composition table rejected: {0}")]
    TableInvalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("sequence length must be positive")]
    ZeroLength,
    #[error("time-partition sequences need an even length, got {0}")]
    OddPartition(usize),
    #[error("index ({i}, {j}) out of range for length {m}")]
    IndexOutOfRange { i: usize, j: usize, m: usize },
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("a variable cannot be related to itself (`{0}`)")]
    SelfPair(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("instance too large for exhaustive enumeration: {0}")]
    InstanceTooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("variable sets differ: {0}")]
    VariableMismatch(String),
    #[error("{0} violates the constraints at its own index")]
    InfeasibleEndpoints(&'static str),
    #[error("start and goal must be basic scenarios")]
    NotAScenario,
    #[error("expected no constraints, one network, or {expected} per-index networks; got {found}")]
    ConstraintCount { expected: usize, found: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("claim {claim} failed: {detail}")]
    VerificationFailure { claim: u8, detail: String },
}
