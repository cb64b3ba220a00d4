use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown move token {token:?} at token {position}")]
    BadToken { position: usize, token: String },
    #[error("facelet string must have 54 characters, got {0}")]
    Length(usize),
    #[error("illegal facelet character {ch:?} at position {position}")]
    IllegalChar { position: usize, ch: char },
    #[error("color {color} appears {count} times, expected 9")]
    ColorCount { color: char, count: usize },
    #[error("center of face {face} is {found}")]
    CenterMismatch { face: char, found: char },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle depth {requested} exceeds the limit of {max}")]
    DepthOutOfRange { requested: usize, max: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("empty clause")]
    EmptyClause,
    #[error("variable {0} has not been allocated")]
    UnknownVariable(u32),
    #[error("literal {0} repeated in clause")]
    DuplicateLiteral(i32),
    #[error("clause contains both polarities of variable {0}")]
    Tautology(u32),
    #[error("product AMO needs at least 2 literals, got {0}")]
    ProductTooSmall(usize),
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("an encoding needs at least one state")]
    NoStates,
    #[error("phase-1 length {phase1} leaves no phase-2 step in a {steps}-step encoding")]
    Phase1TooLong { phase1: usize, steps: usize },
    #[error("the 2-bit color scheme requires a phase-1 length")]
    TwoBitsWithoutPhase1,
    #[error("the last-move constraint is only defined in exact-length mode")]
    LastMoveNeedsExact,
    #[error("config syntax: {0}")]
    Syntax(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("model does not satisfy the formula")]
    Unsatisfied,
    #[error("step {step}: {count} move variables true, expected 1")]
    MoveCount { step: usize, count: usize },
    #[error("{0} solved flags true, expected 1")]
    SolvedFlagCount(usize),
    #[error("decoded maneuver does not solve the input at state {step}")]
    Verification { step: usize },
    #[error("state {state}: facelet {facelet} has no valid color")]
    BadColor { state: usize, facelet: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendError {
    #[error("invalid backend configuration: {0}")]
    Config(String),
    #[error("cannot run solver {path:?}: {message}")]
    Spawn { path: String, message: String },
    #[error("malformed solver output: {0}")]
    MalformedOutput(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("solver returned a model that falsifies clause {clause}")]
    InvalidModel { clause: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrchestratorError {
    #[error("invalid decomposition settings: {0}")]
    Config(String),
    #[error("backend failed under branch {path:?}: {source}")]
    Backend { path: Vec<i32>, source: BackendError },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("maximum length {requested} exceeds the limit of {max}")]
    LengthGuard { requested: usize, max: usize },
    #[error("phase-1 length {phase1} must be below the total budget {budget}")]
    Sweep { phase1: usize, budget: usize },
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Orchestrator(#[from] OrchestratorError),
    #[error("solution check failed: {0}")]
    Verification(String),
}

impl From<DecodeError> for PlanError {
    fn from(e: DecodeError) -> Self {
        PlanError::Verification(e.to_string())
    }
}
