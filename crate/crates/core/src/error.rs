//! Error types shared by the library and the command line.

use thiserror::Error;

/// A plant model or attack specification that does not hold together.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate event `{0}`")]
    DuplicateEvent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("state index {0} is out of range")]
    StateOutOfRange(usize),
    #[error("`{0}` is reserved for the intruder alphabet and cannot name a plant event")]
    ReservedLabel(String),
    #[error("the model has no initial state")]
    NoInitialState,
    #[error("budget must be non-negative, got {0}")]
    NegativeBudget(i64),
}

/// Failure to read a model or specification document.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A strategy that cannot be built or used.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("the final verifier is empty, so there is no strategy to build")]
    EmptyFinalVerifier,
    #[error("no attack decision keeps state {state} inside the final verifier after event `{event}`")]
    NoValidDecision { state: String, event: String },
    #[error("the strategy is empty")]
    EmptyStrategy,
}

/// A simulated play that left the strategy.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("strategy has no move for event `{event}` at {state}")]
    MissingMove { state: String, event: String },
    #[error("strategy has no branch for attack result {result} at {state}")]
    MissingResult { state: String, result: u8 },
}
