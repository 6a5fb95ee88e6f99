//! Solvers for election control and manipulation problems over single-peaked
//! electorates: winner determination for approval and scoring protocols,
//! recognition of single-peaked profiles, polynomial control and manipulation
//! algorithms with explicit certificates, exact oracles for the resistant
//! cases, and generators for the PARTITION-based hardness constructions.

pub mod control;
pub mod fileio;
pub mod manipulation;
pub mod model;
pub mod oracles;
mod pqtree;
pub mod reductions;
pub mod single_peaked;

pub use model::{
    ApprovalBallot, ApprovalElection, CandidateId, Election, InputMode, LinearBallot,
    LinearElection, ScoreTable, ScoringVector, WinnerModel,
};
pub use single_peaked::Axis;

/// Result of a control or manipulation solver: a witnessing action, or
/// a proof-backed "no action achieves the goal".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<C> {
    Yes(C),
    Impossible,
}

impl<C> Outcome<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Outcome::Yes(c) => Some(c),
            Outcome::Impossible => None,
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Outcome<D> {
        match self {
            Outcome::Yes(c) => Outcome::Yes(f(c)),
            Outcome::Impossible => Outcome::Impossible,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The supplied societal order is not consistent with the ballots.
    /// The wording is part of the output contract of the control solvers.
    #[error("Invalid societal linear order")]
    InvalidAxis,
    #[error("operation requires {expected} ballots")]
    WrongBallotKind { expected: &'static str },
    #[error("scoring vector has length {vector} but the election has {candidates} candidates")]
    ScoringLengthMismatch { vector: usize, candidates: usize },
    #[error("keep set must be a nonempty subset of the candidates")]
    BadKeepSet,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("rule shape mismatch: {0}")]
    RuleShape(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
