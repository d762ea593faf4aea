use thiserror::Error;

use crate::htc::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the semantic engines.
///
/// Budget exhaustion is kept apart from every other failure so callers can
/// tell "too large to decide" from "wrong input".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`: not part of the signature")]
    UnknownVariable(Var),

    #[error("arithmetic overflow while evaluating `{0}`")]
    Overflow(String),

    #[error("{what}: search space of {required} exceeds the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    #[error("invalid interpretation: the here valuation is not contained in the there valuation")]
    NotAnInterpretation,

    #[error("invalid bounds {lo}..{hi}: lower bound exceeds upper bound")]
    InvalidBounds { lo: i64, hi: i64 },

    #[error("variable `{0}` is used both as a regular atom and as an integer variable")]
    SortConflict(Var),

    #[error("programs use different bounds ({left} vs {right})")]
    BoundsMismatch { left: String, right: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Program(#[from] ProgramError),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

/// Structural problems of a T-program.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("founded theory atom `{0}` occurs in a rule body")]
    FoundedInBody(String),

    #[error("founded theory atom `{0}` is external through complement closure")]
    FoundedIsExternal(String),

    #[error("theory atom `{0}` is declared both external and founded")]
    ExternalAndFounded(String),

    #[error("identifier `{0}` uses the reserved prefix `__`")]
    ReservedIdentifier(String),

    #[error("identifier `{0}` is used both as a regular atom and as an integer variable")]
    NameClash(String),

    #[error("theory atom has no terms")]
    EmptyAtom,
}
