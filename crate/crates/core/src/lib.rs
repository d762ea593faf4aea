//! Strong equivalence of logic programs with linear constraints.
//!
//! Programs mix regular atoms with linear theory atoms such as
//! `&sum{s}>=120`. They are translated into the logic of Here-and-There
//! with constraints, where strong equivalence reduces to plain equivalence.
//! All semantics are relativized to a finite integer interval and decided
//! by exhaustive enumeration.

pub mod error;
pub mod htc;
pub mod linear;
pub mod program;
pub mod search;
pub mod sequiv;
pub mod syntax;
pub mod translate;

pub use error::{Error, ProgramError, Result};
pub use htc::{
    ConstraintAtom, DomainValue, Formula, Interpretation, Signature, Sort, Subdomain, Theory,
    Valuation, Var,
};
pub use linear::{Bounds, Comparator, LinearAtom};
pub use program::{AnswerSet, Literal, Rule, TAtom, TProgram};
pub use search::{Limits, ValuationSpace};
