//! Program text: parsing and canonical rendering.
//!
//! ```text
//! #bounds 0..200.
//! :- not a, &sum{s} >= 120.
//! a :- &sum{s} > 100.
//! &sum{s} = 130.
//! ```
//!
//! `#external s.` declares a head theory atom external, `#founded s.`
//! asserts that it is not; `%` starts a comment.

mod parse;
mod render;

pub use parse::{parse_program, Directives, ParseError, ParseErrorKind, SourceProgram};
pub use render::{
    render_answer_set, render_answer_sets, render_atom_set, render_models, render_program,
    render_program_as, render_rule, render_stable_models, render_translation, render_verdict,
    valuation_json, Format, SCHEMA_VERSION,
};
