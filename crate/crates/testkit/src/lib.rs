//! Test support: a seeded generator of small programs, formulas and
//! interpretations, and naive reference implementations used as oracles.

pub mod corpus;
pub mod oracle;

pub use corpus::{corpus, Generator};
