//! Command-line front end: automata files, presentation bundles,
//! validation, sentence decision, builders and differential suites.

pub mod bundle;
pub mod commands;
pub mod outcome;

pub use outcome::{Format, Outcome, Record, Status};
