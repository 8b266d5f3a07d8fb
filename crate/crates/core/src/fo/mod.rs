//! First-order logic over presented structures: formulas, their
//! compilation to automata, and interpretations.

mod compile;
mod interpret;
mod syntax;
pub mod toy;

pub use compile::{compile_formula, decide_sentence, holds_at, Compiled, Compiler, Decision};
pub use interpret::{
    apply_interpretation, flatten_terms, matrix_interpretation, pairing_interpretation,
    parse_interpretation, ring_interpretation, unitriangular_domain, unitriangular_interpretation,
    write_interpretation, Definition, Interpretation,
};
pub use syntax::{Formula, Term};

#[cfg(test)]
mod tests;
