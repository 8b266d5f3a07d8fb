//! Büchi and Muller tree automata engines, ω-automatic and ω-tree-automatic
//! presentations, and a first-order decision procedure over them.
//!
//! The concrete structures built on top are the boolean algebras
//! `P(N)/Fin` (word presentation) and `P({l,r}*)/I` where `I` is the ideal of
//! sets without an infinite antichain (tree presentation), together with
//! brute-force oracles used to validate every automaton construction.

pub mod alphabet;
pub mod automaton;
pub mod error;
pub mod fo;
pub mod format;
pub mod game;
pub mod graph;
pub mod oracle;
pub mod presentation;
pub mod random;
pub mod structures;
pub mod suite;
pub mod tree;
pub mod word;

pub use alphabet::{Alphabet, Letter, LetterMap};
pub use error::{Error, Result};
pub use word::{BuchiAutomaton, LassoWord};
pub use tree::{Designated, MullerTreeAutomaton, ParityTreeAutomaton, RegularTree};
