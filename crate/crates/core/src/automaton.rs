//! The operations presentations and the formula compiler need, common to
//! word and tree automata.

use std::fmt;

use crate::alphabet::{Alphabet, LetterMap};
use crate::error::{Error, Result};
use crate::format;
use crate::tree::{MullerTreeAutomaton, RegularTree};
use crate::word::{BuchiAutomaton, LassoWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Word,
    Tree,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Word => "word",
            Kind::Tree => "tree",
        })
    }
}

pub trait Automaton: Clone + fmt::Debug + Sized {
    /// Finite representation of the objects read (lassos or regular trees).
    type Input: Clone + fmt::Debug + PartialEq;
    const KIND: Kind;

    fn alphabet(&self) -> &Alphabet;
    fn universal(alphabet: Alphabet) -> Self;
    fn empty(alphabet: Alphabet) -> Self;
    fn is_trivially_universal(&self) -> bool;
    fn intersect(&self, other: &Self, budget: usize) -> Result<Self>;
    fn unite(&self, other: &Self) -> Result<Self>;
    fn project_track(&self, track: usize) -> Result<Self>;
    fn relabel_by(&self, map: &LetterMap) -> Result<Self>;
    /// Fails with [`Error::Unsupported`] for tree automata.
    fn complement(&self, budget: usize) -> Result<Self>;
    fn find_member(&self) -> Result<Option<Self::Input>>;
    /// A language-equivalent automaton that is no larger.
    fn simplify(&self) -> Self;
    fn member(&self, x: &Self::Input) -> Result<bool>;

    fn zip_inputs(xs: &[&Self::Input], parts: &[&Alphabet], target: &Alphabet) -> Self::Input;
    fn project_input(x: &Self::Input, from: &Alphabet, tracks: &[usize], to: &Alphabet) -> Self::Input;
    fn show_input(x: &Self::Input, alphabet: &Alphabet) -> String;
    fn parse_input(text: &str, alphabet: &Alphabet) -> Result<Self::Input>;
    fn to_text(&self) -> String;
    fn from_text(text: &str) -> Result<Self>;
}

impl Automaton for BuchiAutomaton {
    type Input = LassoWord;
    const KIND: Kind = Kind::Word;

    fn alphabet(&self) -> &Alphabet {
        BuchiAutomaton::alphabet(self)
    }

    fn universal(alphabet: Alphabet) -> Self {
        BuchiAutomaton::universal(alphabet)
    }

    fn empty(alphabet: Alphabet) -> Self {
        BuchiAutomaton::empty(alphabet)
    }

    fn is_trivially_universal(&self) -> bool {
        BuchiAutomaton::is_trivially_universal(self)
    }

    fn intersect(&self, other: &Self, budget: usize) -> Result<Self> {
        if other.is_trivially_universal() {
            return Ok(self.clone());
        }
        if self.is_trivially_universal() {
            return Ok(other.clone());
        }
        Ok(self.product_with_budget(other, budget)?.reduce())
    }

    fn unite(&self, other: &Self) -> Result<Self> {
        Ok(self.union(other)?.trim())
    }

    fn project_track(&self, track: usize) -> Result<Self> {
        Ok(self.project(track)?.reduce())
    }

    fn relabel_by(&self, map: &LetterMap) -> Result<Self> {
        self.relabel(map)
    }

    fn complement(&self, budget: usize) -> Result<Self> {
        self.complement_with_budget(budget)
    }

    fn find_member(&self) -> Result<Option<LassoWord>> {
        Ok(self.find_accepted())
    }

    fn simplify(&self) -> Self {
        self.reduce()
    }

    fn member(&self, x: &LassoWord) -> Result<bool> {
        self.accepts(x)
    }

    fn zip_inputs(xs: &[&LassoWord], parts: &[&Alphabet], target: &Alphabet) -> LassoWord {
        LassoWord::zip(xs, parts, target)
    }

    fn project_input(x: &LassoWord, from: &Alphabet, tracks: &[usize], to: &Alphabet) -> LassoWord {
        x.project_tracks(from, tracks, to).normalize()
    }

    fn show_input(x: &LassoWord, alphabet: &Alphabet) -> String {
        x.display(alphabet).to_string()
    }

    fn parse_input(text: &str, alphabet: &Alphabet) -> Result<LassoWord> {
        LassoWord::parse(text.trim(), alphabet)
    }

    fn to_text(&self) -> String {
        format::write_buchi(self)
    }

    fn from_text(text: &str) -> Result<Self> {
        format::parse_buchi(text)
    }
}

impl Automaton for MullerTreeAutomaton {
    type Input = RegularTree;
    const KIND: Kind = Kind::Tree;

    fn alphabet(&self) -> &Alphabet {
        MullerTreeAutomaton::alphabet(self)
    }

    fn universal(alphabet: Alphabet) -> Self {
        MullerTreeAutomaton::universal(alphabet)
    }

    fn empty(alphabet: Alphabet) -> Self {
        MullerTreeAutomaton::empty(alphabet)
    }

    fn is_trivially_universal(&self) -> bool {
        self.num_states() == 1
            && self.transitions_from(0).len() == self.alphabet().size()
            && self.designated().contains(&[0])
    }

    fn intersect(&self, other: &Self, budget: usize) -> Result<Self> {
        if other.is_trivially_universal() {
            return Ok(self.clone());
        }
        if self.is_trivially_universal() {
            return Ok(other.clone());
        }
        self.product_with_budget(other, budget)
    }

    fn unite(&self, other: &Self) -> Result<Self> {
        self.union(other)
    }

    fn project_track(&self, track: usize) -> Result<Self> {
        self.project(track)
    }

    fn relabel_by(&self, map: &LetterMap) -> Result<Self> {
        self.relabel(map)
    }

    fn complement(&self, _budget: usize) -> Result<Self> {
        Err(Error::Unsupported(
            "tree automata are only complemented through registered complements".into(),
        ))
    }

    fn find_member(&self) -> Result<Option<RegularTree>> {
        self.find_accepted()
    }

    fn simplify(&self) -> Self {
        self.clone()
    }

    fn member(&self, x: &RegularTree) -> Result<bool> {
        self.accepts(x)
    }

    fn zip_inputs(xs: &[&RegularTree], parts: &[&Alphabet], target: &Alphabet) -> RegularTree {
        RegularTree::zip(xs, parts, target)
    }

    fn project_input(x: &RegularTree, from: &Alphabet, tracks: &[usize], to: &Alphabet) -> RegularTree {
        x.project_tracks(from, tracks, to).canonical()
    }

    fn show_input(x: &RegularTree, alphabet: &Alphabet) -> String {
        x.display(alphabet).to_string()
    }

    fn parse_input(text: &str, alphabet: &Alphabet) -> Result<RegularTree> {
        format::parse_rtree(text, alphabet)
    }

    fn to_text(&self) -> String {
        format::write_muller(self)
    }

    fn from_text(text: &str) -> Result<Self> {
        format::parse_muller(text)
    }
}

