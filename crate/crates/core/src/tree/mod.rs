//! Nondeterministic Muller and parity automata on infinite binary trees.
//!
//! Acceptance of regular trees and emptiness are both decided by solving a
//! parity game built from the parity form of the automaton.

mod acceptance;
mod lar;
mod ops;
mod product;
mod regular;
#[cfg(test)]
pub(crate) mod tests;

pub use regular::{Dir, RegularTree};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::{State, DEFAULT_BUDGET};

/// A tree transition `(letter, left state, right state)`.
pub type Branch = (Letter, State, State);

/// The designated collection ℱ of a Muller automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Designated {
    /// Explicit listing; each set sorted without duplicates, the list sorted.
    Sets(Vec<Vec<State>>),
    /// ℱ is the family of state sets whose largest priority is even.
    Priorities(Vec<u32>),
}

impl Designated {
    /// Whether the (sorted) set of states belongs to ℱ.
    pub fn contains(&self, set: &[State]) -> bool {
        match self {
            Designated::Sets(sets) => sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok(),
            Designated::Priorities(prio) => set
                .iter()
                .map(|&q| prio[q])
                .max()
                .is_some_and(|p| p % 2 == 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MullerTreeAutomaton {
    alphabet: Alphabet,
    initial: State,
    // per state, sorted without duplicates
    trans: Vec<Vec<Branch>>,
    designated: Designated,
}

fn check_transitions(
    alphabet: &Alphabet,
    num_states: usize,
    initial: State,
    transitions: impl IntoIterator<Item = (State, Letter, State, State)>,
) -> Result<Vec<Vec<Branch>>> {
    let check = |q: State| {
        if q < num_states {
            Ok(q)
        } else {
            Err(Error::Malformed(format!(
                "state {q} out of range (automaton has {num_states} states)"
            )))
        }
    };
    check(initial)?;
    let mut trans = vec![Vec::new(); num_states];
    for (p, a, l, r) in transitions {
        check(p)?;
        check(l)?;
        check(r)?;
        if !alphabet.contains(a) {
            return Err(Error::AlphabetMismatch(format!(
                "transition letter {} outside alphabet",
                a.0
            )));
        }
        trans[p].push((a, l, r));
    }
    for t in &mut trans {
        t.sort_unstable();
        t.dedup();
    }
    Ok(trans)
}

fn branches_on(trans: &[Branch], a: Letter) -> &[Branch] {
    let start = trans.partition_point(|&(b, _, _)| b < a);
    let len = trans[start..].iter().take_while(|&&(b, _, _)| b == a).count();
    &trans[start..start + len]
}

impl MullerTreeAutomaton {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: State,
        transitions: impl IntoIterator<Item = (State, Letter, State, State)>,
        designated: Designated,
    ) -> Result<Self> {
        let trans = check_transitions(&alphabet, num_states, initial, transitions)?;
        let designated = match designated {
            Designated::Sets(sets) => {
                let mut out = Vec::with_capacity(sets.len());
                for mut s in sets {
                    if let Some(&q) = s.iter().find(|&&q| q >= num_states) {
                        return Err(Error::Malformed(format!(
                            "designated set mentions unknown state {q}"
                        )));
                    }
                    s.sort_unstable();
                    s.dedup();
                    out.push(s);
                }
                out.sort();
                out.dedup();
                Designated::Sets(out)
            }
            Designated::Priorities(p) => {
                if p.len() != num_states {
                    return Err(Error::Malformed(format!(
                        "{} priorities for {num_states} states",
                        p.len()
                    )));
                }
                Designated::Priorities(p)
            }
        };
        Ok(MullerTreeAutomaton {
            alphabet,
            initial,
            trans,
            designated,
        })
    }

    /// A single state without transitions: the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        MullerTreeAutomaton {
            alphabet,
            initial: 0,
            trans: vec![Vec::new()],
            designated: Designated::Sets(Vec::new()),
        }
    }

    /// A single state with every transition and ℱ = {{q₀}}.
    pub fn universal(alphabet: Alphabet) -> Self {
        let t = alphabet.letters().map(|a| (a, 0, 0)).collect();
        MullerTreeAutomaton {
            alphabet,
            initial: 0,
            trans: vec![t],
            designated: Designated::Sets(vec![vec![0]]),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn designated(&self) -> &Designated {
        &self.designated
    }

    pub fn transitions_from(&self, q: State) -> &[Branch] {
        &self.trans[q]
    }

    pub fn transitions_on(&self, q: State, a: Letter) -> &[Branch] {
        branches_on(&self.trans[q], a)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State, State)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(p, ts)| ts.iter().map(move |&(a, l, r)| (p, a, l, r)))
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn accepts(&self, t: &RegularTree) -> Result<bool> {
        self.to_parity()?.accepts(t)
    }

    /// A regular tree in the language, if there is one.
    pub fn find_accepted(&self) -> Result<Option<RegularTree>> {
        self.to_parity()?.find_accepted()
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.find_accepted()?.is_none())
    }

    pub fn to_parity(&self) -> Result<ParityTreeAutomaton> {
        self.to_parity_with_budget(DEFAULT_BUDGET)
    }

    pub(crate) fn check_same_alphabet(&self, other: &MullerTreeAutomaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }
}

/// Max-parity tree automaton: a run is accepting iff on every path the
/// largest priority visited infinitely often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTreeAutomaton {
    alphabet: Alphabet,
    initial: State,
    trans: Vec<Vec<Branch>>,
    priority: Vec<u32>,
}

impl ParityTreeAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: State,
        transitions: impl IntoIterator<Item = (State, Letter, State, State)>,
        priority: Vec<u32>,
    ) -> Result<Self> {
        let trans = check_transitions(&alphabet, priority.len(), initial, transitions)?;
        Ok(ParityTreeAutomaton {
            alphabet,
            initial,
            trans,
            priority,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn priority(&self, q: State) -> u32 {
        self.priority[q]
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    pub fn transitions_from(&self, q: State) -> &[Branch] {
        &self.trans[q]
    }

    pub fn transitions_on(&self, q: State, a: Letter) -> &[Branch] {
        branches_on(&self.trans[q], a)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State, State)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(p, ts)| ts.iter().map(move |&(a, l, r)| (p, a, l, r)))
    }

    /// The same automaton read as a Muller automaton.
    pub fn to_muller(&self) -> MullerTreeAutomaton {
        MullerTreeAutomaton {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            trans: self.trans.clone(),
            designated: Designated::Priorities(self.priority.clone()),
        }
    }
}
