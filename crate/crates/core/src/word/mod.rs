//! Nondeterministic Büchi automata on ω-words.

mod complement;
mod lasso;
mod ops;
mod reduce;

use std::collections::VecDeque;

pub use lasso::LassoWord;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::graph;

pub type State = usize;

/// Default cap on the number of states a construction may produce.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    initial: Vec<State>,
    accepting: Vec<bool>,
    // per state, sorted by (letter, target) without duplicates
    trans: Vec<Vec<(Letter, State)>>,
}

impl BuchiAutomaton {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = State>,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        let check = |q: State| {
            if q < num_states {
                Ok(q)
            } else {
                Err(Error::Malformed(format!(
                    "state {q} out of range (automaton has {num_states} states)"
                )))
            }
        };
        let mut init = initial.into_iter().map(check).collect::<Result<Vec<_>>>()?;
        init.sort_unstable();
        init.dedup();
        let mut acc = vec![false; num_states];
        for q in accepting {
            acc[check(q)?] = true;
        }
        let mut trans = vec![Vec::new(); num_states];
        for (p, a, q) in transitions {
            check(p)?;
            check(q)?;
            if !alphabet.contains(a) {
                return Err(Error::AlphabetMismatch(format!(
                    "transition letter {} outside alphabet",
                    a.0
                )));
            }
            trans[p].push((a, q));
        }
        Ok(Self::from_parts(alphabet, init, acc, trans))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: Vec<State>,
        accepting: Vec<bool>,
        mut trans: Vec<Vec<(Letter, State)>>,
    ) -> Self {
        for t in &mut trans {
            t.sort_unstable();
            t.dedup();
        }
        BuchiAutomaton {
            alphabet,
            initial,
            accepting,
            trans,
        }
    }

    /// The automaton with no states; its language is empty.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::from_parts(alphabet, Vec::new(), Vec::new(), Vec::new())
    }

    /// One accepting state looping on every letter.
    pub fn universal(alphabet: Alphabet) -> Self {
        let loops = alphabet.letters().map(|a| (a, 0)).collect();
        Self::from_parts(alphabet, vec![0], vec![true], vec![loops])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> &[State] {
        &self.initial
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn transitions_from(&self, q: State) -> &[(Letter, State)] {
        &self.trans[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(p, ts)| ts.iter().map(move |&(a, q)| (p, a, q)))
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, q: State, a: Letter) -> impl Iterator<Item = State> + '_ {
        let ts = &self.trans[q];
        let start = ts.partition_point(|&(b, _)| b < a);
        ts[start..]
            .iter()
            .take_while(move |&&(b, _)| b == a)
            .map(|&(_, t)| t)
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self
                .trans
                .iter()
                .all(|ts| ts.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Whether this is the trivial universal automaton (one accepting
    /// initial state with a self loop on every letter).
    pub fn is_trivially_universal(&self) -> bool {
        self.num_states() == 1
            && self.initial == [0]
            && self.accepting[0]
            && self.trans[0].len() == self.alphabet.size()
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|ts| {
                let mut v: Vec<usize> = ts.iter().map(|&(_, q)| q).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }

    /// Membership of an ultimately periodic word: searches the product of
    /// the automaton with the lasso's position graph for a reachable cycle
    /// through an accepting state.
    pub fn accepts(&self, word: &LassoWord) -> Result<bool> {
        word.check_alphabet(&self.alphabet)?;
        let w = word.normalize();
        let stem = w.stem().len();
        let len = stem + w.cycle().len();
        let next_pos = |i: usize| if i + 1 < len { i + 1 } else { stem };
        let n = self.num_states();
        let id = |q: State, i: usize| q * len + i;

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * len];
        let mut seen = vec![false; n * len];
        let mut queue: VecDeque<(State, usize)> = VecDeque::new();
        for &q in &self.initial {
            if !seen[id(q, 0)] {
                seen[id(q, 0)] = true;
                queue.push_back((q, 0));
            }
        }
        while let Some((q, i)) = queue.pop_front() {
            let j = next_pos(i);
            for q2 in self.successors(q, w.at(i)) {
                adj[id(q, i)].push(id(q2, j));
                if !seen[id(q2, j)] {
                    seen[id(q2, j)] = true;
                    queue.push_back((q2, j));
                }
            }
        }
        let (comp, ncomp) = graph::scc_ids(&adj);
        let cyclic = graph::on_cycle(&adj, &comp, ncomp);
        Ok((0..n).any(|q| {
            self.accepting[q] && (stem..len).any(|i| seen[id(q, i)] && cyclic[id(q, i)])
        }))
    }

    /// Returns an accepted lasso, or `None` if the language is empty.
    ///
    /// The witness goes through the lowest-index accepting state that is
    /// reachable and lies on a cycle, with a shortest stem and then a
    /// shortest loop.
    pub fn find_accepted(&self) -> Option<LassoWord> {
        let adj = self.adjacency();
        let reach = graph::reachable(&adj, self.initial.iter().copied());
        let (comp, ncomp) = graph::scc_ids(&adj);
        let cyclic = graph::on_cycle(&adj, &comp, ncomp);
        let target = (0..self.num_states()).find(|&q| self.accepting[q] && reach[q] && cyclic[q])?;
        let stem = self.shortest_path(self.initial.iter().copied(), target, false)?;
        let cycle = self.shortest_path(std::iter::once(target), target, true)?;
        LassoWord::new(stem, cycle).ok().map(|w| w.normalize())
    }

    pub fn is_empty(&self) -> bool {
        self.find_accepted().is_none()
    }

    /// Letters of a shortest path from `sources` to `target`; with
    /// `nonempty`, the path must take at least one step.
    fn shortest_path(
        &self,
        sources: impl Iterator<Item = State>,
        target: State,
        nonempty: bool,
    ) -> Option<Vec<Letter>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(State, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for s in sources {
            if !nonempty && s == target {
                return Some(Vec::new());
            }
            if nonempty || !seen[s] {
                seen[s] = !nonempty;
                queue.push_back(s);
            }
        }
        while let Some(p) = queue.pop_front() {
            for &(a, q) in &self.trans[p] {
                if seen[q] {
                    continue;
                }
                seen[q] = true;
                parent[q] = Some((p, a));
                if q == target {
                    let mut path = Vec::new();
                    let mut cur = q;
                    loop {
                        let (prev, letter) = parent[cur].expect("bfs parent");
                        path.push(letter);
                        cur = prev;
                        let done = if nonempty {
                            cur == target
                        } else {
                            parent[cur].is_none()
                        };
                        if done {
                            break;
                        }
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(q);
            }
        }
        None
    }

    pub(crate) fn check_same_alphabet(&self, other: &BuchiAutomaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "[{}] vs [{}]",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests;
