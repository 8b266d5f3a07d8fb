//! Union, projection, cylindrification, relabelling and the leftmost-branch
//! lift of word automata.

use super::{Branch, Designated, MullerTreeAutomaton};
use crate::alphabet::{Alphabet, Letter, LetterMap};
use crate::error::Result;
use crate::word::{BuchiAutomaton, State, DEFAULT_BUDGET};

impl MullerTreeAutomaton {
    /// Union via a fresh initial state that may start as either operand.
    pub fn union(&self, other: &MullerTreeAutomaton) -> Result<MullerTreeAutomaton> {
        self.check_same_alphabet(other)?;
        let (a, b) = match (&self.designated, &other.designated) {
            (Designated::Sets(_), Designated::Sets(_)) => (self.clone(), other.clone()),
            _ => (
                self.to_parity_with_budget(DEFAULT_BUDGET)?.to_muller(),
                other.to_parity_with_budget(DEFAULT_BUDGET)?.to_muller(),
            ),
        };
        let off = a.num_states();
        let shift = |ts: &Vec<Branch>| -> Vec<Branch> {
            ts.iter().map(|&(x, l, r)| (x, l + off, r + off)).collect()
        };
        let mut trans = a.trans.clone();
        trans.extend(b.trans.iter().map(shift));
        let mut fresh = a.trans[a.initial].clone();
        fresh.extend(shift(&b.trans[b.initial]));
        fresh.sort_unstable();
        fresh.dedup();
        trans.push(fresh);
        // the fresh state has no incoming edge, so it never recurs
        let designated = match (a.designated, b.designated) {
            (Designated::Sets(mut sa), Designated::Sets(sb)) => {
                sa.extend(sb.into_iter().map(|s| s.into_iter().map(|q| q + off).collect()));
                sa.sort();
                Designated::Sets(sa)
            }
            (Designated::Priorities(mut pa), Designated::Priorities(pb)) => {
                pa.extend(pb);
                pa.push(0);
                Designated::Priorities(pa)
            }
            _ => unreachable!("both operands share a designation kind"),
        };
        Ok(MullerTreeAutomaton {
            alphabet: self.alphabet.clone(),
            initial: trans.len() - 1,
            trans,
            designated,
        })
    }

    fn with_letters(&self, alphabet: Alphabet, f: impl Fn(Letter) -> Vec<Letter>) -> MullerTreeAutomaton {
        let trans = self
            .trans
            .iter()
            .map(|ts| {
                let mut out: Vec<Branch> = ts
                    .iter()
                    .flat_map(|&(a, l, r)| f(a).into_iter().map(move |b| (b, l, r)))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        MullerTreeAutomaton {
            alphabet,
            initial: self.initial,
            trans,
            designated: self.designated.clone(),
        }
    }

    /// Existential projection: erases the given track.
    pub fn project(&self, track: usize) -> Result<MullerTreeAutomaton> {
        let target = self.alphabet.without_track(track)?;
        let keep: Vec<usize> = (0..self.alphabet.arity()).filter(|&t| t != track).collect();
        let src = &self.alphabet;
        Ok(self.with_letters(target.clone(), |a| vec![src.restrict(a, &keep, &target)]))
    }

    /// Inserts unconstrained tracks (those of `new_track`) at `position`.
    pub fn cylindrify(&self, position: usize, new_track: &Alphabet) -> Result<MullerTreeAutomaton> {
        let target = self.alphabet.with_track(position, new_track)?;
        let keep: Vec<usize> = (0..target.arity())
            .filter(|&t| t < position || t >= position + new_track.arity())
            .collect();
        let map = LetterMap::from_fn(target.clone(), |l| target.restrict(l, &keep, &self.alphabet));
        self.relabel(&map)
    }

    /// Inverse image under the letter map: the result reads letters of
    /// `map.target()` and accepts `t` iff `self` accepts `map(t)`.
    pub fn relabel(&self, map: &LetterMap) -> Result<MullerTreeAutomaton> {
        map.check_source(&self.alphabet)?;
        let mut preimage: Vec<Vec<Letter>> = vec![Vec::new(); self.alphabet.size()];
        for b in map.target().letters() {
            preimage[map.apply(b).index()].push(b);
        }
        let size: usize = self.transitions().map(|(_, a, _, _)| preimage[a.index()].len()).sum();
        if size > crate::alphabet::MAX_TRANSITIONS {
            return Err(crate::error::capacity(
                format!("relabelling to {size} transitions"),
                crate::alphabet::MAX_TRANSITIONS,
            ));
        }
        Ok(self.with_letters(map.target().clone(), |a| preimage[a.index()].clone()))
    }

    /// Trees whose leftmost branch, read from the root, is accepted by `b`;
    /// all other labels are unconstrained.
    pub fn lift_leftmost(b: &BuchiAutomaton) -> MullerTreeAutomaton {
        let n = b.num_states();
        let free: State = n;
        let start: State = n + 1;
        let letters: Vec<Letter> = b.alphabet().letters().collect();
        let mut trans: Vec<Vec<Branch>> = (0..n)
            .map(|q| b.transitions_from(q).iter().map(|&(a, q2)| (a, q2, free)).collect())
            .collect();
        trans.push(letters.iter().map(|&a| (a, free, free)).collect());
        let mut init: Vec<Branch> = b.initial().iter().flat_map(|&q| trans[q].clone()).collect();
        init.sort_unstable();
        init.dedup();
        trans.push(init);
        let mut priority: Vec<u32> = (0..n).map(|q| if b.is_accepting(q) { 2 } else { 1 }).collect();
        priority.push(2);
        priority.push(0);
        MullerTreeAutomaton {
            alphabet: b.alphabet().clone(),
            initial: start,
            trans,
            designated: Designated::Priorities(priority),
        }
    }
}
