//! Closure operations: intersection, union, projection, cylindrification and
//! letter-to-letter inverse images.

use std::collections::HashMap;

use super::{BuchiAutomaton, State, DEFAULT_BUDGET};
use crate::alphabet::{Alphabet, Letter, LetterMap};
use crate::error::{capacity, Result};

impl BuchiAutomaton {
    /// Intersection of the two languages.
    pub fn product(&self, other: &BuchiAutomaton) -> Result<BuchiAutomaton> {
        self.product_with_budget(other, DEFAULT_BUDGET)
    }

    /// Synchronized product. When one side is weak (every strongly connected
    /// component uniformly accepting or rejecting) a flagless pairing is
    /// exact; otherwise the classic two-copy construction tracks whose
    /// accepting set is awaited next.
    pub fn product_with_budget(&self, other: &BuchiAutomaton, budget: usize) -> Result<BuchiAutomaton> {
        self.check_same_alphabet(other)?;
        if other.is_trivially_universal() {
            return Ok(self.clone());
        }
        if self.is_trivially_universal() {
            return Ok(other.clone());
        }
        let weak_left = self.is_weak();
        let weak_right = !weak_left && other.is_weak();
        let flagged = !weak_left && !weak_right;

        let mut ids: HashMap<(State, State, u8), State> = HashMap::new();
        let mut stack: Vec<(State, State, u8)> = Vec::new();
        let mut trans: Vec<Vec<(Letter, State)>> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();

        let intern = |key: (State, State, u8),
                          ids: &mut HashMap<(State, State, u8), State>,
                          stack: &mut Vec<(State, State, u8)>,
                          trans: &mut Vec<Vec<(Letter, State)>>,
                          accepting: &mut Vec<bool>|
         -> Result<State> {
            if let Some(&id) = ids.get(&key) {
                return Ok(id);
            }
            if trans.len() >= budget {
                return Err(capacity("Büchi product", budget));
            }
            let (p, q, f) = key;
            let acc = if flagged {
                f == 1 && other.accepting[q]
            } else {
                self.accepting[p] && other.accepting[q]
            };
            let id = trans.len();
            ids.insert(key, id);
            trans.push(Vec::new());
            accepting.push(acc);
            stack.push(key);
            Ok(id)
        };

        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                initial.push(intern((p, q, 0), &mut ids, &mut stack, &mut trans, &mut accepting)?);
            }
        }
        while let Some((p, q, f)) = stack.pop() {
            let src = ids[&(p, q, f)];
            let nf = if !flagged {
                0
            } else if f == 0 {
                u8::from(self.accepting[p])
            } else {
                u8::from(!other.accepting[q])
            };
            let left = &self.trans[p];
            let right = &other.trans[q];
            let mut out = Vec::new();
            // merge-join on letters
            let (mut i, mut j) = (0, 0);
            while i < left.len() && j < right.len() {
                let (a, b) = (left[i].0, right[j].0);
                if a < b {
                    i += 1;
                } else if b < a {
                    j += 1;
                } else {
                    let i_end = i + left[i..].iter().take_while(|t| t.0 == a).count();
                    let j_end = j + right[j..].iter().take_while(|t| t.0 == a).count();
                    for &(_, p2) in &left[i..i_end] {
                        for &(_, q2) in &right[j..j_end] {
                            out.push((a, (p2, q2, nf)));
                        }
                    }
                    i = i_end;
                    j = j_end;
                }
            }
            for (a, key) in out {
                let dst = intern(key, &mut ids, &mut stack, &mut trans, &mut accepting)?;
                trans[src].push((a, dst));
            }
        }
        initial.sort_unstable();
        initial.dedup();
        Ok(BuchiAutomaton::from_parts(self.alphabet.clone(), initial, accepting, trans).trim())
    }

    /// Union of the two languages (disjoint union of the automata).
    pub fn union(&self, other: &BuchiAutomaton) -> Result<BuchiAutomaton> {
        self.check_same_alphabet(other)?;
        let off = self.num_states();
        let mut trans = self.trans.clone();
        trans.extend(
            other
                .trans
                .iter()
                .map(|ts| ts.iter().map(|&(a, q)| (a, q + off)).collect()),
        );
        let mut accepting = self.accepting.clone();
        accepting.extend(other.accepting.iter().copied());
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|q| q + off));
        Ok(BuchiAutomaton::from_parts(self.alphabet.clone(), initial, accepting, trans))
    }

    /// Existential projection: erases the given track.
    pub fn project(&self, track: usize) -> Result<BuchiAutomaton> {
        let target = self.alphabet.without_track(track)?;
        let keep: Vec<usize> = (0..self.alphabet.arity()).filter(|&t| t != track).collect();
        let image: Vec<Letter> = self
            .alphabet
            .letters()
            .map(|l| self.alphabet.restrict(l, &keep, &target))
            .collect();
        let trans = self
            .trans
            .iter()
            .map(|ts| ts.iter().map(|&(a, q)| (image[a.index()], q)).collect())
            .collect();
        Ok(BuchiAutomaton::from_parts(
            target,
            self.initial.clone(),
            self.accepting.clone(),
            trans,
        ))
    }

    /// Inserts unconstrained tracks (those of `new_track`) at `position`.
    pub fn cylindrify(&self, position: usize, new_track: &Alphabet) -> Result<BuchiAutomaton> {
        let target = self.alphabet.with_track(position, new_track)?;
        let keep: Vec<usize> = (0..target.arity())
            .filter(|&t| t < position || t >= position + new_track.arity())
            .collect();
        let map = LetterMap::from_fn(target.clone(), |l| target.restrict(l, &keep, &self.alphabet));
        self.relabel(&map)
    }

    /// Inverse image under the letter-to-letter map: the result reads letters
    /// of `map.target()` and accepts `w` iff `self` accepts `map(w)`.
    pub fn relabel(&self, map: &LetterMap) -> Result<BuchiAutomaton> {
        map.check_source(&self.alphabet)?;
        let mut preimage: Vec<Vec<Letter>> = vec![Vec::new(); self.alphabet.size()];
        for b in map.target().letters() {
            preimage[map.apply(b).index()].push(b);
        }
        let size: usize = self.transitions().map(|(_, a, _)| preimage[a.index()].len()).sum();
        if size > crate::alphabet::MAX_TRANSITIONS {
            return Err(capacity(
                format!("relabelling to {size} transitions"),
                crate::alphabet::MAX_TRANSITIONS,
            ));
        }
        let trans = self
            .trans
            .iter()
            .map(|ts| {
                ts.iter()
                    .flat_map(|&(a, q)| preimage[a.index()].iter().map(move |&b| (b, q)))
                    .collect()
            })
            .collect();
        Ok(BuchiAutomaton::from_parts(
            map.target().clone(),
            self.initial.clone(),
            self.accepting.clone(),
            trans,
        ))
    }
}
