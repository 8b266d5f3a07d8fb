//! Büchi complementation.
//!
//! The general route is the rank-based construction restricted to tight level
//! rankings: an initial subset-construction phase guesses the level at which
//! the ranking of the rejecting run DAG becomes tight, after which a ranking
//! phase with a breakpoint set of even-ranked states checks that every path
//! eventually gets trapped in an odd rank.

use std::collections::HashMap;

use super::{BuchiAutomaton, State, DEFAULT_BUDGET};
use crate::alphabet::Letter;
use crate::error::{capacity, Result};

const NO_RANK: u8 = u8::MAX;

/// Largest automaton the rank-based construction accepts (ranks fit in `u8`).
const MAX_RANKED_STATES: usize = 120;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Macro {
    Subset(Vec<bool>),
    Ranked { rank: Vec<u8>, breakpoint: Vec<bool> },
}

impl BuchiAutomaton {
    pub fn complement(&self) -> Result<BuchiAutomaton> {
        self.complement_with_budget(DEFAULT_BUDGET)
    }

    /// Complement. Deterministic inputs take the linear co-Büchi dual; all
    /// others go through [`BuchiAutomaton::complement_rank_based`].
    pub fn complement_with_budget(&self, budget: usize) -> Result<BuchiAutomaton> {
        let a = self.reduce();
        if a.initial.is_empty() {
            return Ok(BuchiAutomaton::universal(a.alphabet.clone()));
        }
        let c = if a.is_deterministic() {
            a.complement_deterministic()
        } else {
            a.complement_rank_based(budget)?
        };
        Ok(c.reduce())
    }

    /// Complement of a deterministic automaton: the unique run (completed
    /// with a rejecting sink) must eventually avoid accepting states.
    pub(crate) fn complement_deterministic(&self) -> BuchiAutomaton {
        debug_assert!(self.is_deterministic());
        let n = self.num_states();
        let sink = n;
        let step = |q: State, a: Letter| -> State {
            if q == sink {
                sink
            } else {
                self.successors(q, a).next().unwrap_or(sink)
            }
        };
        let accepting_src = |q: State| q != sink && self.accepting[q];
        // states 0..=n: watching copy; n+1+q: avoiding copy for q in 0..=n
        let total = 2 * (n + 1);
        let mut trans = vec![Vec::new(); total];
        let mut accepting = vec![false; total];
        for q in 0..=n {
            accepting[n + 1 + q] = !accepting_src(q);
            for a in self.alphabet.letters() {
                let q2 = step(q, a);
                trans[q].push((a, q2));
                if !accepting_src(q2) {
                    trans[q].push((a, n + 1 + q2));
                    if !accepting_src(q) {
                        trans[n + 1 + q].push((a, n + 1 + q2));
                    }
                }
            }
        }
        let initial = match self.initial.first() {
            Some(&q) => vec![q],
            None => vec![sink],
        };
        BuchiAutomaton::from_parts(self.alphabet.clone(), initial, accepting, trans).trim()
    }

    /// Rank-based complementation with tight rankings (no pre- or
    /// post-processing). Fails with a capacity error rather than exceed
    /// `budget` states.
    pub fn complement_rank_based(&self, budget: usize) -> Result<BuchiAutomaton> {
        let n = self.num_states();
        if n > MAX_RANKED_STATES {
            return Err(capacity(
                format!("rank-based complement of a {n}-state automaton"),
                budget,
            ));
        }
        let mut builder = Builder {
            aut: self,
            ids: HashMap::new(),
            states: Vec::new(),
            trans: Vec::new(),
            budget,
        };

        let mut init_set = vec![false; n];
        for &q in &self.initial {
            init_set[q] = true;
        }
        let mut initial = vec![builder.intern(Macro::Subset(init_set.clone()))?];
        for rank in tight_rankings(self, &init_set, &vec![NO_RANK; n], None) {
            initial.push(builder.intern(Macro::Ranked {
                rank,
                breakpoint: vec![false; n],
            })?);
        }

        let mut next = 0;
        while next < builder.states.len() {
            let src = next;
            next += 1;
            let current = builder.states[src].clone();
            for a in self.alphabet.letters() {
                let succs = successors_of(self, &current, a);
                for m in succs {
                    let dst = builder.intern(m)?;
                    builder.trans[src].push((a, dst));
                }
            }
        }

        let accepting = builder
            .states
            .iter()
            .map(|m| match m {
                Macro::Subset(_) => false,
                Macro::Ranked { breakpoint, .. } => breakpoint.iter().all(|b| !b),
            })
            .collect();
        initial.sort_unstable();
        initial.dedup();
        Ok(BuchiAutomaton::from_parts(
            self.alphabet.clone(),
            initial,
            accepting,
            builder.trans,
        )
        .trim())
    }
}

struct Builder<'a> {
    aut: &'a BuchiAutomaton,
    ids: HashMap<Macro, State>,
    states: Vec<Macro>,
    trans: Vec<Vec<(Letter, State)>>,
    budget: usize,
}

impl Builder<'_> {
    fn intern(&mut self, m: Macro) -> Result<State> {
        if let Some(&id) = self.ids.get(&m) {
            return Ok(id);
        }
        if self.states.len() >= self.budget {
            return Err(capacity(
                format!(
                    "rank-based complement of a {}-state automaton",
                    self.aut.num_states()
                ),
                self.budget,
            ));
        }
        let id = self.states.len();
        self.ids.insert(m.clone(), id);
        self.states.push(m);
        self.trans.push(Vec::new());
        Ok(id)
    }
}

fn successors_of(aut: &BuchiAutomaton, m: &Macro, a: Letter) -> Vec<Macro> {
    let n = aut.num_states();
    match m {
        Macro::Subset(set) => {
            let mut next = vec![false; n];
            for q in (0..n).filter(|&q| set[q]) {
                for q2 in aut.successors(q, a) {
                    next[q2] = true;
                }
            }
            let mut out = Vec::new();
            for rank in tight_rankings(aut, &next, &vec![NO_RANK; n], None) {
                out.push(Macro::Ranked {
                    rank,
                    breakpoint: vec![false; n],
                });
            }
            out.push(Macro::Subset(next));
            out
        }
        Macro::Ranked { rank, breakpoint } => {
            // bound[q'] = least rank among predecessors of q'
            let mut bound = vec![NO_RANK; n];
            let mut next = vec![false; n];
            let mut from_breakpoint = vec![false; n];
            for q in (0..n).filter(|&q| rank[q] != NO_RANK) {
                for q2 in aut.successors(q, a) {
                    next[q2] = true;
                    bound[q2] = bound[q2].min(rank[q]);
                    if breakpoint[q] {
                        from_breakpoint[q2] = true;
                    }
                }
            }
            let empty_breakpoint = breakpoint.iter().all(|b| !b);
            tight_rankings(aut, &next, &bound, Some(()))
                .into_iter()
                .map(|r| {
                    let bp = (0..n)
                        .map(|q| {
                            r[q] != NO_RANK
                                && r[q] % 2 == 0
                                && (empty_breakpoint || from_breakpoint[q])
                        })
                        .collect();
                    Macro::Ranked {
                        rank: r,
                        breakpoint: bp,
                    }
                })
                .collect()
        }
    }
}

/// All tight level rankings with domain `set`: accepting states get even
/// ranks, the maximal rank `r` is odd and every odd rank up to `r` is used.
/// With `bounded`, each state's rank is capped by `bound`.
fn tight_rankings(
    aut: &BuchiAutomaton,
    set: &[bool],
    bound: &[u8],
    bounded: Option<()>,
) -> Vec<Vec<u8>> {
    let n = aut.num_states();
    let members: Vec<State> = (0..n).filter(|&q| set[q]).collect();
    let mut out = Vec::new();
    if members.is_empty() {
        out.push(vec![NO_RANK; n]);
        return out;
    }
    let max_rank = 2 * members.len() - 1;
    let mut r = 1;
    while r <= max_rank {
        let caps: Vec<usize> = members
            .iter()
            .map(|&q| match bounded {
                Some(()) => (bound[q] as usize).min(r),
                None => r,
            })
            .collect();
        let mut ranks = vec![NO_RANK; n];
        let mut used = vec![0usize; r + 1];
        enumerate(aut, &members, &caps, r, 0, &mut ranks, &mut used, &mut out);
        r += 2;
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    aut: &BuchiAutomaton,
    members: &[State],
    caps: &[usize],
    r: usize,
    i: usize,
    ranks: &mut Vec<u8>,
    used: &mut Vec<usize>,
    out: &mut Vec<Vec<u8>>,
) {
    let missing = (1..=r).step_by(2).filter(|&o| used[o] == 0).count();
    if missing > members.len() - i {
        return;
    }
    if i == members.len() {
        out.push(ranks.clone());
        return;
    }
    let q = members[i];
    let step = if aut.accepting[q] { 2 } else { 1 };
    let mut v = 0;
    while v <= caps[i] {
        ranks[q] = v as u8;
        used[v] += 1;
        enumerate(aut, members, caps, r, i + 1, ranks, used, out);
        used[v] -= 1;
        v += step;
    }
    ranks[q] = NO_RANK;
}
