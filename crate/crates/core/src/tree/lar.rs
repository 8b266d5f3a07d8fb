//! Latest-appearance-record conversion to parity form, and the product.
//!
//! The record only orders the colours of the current strongly connected
//! component of the state graph, since every path eventually stays inside a
//! single component.

use std::collections::HashMap;

use super::{Branch, Designated, MullerTreeAutomaton, ParityTreeAutomaton};
use crate::error::{capacity, Result};
use crate::graph;
use crate::word::State;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Record {
    state: State,
    /// Colours of the component, most recently visited first.
    order: Vec<u32>,
    /// Position of the current colour in the previous record; 0 right after
    /// entering the component, which happens only finitely often per path.
    hit: u32,
}

/// Parity automaton accepting the same trees as the automaton with the given
/// transitions, where a run is accepting iff on every path the set of
/// colours seen infinitely often satisfies `accept`.
fn appearance_record(
    source: &MullerTreeAutomaton,
    color: &[u32],
    accept: impl Fn(&[u32]) -> bool,
    budget: usize,
) -> Result<ParityTreeAutomaton> {
    let n = source.num_states();
    let adj: Vec<Vec<usize>> = source
        .trans
        .iter()
        .map(|ts| ts.iter().flat_map(|&(_, l, r)| [l, r]).collect())
        .collect();
    let (comp, ncomp) = graph::scc_ids(&adj);
    let mut comp_colors: Vec<Vec<u32>> = vec![Vec::new(); ncomp];
    for q in 0..n {
        comp_colors[comp[q]].push(color[q]);
    }
    for cs in &mut comp_colors {
        cs.sort_unstable();
        cs.dedup();
    }

    let mut accept_cache: HashMap<Vec<u32>, bool> = HashMap::new();
    let mut priority_of = |rec: &Record| -> u32 {
        let h = rec.hit as usize;
        let mut set = rec.order[..=h].to_vec();
        set.sort_unstable();
        let ok = *accept_cache.entry(set).or_insert_with_key(|s| accept(s));
        2 * (h as u32 + 1) + u32::from(!ok)
    };
    let enter = |q: State| -> Record {
        let c = color[q];
        let mut order = vec![c];
        order.extend(comp_colors[comp[q]].iter().copied().filter(|&d| d != c));
        Record {
            state: q,
            order,
            hit: 0,
        }
    };
    let step = |from: &Record, q: State| -> Record {
        if comp[q] != comp[from.state] {
            return enter(q);
        }
        let c = color[q];
        let pos = from.order.iter().position(|&d| d == c).expect("colour in component");
        let mut order = Vec::with_capacity(from.order.len());
        order.push(c);
        order.extend(from.order.iter().copied().filter(|&d| d != c));
        Record {
            state: q,
            order,
            hit: pos as u32,
        }
    };

    let mut ids: HashMap<Record, State> = HashMap::new();
    let mut records: Vec<Record> = Vec::new();
    let mut intern = |rec: Record, records: &mut Vec<Record>| -> Result<State> {
        if let Some(&id) = ids.get(&rec) {
            return Ok(id);
        }
        if records.len() >= budget {
            return Err(capacity("appearance-record parity conversion", budget));
        }
        let id = records.len();
        ids.insert(rec.clone(), id);
        records.push(rec);
        Ok(id)
    };
    let init = intern(enter(source.initial), &mut records)?;
    let mut trans: Vec<Vec<Branch>> = Vec::new();
    let mut next = 0;
    while next < records.len() {
        let rec = records[next].clone();
        next += 1;
        let mut out = Vec::new();
        for &(a, l, r) in &source.trans[rec.state] {
            let li = intern(step(&rec, l), &mut records)?;
            let ri = intern(step(&rec, r), &mut records)?;
            out.push((a, li, ri));
        }
        trans.push(out);
    }
    let priority = records.iter().map(&mut priority_of).collect();
    Ok(ParityTreeAutomaton::new(
        source.alphabet.clone(),
        init,
        trans
            .into_iter()
            .enumerate()
            .flat_map(|(p, ts)| ts.into_iter().map(move |(a, l, r)| (p, a, l, r))),
        priority,
    )
    .expect("well-formed record automaton"))
}

impl MullerTreeAutomaton {
    /// Parity form; automata designated by priorities convert verbatim.
    pub fn to_parity_with_budget(&self, budget: usize) -> Result<ParityTreeAutomaton> {
        match &self.designated {
            Designated::Priorities(p) => Ok(ParityTreeAutomaton {
                alphabet: self.alphabet.clone(),
                initial: self.initial,
                trans: self.trans.clone(),
                priority: p.clone(),
            }),
            Designated::Sets(_) => {
                let color: Vec<u32> = (0..self.num_states() as u32).collect();
                let designated = &self.designated;
                appearance_record(
                    self,
                    &color,
                    |set| {
                        let states: Vec<State> = set.iter().map(|&c| c as State).collect();
                        designated.contains(&states)
                    },
                    budget,
                )
            }
        }
    }
}
