//! Intersection of tree automata.
//!
//! The parity forms are paired synchronously. A path of the pairing is good
//! iff both priority sequences have an even maximum infinitely often; this
//! Muller condition over priority pairs is turned into a parity condition by
//! the Zielonka tree of the condition, built per strongly connected
//! component of the pairing.

use std::collections::HashMap;

use super::{Branch, MullerTreeAutomaton, ParityTreeAutomaton};
use crate::error::{capacity, Result};
use crate::graph;
use crate::word::{State, DEFAULT_BUDGET};

type Pair = (u32, u32);

fn both_even(set: &[Pair]) -> bool {
    let m1 = set.iter().map(|c| c.0).max().unwrap_or(0);
    let m2 = set.iter().map(|c| c.1).max().unwrap_or(0);
    m1 % 2 == 0 && m2 % 2 == 0
}

struct Node {
    label: Vec<Pair>,
    accepting: bool,
    depth: u32,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// Zielonka tree of [`both_even`] restricted to the colours `colors`.
struct ZielonkaTree {
    nodes: Vec<Node>,
    height: u32,
}

impl ZielonkaTree {
    fn new(colors: Vec<Pair>) -> Self {
        let mut tree = ZielonkaTree {
            nodes: Vec::new(),
            height: 0,
        };
        tree.add(colors, None, 0);
        tree
    }

    fn add(&mut self, label: Vec<Pair>, parent: Option<usize>, depth: u32) -> usize {
        let id = self.nodes.len();
        let accepting = both_even(&label);
        self.height = self.height.max(depth);
        self.nodes.push(Node {
            label: label.clone(),
            accepting,
            depth,
            parent,
            children: Vec::new(),
        });
        for sub in maximal_flips(&label, accepting) {
            let child = self.add(sub, Some(id), depth + 1);
            self.nodes[id].children.push(child);
        }
        id
    }

    fn leftmost_leaf(&self, mut n: usize) -> usize {
        while let Some(&c) = self.nodes[n].children.first() {
            n = c;
        }
        n
    }

    /// Successor leaf and emitted priority on reading `c` from `leaf`.
    fn step(&self, leaf: usize, c: Pair) -> (usize, u32) {
        let mut below = leaf;
        let mut n = leaf;
        while self.nodes[n].label.binary_search(&c).is_err() {
            below = n;
            n = self.nodes[n].parent.expect("root holds every colour");
        }
        let node = &self.nodes[n];
        let priority = 2 * (self.height - node.depth) + u32::from(!node.accepting);
        if n == leaf {
            return (leaf, priority);
        }
        let k = node.children.iter().position(|&x| x == below).expect("child on the branch");
        let next = node.children[(k + 1) % node.children.len()];
        (self.leftmost_leaf(next), priority)
    }
}

/// Inclusion-maximal subsets of `set` whose verdict differs from
/// `accepting`. The verdict depends only on the two maxima, so every such
/// subset is the part of `set` below some pair of thresholds.
fn maximal_flips(set: &[Pair], accepting: bool) -> Vec<Vec<Pair>> {
    let mut xs: Vec<u32> = set.iter().map(|c| c.0).collect();
    let mut ys: Vec<u32> = set.iter().map(|c| c.1).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let mut cands: Vec<Vec<Pair>> = Vec::new();
    for &x in &xs {
        for &y in &ys {
            let sub: Vec<Pair> = set.iter().copied().filter(|c| c.0 <= x && c.1 <= y).collect();
            if !sub.is_empty() && sub.len() < set.len() && both_even(&sub) != accepting {
                cands.push(sub);
            }
        }
    }
    cands.sort();
    cands.dedup();
    let subset = |a: &[Pair], b: &[Pair]| a.iter().all(|c| b.binary_search(c).is_ok());
    let maximal: Vec<Vec<Pair>> = cands
        .iter()
        .filter(|a| !cands.iter().any(|b| b.len() > a.len() && subset(a, b)))
        .cloned()
        .collect();
    maximal
}

impl MullerTreeAutomaton {
    /// Intersection of the two languages.
    pub fn product(&self, other: &MullerTreeAutomaton) -> Result<MullerTreeAutomaton> {
        self.product_with_budget(other, DEFAULT_BUDGET)
    }

    pub fn product_with_budget(&self, other: &MullerTreeAutomaton, budget: usize) -> Result<MullerTreeAutomaton> {
        self.check_same_alphabet(other)?;
        let a = self.to_parity_with_budget(budget)?;
        let b = other.to_parity_with_budget(budget)?;
        Ok(parity_product(&a, &b, budget)?.to_muller())
    }
}

fn parity_product(a: &ParityTreeAutomaton, b: &ParityTreeAutomaton, budget: usize) -> Result<ParityTreeAutomaton> {
    // synchronous pairing of reachable state pairs
    let mut ids: HashMap<(State, State), State> = HashMap::new();
    let mut pairs: Vec<(State, State)> = Vec::new();
    let mut intern = |key: (State, State), pairs: &mut Vec<(State, State)>| -> Result<State> {
        if let Some(&id) = ids.get(&key) {
            return Ok(id);
        }
        if pairs.len() >= budget {
            return Err(capacity("tree automaton product", budget));
        }
        ids.insert(key, pairs.len());
        pairs.push(key);
        Ok(pairs.len() - 1)
    };
    intern((a.initial, b.initial), &mut pairs)?;
    let mut trans: Vec<Vec<Branch>> = Vec::new();
    let mut next = 0;
    while next < pairs.len() {
        let (p, q) = pairs[next];
        next += 1;
        let mut out = Vec::new();
        for &(x, pl, pr) in &a.trans[p] {
            for &(_, ql, qr) in b.transitions_on(q, x) {
                let l = intern((pl, ql), &mut pairs)?;
                let r = intern((pr, qr), &mut pairs)?;
                out.push((x, l, r));
            }
        }
        trans.push(out);
    }
    let color: Vec<Pair> = pairs.iter().map(|&(p, q)| (a.priority[p], b.priority[q])).collect();

    let adj: Vec<Vec<usize>> = trans
        .iter()
        .map(|ts| ts.iter().flat_map(|&(_, l, r)| [l, r]).collect())
        .collect();
    let (comp, ncomp) = graph::scc_ids(&adj);
    let mut comp_colors: Vec<Vec<Pair>> = vec![Vec::new(); ncomp];
    for (s, &c) in color.iter().enumerate() {
        comp_colors[comp[s]].push(c);
    }
    let trees: Vec<ZielonkaTree> = comp_colors
        .into_iter()
        .map(|mut cs| {
            cs.sort_unstable();
            cs.dedup();
            ZielonkaTree::new(cs)
        })
        .collect();

    // states: (pair, leaf of its component's tree, emitted priority)
    let mut ids: HashMap<(State, usize, u32), State> = HashMap::new();
    let mut states: Vec<(State, usize, u32)> = Vec::new();
    let mut intern = |key: (State, usize, u32), states: &mut Vec<(State, usize, u32)>| -> Result<State> {
        if let Some(&id) = ids.get(&key) {
            return Ok(id);
        }
        if states.len() >= budget {
            return Err(capacity("tree automaton product", budget));
        }
        ids.insert(key, states.len());
        states.push(key);
        Ok(states.len() - 1)
    };
    let enter = |s: State| -> (State, usize, u32) {
        let t = &trees[comp[s]];
        let (leaf, prio) = t.step(t.leftmost_leaf(0), color[s]);
        (s, leaf, prio)
    };
    let step = |from: (State, usize, u32), s: State| -> (State, usize, u32) {
        if comp[s] != comp[from.0] {
            return enter(s);
        }
        let (leaf, prio) = trees[comp[s]].step(from.1, color[s]);
        (s, leaf, prio)
    };
    intern(enter(0), &mut states)?;
    let mut out_trans = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let cur = states[next];
        next += 1;
        for &(x, l, r) in &trans[cur.0] {
            let li = intern(step(cur, l), &mut states)?;
            let ri = intern(step(cur, r), &mut states)?;
            out_trans.push((next - 1, x, li, ri));
        }
    }
    let priority = states.iter().map(|s| s.2).collect();
    Ok(ParityTreeAutomaton::new(a.alphabet.clone(), 0, out_trans, priority).expect("well-formed product"))
}
