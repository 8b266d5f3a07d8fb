//! The boolean algebras P(ℕ)/Fin (word kind) and P({l,r}*)/I (tree kind)
//! presented over characteristic functions, and the splitting of non-zero
//! elements into strictly smaller non-zero parts.
//!
//! Every relation is the inverse image of the ideal under a letter map: two
//! sets are equal modulo the ideal iff their symmetric difference lies in
//! it, and `z = x ∩ y` holds modulo the ideal iff `(x ∩ y) Δ z` does.

use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Letter, LetterMap};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation, TreePresentation, WordPresentation, EQUALITY};
use crate::tree::{Dir, RegularTree};
use crate::word::{LassoWord, DEFAULT_BUDGET};

use super::antichain::{
    antichain_oracle, build_antichain_automaton, build_no_antichain_automaton, AntichainVerdict,
};
use super::fin::build_fin_automaton;

/// Names, arities and defining bit functions of the signature.
type BitFn = fn(&[usize]) -> usize;

const SIGNATURE: [(&str, usize, BitFn); 6] = [
    ("zero", 1, |b| b[0]),
    ("one", 1, |b| 1 - b[0]),
    ("subset", 2, |b| b[0] & (1 - b[1])),
    ("cap", 3, |b| (b[0] & b[1]) ^ b[2]),
    ("cup", 3, |b| (b[0] | b[1]) ^ b[2]),
    ("neg", 2, |b| (1 - b[0]) ^ b[1]),
];

const XOR: BitFn = |b| b[0] ^ b[1];

fn bit_map(k: usize, f: BitFn) -> Result<LetterMap> {
    let target = Alphabet::binary().power(k)?;
    let t = target.clone();
    Ok(LetterMap::from_fn(target, move |l| Letter(f(&t.decode(l)) as u32)))
}

/// Presentation whose relations are inverse images of `ideal`; with
/// `co_ideal`, the inverse images of it are registered as complements.
fn ideal_presentation<A: Automaton>(ideal: &A, co_ideal: Option<&A>) -> Result<Presentation<A>> {
    let base = Alphabet::binary();
    let equality = ideal.relabel_by(&bit_map(2, XOR)?)?;
    let mut relations = Vec::new();
    let mut complements = Vec::new();
    if let Some(c) = co_ideal {
        complements.push((EQUALITY.to_string(), c.relabel_by(&bit_map(2, XOR)?)?));
    }
    for (name, arity, f) in SIGNATURE {
        let map = bit_map(arity, f)?;
        relations.push(Relation {
            name: name.to_string(),
            arity,
            automaton: ideal.relabel_by(&map)?,
        });
        if let Some(c) = co_ideal {
            complements.push((name.to_string(), c.relabel_by(&map)?));
        }
    }
    Presentation::new(base.clone(), A::universal(base), equality, relations, complements)
}

/// P(ℕ)/Fin with zero, one, subset (almost inclusion), cap, cup and neg;
/// complements are registered from the complement of the Fin automaton.
pub fn build_b1_presentation() -> Result<WordPresentation> {
    let fin = build_fin_automaton();
    let co_fin = fin.complement_with_budget(DEFAULT_BUDGET)?;
    ideal_presentation(&fin, Some(&co_fin))
}

/// P({l,r}*)/I over the same signature, with complements from the
/// infinite-antichain automaton.
pub fn build_b2_presentation() -> Result<TreePresentation> {
    ideal_presentation(&build_no_antichain_automaton(), Some(&build_antichain_automaton()))
}

/// Whether the named atom fails, decided by the registered complement
/// and cross-checked against the atom itself.
pub fn atom_fails<A: Automaton>(p: &Presentation<A>, name: &str, elems: &[&A::Input]) -> Result<bool> {
    let neg = p
        .complement_of(name)
        .ok_or_else(|| Error::Unsupported(format!("no complement registered for {name}")))?;
    let out = neg.member(&p.zip(elems)?)?;
    if out == p.holds(name, elems)? {
        return Err(Error::Invariant(format!(
            "{name} and its registered complement agree on a tuple"
        )));
    }
    Ok(out)
}

/// Checks `0 ⊂ [z] ⊂ [x]` with atoms and negated atoms of `p`.
fn check_strict<A: Automaton>(p: &Presentation<A>, z: &A::Input, x: &A::Input) -> Result<()> {
    let ok = p.holds("subset", &[z, x])?
        && atom_fails(p, "zero", &[z])?
        && atom_fails(p, EQUALITY, &[z, x])?;
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant("split is not strictly between 0 and x".into()))
    }
}

/// For a word with infinitely many 1s, keeps the 1s of every other loop
/// iteration (and none of the stem).
pub fn atomless_split_word(x: &LassoWord) -> Result<LassoWord> {
    let one = Letter(1);
    if !x.cycle().contains(&one) {
        return Err(Error::ZeroElement);
    }
    let zero = Letter(0);
    let stem = vec![zero; x.stem().len()];
    let mut cycle = x.cycle().to_vec();
    cycle.extend(std::iter::repeat_n(zero, x.cycle().len()));
    let z = LassoWord::new(stem, cycle)?.normalize();
    check_strict(&build_b1_presentation()?, &z, x)?;
    Ok(z)
}

/// For a tree whose 1-set has an infinite antichain `{p πⁿ d' σ}` (a loop
/// `π` leaving along `d`, and a path `σ` to a 1 below the other child
/// `d'`), returns the tree of `{p π²ⁿ d' σ}`.
pub fn atomless_split_tree(x: &RegularTree) -> Result<RegularTree> {
    if antichain_oracle(x)? != AntichainVerdict::Infinite {
        return Err(Error::ZeroElement);
    }
    let (prefix, cycle, rest) = antichain_pattern(x)
        .ok_or_else(|| Error::Invariant("no departure cycle in an infinite verdict".into()))?;
    let z = antichain_tree_of(&prefix, &cycle, &rest, 2);
    check_strict(&build_b2_presentation()?, &z, x)?;
    Ok(z)
}

/// Shortest directions from `from` to a node satisfying `goal`, taking at
/// least `min_steps` (0 or 1) steps.
fn path_to(t: &RegularTree, from: usize, min_steps: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<Dir>> {
    if min_steps == 0 && goal(from) {
        return Some(Vec::new());
    }
    let n = t.num_nodes();
    let mut parent: Vec<Option<(usize, Dir)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for d in [Dir::L, Dir::R] {
            let w = t.child(v, d);
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some((v, d));
            if goal(w) {
                let mut path = Vec::new();
                let mut cur = w;
                while let Some((p, d)) = parent[cur] {
                    path.push(d);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// `(p, π, d'σ)`: a loop `π` at the node reached by `p` and a path `d'σ` to
/// a 1 whose first step differs from the first step of `π`.
fn antichain_pattern(t: &RegularTree) -> Option<(Vec<Dir>, Vec<Dir>, Vec<Dir>)> {
    let reach_from = |v: usize| {
        let mut seen = vec![false; t.num_nodes()];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in [t.left(u), t.right(u)] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let from_root = {
        let mut r = reach_from(t.root());
        r[t.root()] = true;
        r
    };
    for u in (0..t.num_nodes()).filter(|&u| from_root[u]) {
        for (d, other) in [(Dir::L, Dir::R), (Dir::R, Dir::L)] {
            let next = t.child(u, d);
            let Some(back) = path_to(t, next, 0, |v| v == u) else {
                continue;
            };
            let Some(sigma) = path_to(t, t.child(u, other), 0, |v| t.label(v) == Letter(1)) else {
                continue;
            };
            let prefix = path_to(t, t.root(), 0, |v| v == u).expect("reachable");
            let mut cycle = vec![d];
            cycle.extend(back);
            let mut rest = vec![other];
            rest.extend(sigma);
            return Some((prefix, cycle, rest));
        }
    }
    None
}

/// The tree of `{p πᵏⁿ r | n ≥ 0}` where `r` leaves `π` at its first step.
fn antichain_tree_of(prefix: &[Dir], cycle: &[Dir], rest: &[Dir], k: usize) -> RegularTree {
    const ZERO: usize = 0;
    let mut nodes: Vec<(Letter, usize, usize)> = vec![(Letter(0), ZERO, ZERO)];
    let push = |nodes: &mut Vec<(Letter, usize, usize)>| {
        nodes.push((Letter(0), ZERO, ZERO));
        nodes.len() - 1
    };
    let set = |nodes: &mut Vec<(Letter, usize, usize)>, v: usize, d: Dir, w: usize| match d {
        Dir::L => nodes[v].1 = w,
        Dir::R => nodes[v].2 = w,
    };
    let root = push(&mut nodes);
    let mut cur = root;
    for &d in prefix {
        let w = push(&mut nodes);
        set(&mut nodes, cur, d, w);
        cur = w;
    }
    let loop_start = cur;
    let steps: Vec<Dir> = (0..k).flat_map(|_| cycle.iter().copied()).collect();
    for (i, &d) in steps.iter().enumerate() {
        let w = if i + 1 == steps.len() { loop_start } else { push(&mut nodes) };
        set(&mut nodes, cur, d, w);
        cur = w;
    }
    cur = loop_start;
    for &d in rest {
        let w = push(&mut nodes);
        set(&mut nodes, cur, d, w);
        cur = w;
    }
    nodes[cur].0 = Letter(1);
    RegularTree::new(nodes, root).expect("well-formed").canonical()
}

/// Element of both algebras used by the instance catalogue, given by its
/// word and tree representatives (a finite/infinite 1-set in the word case
/// corresponds to a set in/outside I in the tree case).
#[derive(Clone, Debug)]
pub struct Pair {
    pub name: String,
    pub word: LassoWord,
    pub tree: RegularTree,
}

/// A variable-free atom instance and its expected truth value.
#[derive(Clone, Debug)]
pub struct InstanceCheck {
    pub relation: &'static str,
    pub args: Vec<Pair>,
    pub negated: bool,
}

impl InstanceCheck {
    pub fn describe(&self) -> String {
        let args: Vec<&str> = self.args.iter().map(|a| a.name.as_str()).collect();
        let bang = if self.negated { "!" } else { "" };
        format!("{bang}{}({})", self.relation, args.join(","))
    }
}

/// Outcome of one catalogue entry in both algebras.
#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub check: String,
    pub word: bool,
    pub tree: bool,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.word && self.tree
    }
}

fn word(s: &str) -> LassoWord {
    LassoWord::parse(s, &Alphabet::binary()).expect("valid lasso")
}

/// The twenty catalogue checks over constants, chain and antichain
/// witnesses and split outputs.
pub fn instance_catalogue() -> Result<Vec<InstanceCheck>> {
    use super::antichain::{antichain_tree, chain_tree};
    let pair = |name: &str, w: LassoWord, t: RegularTree| Pair {
        name: name.to_string(),
        word: w,
        tree: t,
    };
    let zero = pair("0", word("|0"), RegularTree::constant(Letter(0)));
    let one = pair("1", word("|1"), RegularTree::constant(Letter(1)));
    let small = pair("c1", word("1 1|0"), chain_tree(1));
    let small3 = pair("c3", word("0 1 1 1|0"), chain_tree(3));
    let big = pair("a", word("|1 0"), antichain_tree());
    let split_one = pair(
        "s1",
        atomless_split_word(&one.word)?,
        atomless_split_tree(&one.tree)?,
    );
    let split_big = pair(
        "sa",
        atomless_split_word(&big.word)?,
        atomless_split_tree(&big.tree)?,
    );
    let pos = |relation, args: Vec<&Pair>| InstanceCheck {
        relation,
        args: args.into_iter().cloned().collect(),
        negated: false,
    };
    let neg = |relation, args: Vec<&Pair>| InstanceCheck {
        relation,
        args: args.into_iter().cloned().collect(),
        negated: true,
    };
    Ok(vec![
        pos("zero", vec![&zero]),
        pos("one", vec![&one]),
        neg("zero", vec![&one]),
        pos("zero", vec![&small]),
        pos("zero", vec![&small3]),
        neg("zero", vec![&big]),
        pos(EQUALITY, vec![&small, &zero]),
        pos(EQUALITY, vec![&small, &small3]),
        neg(EQUALITY, vec![&big, &zero]),
        neg(EQUALITY, vec![&big, &one]),
        pos("subset", vec![&big, &one]),
        neg("subset", vec![&one, &big]),
        pos("neg", vec![&zero, &one]),
        pos("cap", vec![&big, &small, &zero]),
        pos("cup", vec![&big, &small, &big]),
        pos("subset", vec![&split_one, &one]),
        neg("zero", vec![&split_one]),
        neg(EQUALITY, vec![&split_one, &one]),
        pos("subset", vec![&split_big, &big]),
        neg(EQUALITY, vec![&split_big, &big]),
    ])
}

fn instance_holds<A: Automaton>(p: &Presentation<A>, c: &InstanceCheck, args: &[&A::Input]) -> Result<bool> {
    if c.negated {
        atom_fails(p, c.relation, args)
    } else {
        p.holds(c.relation, args)
    }
}

/// Evaluates the catalogue in both algebras.
pub fn run_instance_catalogue() -> Result<Vec<InstanceOutcome>> {
    let b1 = build_b1_presentation()?;
    let b2 = build_b2_presentation()?;
    instance_catalogue()?
        .iter()
        .map(|c| {
            let words: Vec<&LassoWord> = c.args.iter().map(|a| &a.word).collect();
            let trees: Vec<&RegularTree> = c.args.iter().map(|a| &a.tree).collect();
            Ok(InstanceOutcome {
                check: c.describe(),
                word: instance_holds(&b1, c, &words)?,
                tree: instance_holds(&b2, c, &trees)?,
            })
        })
        .collect()
}
