//! Small finite structures with a unary `p` and a binary `r`, presented
//! non-injectively by eventually constant words, and a brute-force
//! evaluator for them.

use std::collections::HashMap;

use rand::Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::presentation::{Relation, WordPresentation};
use crate::word::{BuchiAutomaton, LassoWord};

use super::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyStructure {
    pub p: Vec<bool>,
    pub r: Vec<Vec<bool>>,
}

impl ToyStructure {
    pub fn size(&self) -> usize {
        self.p.len()
    }

    pub fn random<R: Rng>(rng: &mut R, size: usize) -> Self {
        ToyStructure {
            p: (0..size).map(|_| rng.gen_bool(0.5)).collect(),
            r: (0..size).map(|_| (0..size).map(|_| rng.gen_bool(0.5)).collect()).collect(),
        }
    }

    /// A fixed 3-element structure: `p = {1, 2}`, `r` a 3-cycle plus a loop.
    pub fn standard() -> Self {
        ToyStructure {
            p: vec![false, true, true],
            r: vec![
                vec![false, true, false],
                vec![false, true, true],
                vec![true, false, false],
            ],
        }
    }

    pub fn base(&self) -> Alphabet {
        let symbols: Vec<String> = (0..self.size()).map(|i| i.to_string()).collect();
        Alphabet::single(&symbols).expect("non-empty")
    }

    /// Element `i` is represented by every word ending in `i^ω`; words that
    /// are not eventually constant are outside the domain.
    pub fn presentation(&self) -> Result<WordPresentation> {
        let base = self.base();
        let tuples = |k: usize, keep: &dyn Fn(&[usize]) -> bool| -> Result<BuchiAutomaton> {
            let alphabet = base.power(k)?;
            let mut trans = Vec::new();
            let mut finals = Vec::new();
            for l in alphabet.letters() {
                trans.push((0, l, 0));
            }
            // one accepting state per kept constant tuple
            let mut state = 1;
            for l in alphabet.letters() {
                if keep(&alphabet.decode(l)) {
                    trans.push((0, l, state));
                    trans.push((state, l, state));
                    finals.push(state);
                    state += 1;
                }
            }
            BuchiAutomaton::new(alphabet, state, [0], finals, trans)
        };
        let p = self.p.clone();
        let r = self.r.clone();
        let relations = vec![
            Relation {
                name: "p".into(),
                arity: 1,
                automaton: tuples(1, &|c| p[c[0]])?,
            },
            Relation {
                name: "r".into(),
                arity: 2,
                automaton: tuples(2, &|c| r[c[0]][c[1]])?,
            },
        ];
        let domain = tuples(1, &|_| true)?;
        let equality = tuples(2, &|c| c[0] == c[1])?;
        WordPresentation::new(base, domain, equality, relations, Vec::new())
    }

    /// A representative of element `i` with a stem that varies with `salt`.
    pub fn element(&self, i: usize, salt: usize) -> LassoWord {
        let n = self.size() as u32;
        let stem = (0..salt % 3).map(|k| Letter((k as u32 + salt as u32) % n)).collect();
        LassoWord::new(stem, vec![Letter(i as u32)]).expect("non-empty loop")
    }

    /// Brute-force truth value under an assignment of elements.
    pub fn eval(&self, f: &Formula, env: &mut HashMap<String, usize>) -> Result<bool> {
        let val = |t: &Term, env: &HashMap<String, usize>| -> Result<usize> {
            match t {
                Term::Var(v) => env
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Malformed(format!("unbound variable {v}"))),
                Term::App(..) => Err(Error::Unsupported("function terms in a toy structure".into())),
            }
        };
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(a, b) => val(a, env)? == val(b, env)?,
            Formula::Atom(name, args) => {
                let xs = args.iter().map(|a| val(a, env)).collect::<Result<Vec<_>>>()?;
                match (name.as_str(), xs.as_slice()) {
                    ("p", [x]) => self.p[*x],
                    ("r", [x, y]) => self.r[*x][*y],
                    _ => return Err(Error::Malformed(format!("unknown atom {name}/{}", xs.len()))),
                }
            }
            Formula::Not(g) => !self.eval(g, env)?,
            Formula::And(a, b) => self.eval(a, env)? && self.eval(b, env)?,
            Formula::Or(a, b) => self.eval(a, env)? || self.eval(b, env)?,
            Formula::Implies(a, b) => !self.eval(a, env)? || self.eval(b, env)?,
            Formula::Iff(a, b) => self.eval(a, env)? == self.eval(b, env)?,
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = env.get(v).copied();
                let mut result = universal;
                for e in 0..self.size() {
                    env.insert(v.clone(), e);
                    if self.eval(g, env)? != universal {
                        result = !universal;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(v.clone(), s),
                    None => env.remove(v),
                };
                result
            }
        })
    }
}

fn literals(vars: &[&str]) -> Vec<Formula> {
    let mut atoms = Vec::new();
    for x in vars {
        atoms.push(Formula::atom("p", &[x]));
    }
    for x in vars {
        for y in vars {
            atoms.push(Formula::atom("r", &[x, y]));
        }
    }
    for (i, x) in vars.iter().enumerate() {
        for y in &vars[i + 1..] {
            atoms.push(Formula::eq(x, y));
        }
    }
    let negated: Vec<Formula> = atoms.iter().cloned().map(Formula::not).collect();
    atoms.into_iter().chain(negated).collect()
}

/// Literals, and conjunctions and disjunctions of two distinct literals.
fn matrices(vars: &[&str]) -> Vec<Formula> {
    let lits = literals(vars);
    let mut out = lits.clone();
    for (i, a) in lits.iter().enumerate() {
        for b in &lits[i + 1..] {
            out.push(Formula::and(a.clone(), b.clone()));
            out.push(Formula::or(a.clone(), b.clone()));
        }
    }
    out
}

fn quantify(universal: bool, v: &str, body: Formula) -> Formula {
    if universal {
        Formula::forall(&[v], body)
    } else {
        Formula::exists(&[v], body)
    }
}

/// Sentences over `p`/`r` of quantifier depth at most 2 in these shapes:
/// `Qx. M(x)`, `Qx. Q'y. M(x,y)` and `Qx. (L(x) ∘ Q'y. L'(x,y))`, where
/// `M` ranges over literals and binary conjunctions/disjunctions of
/// distinct literals, `L` over literals and `∘` over `∧`, `∨`.
pub fn sentence_catalogue() -> Vec<Formula> {
    let mut out = Vec::new();
    for q in [false, true] {
        for m in matrices(&["x"]) {
            out.push(quantify(q, "x", m));
        }
    }
    for q1 in [false, true] {
        for q2 in [false, true] {
            for m in matrices(&["x", "y"]) {
                out.push(quantify(q1, "x", quantify(q2, "y", m)));
            }
        }
    }
    for q1 in [false, true] {
        for q2 in [false, true] {
            for l in literals(&["x"]) {
                for l2 in literals(&["x", "y"]) {
                    let inner = quantify(q2, "y", l2);
                    out.push(quantify(q1, "x", Formula::and(l.clone(), inner.clone())));
                    out.push(quantify(q1, "x", Formula::or(l.clone(), inner)));
                }
            }
        }
    }
    out
}
