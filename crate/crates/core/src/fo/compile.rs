//! Compilation of formulas to automata over tuples of elements, and
//! sentence decision by emptiness.
//!
//! Invariant of every compiled automaton: it accepts only tuples of domain
//! elements, and its tracks hold the variables in sorted order, one block
//! of element tracks per variable.

use std::collections::HashMap;

use crate::automaton::{Automaton, Kind};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

use super::syntax::{Formula, Term};

#[derive(Clone, Debug)]
pub struct Compiled<A> {
    /// Free variables, sorted; variable `i` occupies element slot `i`.
    pub vars: Vec<String>,
    pub automaton: A,
}

/// Whether a sentence holds, with elements for its outer quantifier block:
/// instances of an outer `exists` block when true, counterexamples to an
/// outer `forall` block when false.
#[derive(Clone, Debug)]
pub struct Decision<I> {
    pub holds: bool,
    pub witnesses: Vec<(String, I)>,
}

pub struct Compiler<'a, A: Automaton> {
    p: &'a Presentation<A>,
    budget: usize,
    negations: HashMap<String, A>,
    domain_nonempty: Option<bool>,
    fresh: usize,
    /// Variables bound around the subformula being compiled.
    bound: Vec<String>,
}

impl<'a, A: Automaton> Compiler<'a, A> {
    pub fn new(p: &'a Presentation<A>, budget: usize) -> Self {
        Compiler {
            p,
            budget,
            negations: HashMap::new(),
            domain_nonempty: None,
            fresh: 0,
            bound: Vec::new(),
        }
    }

    /// Free variables of `f`, sorted, without the names of unary
    /// relations (which denote constants when free).
    pub fn free_vars(&self, f: &Formula) -> Vec<String> {
        f.free_vars()
            .into_iter()
            .filter(|v| self.p.arity_of(v) != Some(1))
            .collect()
    }

    /// Compiles `f`; the result's variables are `self.free_vars(f)`.
    pub fn compile(&mut self, f: &Formula) -> Result<Compiled<A>> {
        let out = self.go(&f.nnf())?;
        debug_assert_eq!(out.vars, self.free_vars(f));
        Ok(out)
    }

    /// Compiles `f` with tracks for exactly `vars`, in that order (which
    /// must include the free variables of `f`); every slot is restricted to
    /// the domain.
    pub fn compile_on(&mut self, f: &Formula, vars: &[String]) -> Result<A> {
        let c = self.compile(f)?;
        if let Some(v) = c.vars.iter().find(|v| !vars.contains(v)) {
            return Err(Error::Malformed(format!("free variable {v} is not listed")));
        }
        let slots: Vec<usize> = c
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("listed"))
            .collect();
        let mut aut = self.p.place(&c.automaton, &slots, vars.len())?;
        if !self.p.domain().is_trivially_universal() {
            for i in (0..vars.len()).filter(|i| !slots.contains(i)) {
                let d = self.p.place(self.p.domain(), &[i], vars.len())?;
                aut = aut.intersect(&d, self.budget)?;
            }
        }
        Ok(aut.simplify())
    }

    /// Decides a sentence. An outer `forall` block is decided by the
    /// emptiness of its negated matrix, which needs no complementation of
    /// the matrix.
    pub fn decide(&mut self, sentence: &Formula) -> Result<Decision<A::Input>> {
        let free = self.free_vars(sentence);
        if !free.is_empty() {
            return Err(Error::Malformed(format!("sentence has free variables {free:?}")));
        }
        let (universal, vars, matrix) = match sentence {
            Formula::Forall(..) => (true, outer_block(sentence, true).0, outer_block(sentence, true).1),
            Formula::Exists(..) => (false, outer_block(sentence, false).0, outer_block(sentence, false).1),
            _ => (false, Vec::new(), sentence.clone()),
        };
        let target = if universal { Formula::not(matrix) } else { matrix };
        let c = self.compile(&target)?;
        let found = c.automaton.find_member()?;
        let Some(tuple) = found else {
            // no instance; vacuous when the block binds nothing
            return Ok(Decision {
                holds: universal,
                witnesses: Vec::new(),
            });
        };
        let elems = self.p.unzip(&tuple, c.vars.len())?;
        let mut witnesses = Vec::new();
        for v in &vars {
            if witnesses.iter().any(|(w, _)| w == v) {
                continue;
            }
            let e = match c.vars.iter().position(|x| x == v) {
                Some(i) => elems[i].clone(),
                None => match self.p.domain().find_member()? {
                    Some(d) => d,
                    None => {
                        return Ok(Decision {
                            holds: universal,
                            witnesses: Vec::new(),
                        })
                    }
                },
            };
            witnesses.push((v.clone(), e));
        }
        Ok(Decision {
            holds: !universal,
            witnesses,
        })
    }

    fn fresh_var(&mut self) -> String {
        self.fresh += 1;
        format!("_t{}", self.fresh)
    }

    fn domain_nonempty(&mut self) -> Result<bool> {
        if let Some(b) = self.domain_nonempty {
            return Ok(b);
        }
        let b = self.p.domain().find_member()?.is_some();
        self.domain_nonempty = Some(b);
        Ok(b)
    }

    /// Replaces function terms in a literal by fresh variables constrained
    /// by the function graphs: `L(f(x̄))` becomes `∃z (f(x̄,z) ∧ L(z))`,
    /// valid in both polarities because `f` is total and single valued.
    /// `None` if the literal only has variable arguments.
    fn flatten_literal(&mut self, f: &Formula) -> Result<Option<Formula>> {
        let (atom, negated) = match f {
            Formula::Not(g) => (&**g, true),
            _ => (f, false),
        };
        let mut graphs = Vec::new();
        let bound = std::mem::take(&mut self.bound);
        let lit = self.literal_args(atom, &bound, &mut graphs);
        self.bound = bound;
        let lit = lit?;
        if graphs.is_empty() {
            return Ok(None);
        }
        let lit = if negated { Formula::not(lit) } else { lit };
        Ok(Some(wrap(graphs, lit)))
    }

    fn literal_args(&mut self, f: &Formula, bound: &[String], graphs: &mut Vec<(String, Formula)>) -> Result<Formula> {
        match f {
            Formula::Atom(name, args) => {
                let arity = self
                    .p
                    .arity_of(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown relation {name}")))?;
                if arity != args.len() {
                    return Err(Error::Malformed(format!(
                        "{name} has arity {arity} but is applied to {} arguments",
                        args.len()
                    )));
                }
                let args = args
                    .iter()
                    .map(|t| self.term_var(t, bound, graphs))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Formula::Atom(name.clone(), args))
            }
            Formula::Eq(a, b) => {
                let a = self.term_var(a, bound, graphs)?;
                let b = self.term_var(b, bound, graphs)?;
                Ok(Formula::Eq(a, b))
            }
            _ => unreachable!("negation normal form negates atoms only"),
        }
    }

    /// A variable standing for the term, with the graph atoms defining it.
    fn term_var(&mut self, t: &Term, bound: &[String], graphs: &mut Vec<(String, Formula)>) -> Result<Term> {
        match t {
            Term::Var(v) if bound.contains(v) => Ok(t.clone()),
            Term::Var(v) if self.p.arity_of(v) == Some(1) => {
                let z = self.fresh_var();
                graphs.push((z.clone(), Formula::Atom(v.clone(), vec![Term::Var(z.clone())])));
                Ok(Term::Var(z))
            }
            Term::Var(_) => Ok(t.clone()),
            Term::App(name, args) => {
                let arity = self
                    .p
                    .arity_of(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown function {name}")))?;
                if arity != args.len() + 1 {
                    return Err(Error::Malformed(format!(
                        "{name} has arity {arity} and cannot be used as a function of {} arguments",
                        args.len()
                    )));
                }
                let mut vars = args
                    .iter()
                    .map(|a| self.term_var(a, bound, graphs))
                    .collect::<Result<Vec<_>>>()?;
                let z = self.fresh_var();
                vars.push(Term::Var(z.clone()));
                graphs.push((z.clone(), Formula::Atom(name.clone(), vars)));
                Ok(Term::Var(z))
            }
        }
    }

    fn go(&mut self, f: &Formula) -> Result<Compiled<A>> {
        if matches!(f, Formula::Atom(..) | Formula::Eq(..) | Formula::Not(..)) {
            if let Some(flat) = self.flatten_literal(f)? {
                return self.go(&flat);
            }
        }
        match f {
            Formula::True | Formula::False => {
                let unit = self.p.tuple_alphabet(0)?;
                let holds = matches!(f, Formula::True);
                Ok(Compiled {
                    vars: Vec::new(),
                    automaton: if holds { A::universal(unit) } else { A::empty(unit) },
                })
            }
            Formula::Atom(name, args) => {
                let aut = self.p.atom(name).expect("checked by flatten_literal").clone();
                self.literal(aut, args)
            }
            Formula::Eq(a, b) => self.literal(self.p.equality().clone(), &[a.clone(), b.clone()]),
            Formula::Not(g) => {
                let (name, args) = match &**g {
                    Formula::Atom(name, args) => (name.as_str(), args.clone()),
                    Formula::Eq(a, b) => (crate::presentation::EQUALITY, vec![a.clone(), b.clone()]),
                    _ => unreachable!("negation normal form negates atoms only"),
                };
                let neg = self.negated_atom(name)?;
                self.literal(neg, &args)
            }
            Formula::And(a, b) => {
                let a = self.go(a)?;
                let b = self.go(b)?;
                let vars = merge(&a.vars, &b.vars);
                let x = self.widen(a, &vars, false)?;
                let y = self.widen(b, &vars, false)?;
                let automaton = x.intersect(&y, self.budget)?.simplify();
                Ok(Compiled { vars, automaton })
            }
            Formula::Or(a, b) => {
                let a = self.go(a)?;
                let b = self.go(b)?;
                let vars = merge(&a.vars, &b.vars);
                let x = self.widen(a, &vars, true)?;
                let y = self.widen(b, &vars, true)?;
                Ok(Compiled {
                    vars,
                    automaton: x.unite(&y)?.simplify(),
                })
            }
            Formula::Exists(v, g) => {
                self.bound.push(v.clone());
                let body = self.go(g);
                self.bound.pop();
                self.project(body?, v)
            }
            Formula::Forall(v, g) => {
                if A::KIND == Kind::Tree {
                    return Err(Error::Unsupported(format!(
                        "universal quantifier over {v} in a tree presentation"
                    )));
                }
                // ∀v g as ¬∃v ¬g, with ¬g compiled positively
                self.bound.push(v.clone());
                let neg = self.go(&Formula::not(g.as_ref().clone()).nnf());
                self.bound.pop();
                let ex = self.project(neg?, v)?;
                self.relative_complement(ex)
            }
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("not in negation normal form"),
        }
    }

    /// Places an atom automaton on the variables of its arguments.
    fn literal(&mut self, aut: A, args: &[Term]) -> Result<Compiled<A>> {
        let names: Vec<&String> = args
            .iter()
            .map(|t| match t {
                Term::Var(v) => v,
                Term::App(..) => unreachable!("flattened"),
            })
            .collect();
        let mut vars: Vec<String> = names.iter().map(|v| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        let slots: Vec<usize> = names
            .iter()
            .map(|v| vars.iter().position(|w| w == *v).expect("present"))
            .collect();
        let automaton = self.p.place(&aut, &slots, vars.len())?;
        Ok(Compiled { vars, automaton })
    }

    fn relativize(&self, aut: A, n: usize) -> Result<A> {
        match self.p.domain_tuple(n, self.budget)? {
            None => Ok(aut),
            Some(d) => aut.intersect(&d, self.budget),
        }
    }

    /// The complement of an atom within domain tuples.
    fn negated_atom(&mut self, name: &str) -> Result<A> {
        if let Some(c) = self.p.complement_of(name) {
            return Ok(c.clone());
        }
        if let Some(c) = self.negations.get(name) {
            return Ok(c.clone());
        }
        if A::KIND == Kind::Tree {
            return Err(Error::Unsupported(format!(
                "negated {name} without a registered complement"
            )));
        }
        let atom = self.p.atom(name).expect("checked by flatten_literal");
        let arity = self.p.arity_of(name).expect("known");
        let c = self.relativize(atom.complement(self.budget)?, arity)?.simplify();
        self.negations.insert(name.to_string(), c.clone());
        Ok(c)
    }

    /// Reads `c` over the larger variable list `vars`; with `relativize`,
    /// the added slots are restricted to the domain.
    fn widen(&self, c: Compiled<A>, vars: &[String], relativize: bool) -> Result<A> {
        if c.vars.len() == vars.len() {
            return Ok(c.automaton);
        }
        let slots: Vec<usize> = c
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("subset"))
            .collect();
        let mut aut = self.p.place(&c.automaton, &slots, vars.len())?;
        if relativize && !self.p.domain().is_trivially_universal() {
            for i in (0..vars.len()).filter(|i| !slots.contains(i)) {
                let d = self.p.place(self.p.domain(), &[i], vars.len())?;
                aut = aut.intersect(&d, self.budget)?;
            }
        }
        Ok(aut)
    }

    fn project(&mut self, body: Compiled<A>, v: &str) -> Result<Compiled<A>> {
        let Some(i) = body.vars.iter().position(|w| w == v) else {
            if self.domain_nonempty()? {
                return Ok(body);
            }
            let alphabet = body.automaton.alphabet().clone();
            return Ok(Compiled {
                vars: body.vars,
                automaton: A::empty(alphabet),
            });
        };
        let w = self.p.element_width();
        let mut aut = body.automaton;
        for t in (i * w..(i + 1) * w).rev() {
            aut = aut.project_track(t)?;
        }
        let mut vars = body.vars;
        vars.remove(i);
        Ok(Compiled { vars, automaton: aut })
    }

    fn relative_complement(&self, c: Compiled<A>) -> Result<Compiled<A>> {
        let comp = c.automaton.complement(self.budget)?;
        let automaton = self.relativize(comp, c.vars.len())?.simplify();
        Ok(Compiled {
            vars: c.vars,
            automaton,
        })
    }
}

/// The variables of the outermost block of like quantifiers and its body.
fn outer_block(f: &Formula, universal: bool) -> (Vec<String>, Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    loop {
        match (cur, universal) {
            (Formula::Forall(v, g), true) | (Formula::Exists(v, g), false) => {
                vars.push(v.clone());
                cur = g;
            }
            _ => return (vars, cur.clone()),
        }
    }
}

fn wrap(graphs: Vec<(String, Formula)>, lit: Formula) -> Formula {
    let mut body = lit;
    let mut vars = Vec::new();
    for (z, g) in graphs.into_iter().rev() {
        body = Formula::and(g, body);
        vars.push(z);
    }
    for z in vars {
        body = Formula::Exists(z, Box::new(body));
    }
    body
}

fn merge(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Compiles `f` over `p`; tracks hold the sorted free variables.
pub fn compile_formula<A: Automaton>(p: &Presentation<A>, f: &Formula, budget: usize) -> Result<Compiled<A>> {
    Compiler::new(p, budget).compile(f)
}

pub fn decide_sentence<A: Automaton>(p: &Presentation<A>, s: &Formula, budget: usize) -> Result<Decision<A::Input>> {
    Compiler::new(p, budget).decide(s)
}

/// Whether `f` holds when its free variables take the given elements.
pub fn holds_at<A: Automaton>(
    p: &Presentation<A>,
    f: &Formula,
    assignment: &[(&str, &A::Input)],
    budget: usize,
) -> Result<bool> {
    let c = compile_formula(p, f, budget)?;
    let mut elems = Vec::with_capacity(c.vars.len());
    for v in &c.vars {
        let e = assignment
            .iter()
            .find(|(n, _)| n == v)
            .ok_or_else(|| Error::Malformed(format!("no value for free variable {v}")))?;
        elems.push(e.1);
    }
    c.automaton.member(&p.zip(&elems)?)
}
