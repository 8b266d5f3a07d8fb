//! Multi-dimensional first-order interpretations: compiling them into new
//! presentations, and translating sentences back to the source signature.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation, EQUALITY};

use super::compile::Compiler;
use super::syntax::{Formula, Term};

/// A formula with an ordered list of distinguished free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub vars: Vec<String>,
    pub body: Formula,
}

impl Definition {
    pub fn new(vars: &[&str], body: Formula) -> Self {
        Definition {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            body,
        }
    }

    pub fn parse(vars: &[&str], body: &str) -> Result<Self> {
        Ok(Self::new(vars, Formula::parse(body)?))
    }

    /// The body with its distinguished variables replaced by `targets`.
    fn instantiate(&self, targets: &[String], counter: &mut usize) -> Formula {
        let mut f = self.body.freshen_bound("_q", counter);
        let temps: Vec<String> = (0..self.vars.len())
            .map(|_| {
                *counter += 1;
                format!("_s{counter}")
            })
            .collect();
        for (v, t) in self.vars.iter().zip(&temps) {
            f = f.rename_free(v, t);
        }
        for (t, target) in temps.iter().zip(targets) {
            f = f.rename_free(t, target);
        }
        f
    }
}

/// An `n`-dimensional interpretation: elements are `n`-tuples satisfying
/// the domain formula, identified by the equality formula; a `k`-ary
/// symbol is defined by a formula on `k·n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub dimension: usize,
    pub domain: Definition,
    pub equality: Definition,
    pub relations: Vec<(String, usize, Definition)>,
}

impl Interpretation {
    pub fn new(
        dimension: usize,
        domain: Definition,
        equality: Definition,
        relations: Vec<(String, usize, Definition)>,
    ) -> Result<Self> {
        let check = |what: &str, d: &Definition, k: usize| -> Result<()> {
            if d.vars.len() != k * dimension {
                return Err(Error::Malformed(format!(
                    "{what} needs {} variables, has {}",
                    k * dimension,
                    d.vars.len()
                )));
            }
            let mut sorted = d.vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != d.vars.len() {
                return Err(Error::Malformed(format!("{what} repeats a variable")));
            }
            Ok(())
        };
        if dimension == 0 {
            return Err(Error::Malformed("interpretation of dimension 0".into()));
        }
        check("domain", &domain, 1)?;
        check("equality", &equality, 2)?;
        for (name, k, d) in &relations {
            if *k == 0 || name == EQUALITY {
                return Err(Error::Malformed(format!("bad symbol {name}/{k}")));
            }
            check(name, d, *k)?;
        }
        Ok(Interpretation {
            dimension,
            domain,
            equality,
            relations,
        })
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        if name == EQUALITY {
            return Some(2);
        }
        self.relations.iter().find(|r| r.0 == name).map(|r| r.1)
    }

    fn definition(&self, name: &str) -> Option<&Definition> {
        if name == EQUALITY {
            return Some(&self.equality);
        }
        self.relations.iter().find(|r| r.0 == name).map(|r| &r.2)
    }

    /// Variables standing for the coordinates of `x`.
    fn coords(&self, x: &str) -> Vec<String> {
        (1..=self.dimension).map(|k| format!("{x}__{k}")).collect()
    }

    /// A sentence over the source signature that holds in the source
    /// structure iff `s` holds in the interpreted one.
    pub fn translate(&self, s: &Formula) -> Result<Formula> {
        let mut counter = 0;
        let flat = flatten_terms(s, &|n| self.arity_of(n), &mut counter, &mut Vec::new())?;
        let mut counter = 0;
        self.tr(&flat, &mut counter)
    }

    fn tr(&self, f: &Formula, counter: &mut usize) -> Result<Formula> {
        let bx = Box::new;
        Ok(match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Atom(name, args) => {
                let def = self
                    .definition(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown symbol {name}")))?;
                self.apply_def(def, args, counter)?
            }
            Formula::Eq(a, b) => self.apply_def(&self.equality, &[a.clone(), b.clone()], counter)?,
            Formula::Not(g) => Formula::Not(bx(self.tr(g, counter)?)),
            Formula::And(a, b) => Formula::And(bx(self.tr(a, counter)?), bx(self.tr(b, counter)?)),
            Formula::Or(a, b) => Formula::Or(bx(self.tr(a, counter)?), bx(self.tr(b, counter)?)),
            Formula::Implies(a, b) => Formula::Implies(bx(self.tr(a, counter)?), bx(self.tr(b, counter)?)),
            Formula::Iff(a, b) => Formula::Iff(bx(self.tr(a, counter)?), bx(self.tr(b, counter)?)),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let xs = self.coords(v);
                let dom = self.domain.instantiate(&xs, counter);
                let body = self.tr(g, counter)?;
                let names: Vec<&str> = xs.iter().map(String::as_str).collect();
                if matches!(f, Formula::Exists(..)) {
                    Formula::exists(&names, Formula::and(dom, body))
                } else {
                    Formula::forall(&names, Formula::implies(dom, body))
                }
            }
        })
    }

    fn apply_def(&self, def: &Definition, args: &[Term], counter: &mut usize) -> Result<Formula> {
        let mut targets = Vec::new();
        for a in args {
            match a {
                Term::Var(x) => targets.extend(self.coords(x)),
                Term::App(..) => unreachable!("flattened"),
            }
        }
        Ok(def.instantiate(&targets, counter))
    }
}

/// Replaces function terms (and free names of unary symbols, read as
/// constants) by variables bound to their graphs, literal by literal.
pub fn flatten_terms(
    f: &Formula,
    arity: &dyn Fn(&str) -> Option<usize>,
    counter: &mut usize,
    bound: &mut Vec<String>,
) -> Result<Formula> {
    let bx = Box::new;
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(..) | Formula::Eq(..) => {
            let mut graphs = Vec::new();
            let lit = match f {
                Formula::Atom(n, args) => Formula::Atom(
                    n.clone(),
                    args.iter()
                        .map(|t| term_var(t, arity, counter, bound, &mut graphs))
                        .collect::<Result<_>>()?,
                ),
                Formula::Eq(a, b) => Formula::Eq(
                    term_var(a, arity, counter, bound, &mut graphs)?,
                    term_var(b, arity, counter, bound, &mut graphs)?,
                ),
                _ => unreachable!(),
            };
            let mut body = lit;
            for (_, g) in graphs.iter().rev() {
                body = Formula::and(g.clone(), body);
            }
            for (z, _) in graphs {
                body = Formula::Exists(z, bx(body));
            }
            body
        }
        Formula::Not(g) => Formula::Not(bx(flatten_terms(g, arity, counter, bound)?)),
        Formula::And(a, b) => Formula::And(
            bx(flatten_terms(a, arity, counter, bound)?),
            bx(flatten_terms(b, arity, counter, bound)?),
        ),
        Formula::Or(a, b) => Formula::Or(
            bx(flatten_terms(a, arity, counter, bound)?),
            bx(flatten_terms(b, arity, counter, bound)?),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            bx(flatten_terms(a, arity, counter, bound)?),
            bx(flatten_terms(b, arity, counter, bound)?),
        ),
        Formula::Iff(a, b) => Formula::Iff(
            bx(flatten_terms(a, arity, counter, bound)?),
            bx(flatten_terms(b, arity, counter, bound)?),
        ),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            bound.push(v.clone());
            let body = flatten_terms(g, arity, counter, bound);
            bound.pop();
            let body = bx(body?);
            if matches!(f, Formula::Exists(..)) {
                Formula::Exists(v.clone(), body)
            } else {
                Formula::Forall(v.clone(), body)
            }
        }
    })
}

fn term_var(
    t: &Term,
    arity: &dyn Fn(&str) -> Option<usize>,
    counter: &mut usize,
    bound: &[String],
    graphs: &mut Vec<(String, Formula)>,
) -> Result<Term> {
    let (name, args) = match t {
        Term::Var(v) if bound.contains(v) || arity(v) != Some(1) => return Ok(t.clone()),
        Term::Var(v) => (v, &[][..]),
        Term::App(n, args) => (n, &args[..]),
    };
    if arity(name) != Some(args.len() + 1) {
        return Err(Error::Malformed(format!(
            "{name} cannot be used as a function of {} arguments",
            args.len()
        )));
    }
    let mut vars = args
        .iter()
        .map(|a| term_var(a, arity, counter, bound, graphs))
        .collect::<Result<Vec<_>>>()?;
    *counter += 1;
    let z = format!("_f{counter}");
    vars.push(Term::Var(z.clone()));
    graphs.push((z.clone(), Formula::Atom(name.clone(), vars)));
    Ok(Term::Var(z))
}

/// The presentation of the interpreted structure: elements are tuples of
/// source elements, read side by side.
///
/// For each symbol the negated definition is compiled too and registered
/// as its complement when it lies in the supported fragment.
pub fn apply_interpretation<A: Automaton>(
    p: &Presentation<A>,
    i: &Interpretation,
    budget: usize,
) -> Result<Presentation<A>> {
    let mut c = Compiler::new(p, budget);
    let base = p.base().power(i.dimension)?;
    let domain = c.compile_on(&i.domain.body, &i.domain.vars)?;
    let equality = c.compile_on(&i.equality.body, &i.equality.vars)?;
    let mut relations = Vec::new();
    let mut complements = Vec::new();
    let mut negate = |c: &mut Compiler<A>, name: &str, d: &Definition| -> Result<()> {
        match c.compile_on(&Formula::not(d.body.clone()), &d.vars) {
            Ok(a) => complements.push((name.to_string(), a)),
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
        Ok(())
    };
    negate(&mut c, EQUALITY, &i.equality)?;
    for (name, k, d) in &i.relations {
        relations.push(Relation {
            name: name.clone(),
            arity: *k,
            automaton: c.compile_on(&d.body, &d.vars)?,
        });
        negate(&mut c, name, d)?;
    }
    Presentation::new(base, domain, equality, relations, complements)
}

fn var_list(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn def(vars: &[String], body: Formula) -> Definition {
    Definition {
        vars: vars.to_vec(),
        body,
    }
}

/// The ring `(B, Δ, ∩, 0, 1)` of a boolean algebra with signature `cap`,
/// `cup`, `neg`, `zero`, `one`: symbols `add`, `mul`, `zero`, `one`.
pub fn ring_interpretation() -> Interpretation {
    let p = |vars: &[&str], s: &str| Definition::parse(vars, s).expect("valid definition");
    Interpretation::new(
        1,
        p(&["x"], "true"),
        p(&["x", "y"], "x = y"),
        vec![
            ("add".into(), 3, p(&["x", "y", "z"], "cap(cup(x,y), neg(cap(x,y))) = z")),
            ("mul".into(), 3, p(&["x", "y", "z"], "cap(x,y) = z")),
            ("zero".into(), 1, p(&["x"], "zero(x)")),
            ("one".into(), 1, p(&["x"], "one(x)")),
        ],
    )
    .expect("well-formed")
}

/// Entry variables `{prefix}_{i}_{j}` of an `n × n` matrix, row by row.
fn matrix_vars(prefix: &str, n: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            v.push(format!("{prefix}_{i}_{j}"));
        }
    }
    v
}

fn entry(prefix: &str, i: usize, j: usize) -> Term {
    Term::Var(format!("{prefix}_{i}_{j}"))
}

fn app(f: &str, args: Vec<Term>) -> Term {
    Term::App(f.to_string(), args)
}

fn entrywise(n: usize, f: impl Fn(usize, usize) -> Formula) -> Formula {
    Formula::all((1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|(i, j)| f(i, j)))
}

/// `c = a·b` entrywise, sums of products written as nested terms.
fn product_formula(n: usize) -> Formula {
    entrywise(n, |i, j| {
        let sum = (1..=n)
            .map(|k| app("mul", vec![entry("a", i, k), entry("b", k, j)]))
            .rev()
            .reduce(|acc, t| app("add", vec![t, acc]))
            .expect("n ≥ 1");
        Formula::Eq(entry("c", i, j), sum)
    })
}

fn identity_formula(n: usize) -> Formula {
    entrywise(n, |i, j| {
        let which = if i == j { "one" } else { "zero" };
        Formula::Atom(which.into(), vec![entry("a", i, j)])
    })
}

fn matrix_equality(n: usize) -> Definition {
    let vars: Vec<String> = matrix_vars("a", n).into_iter().chain(matrix_vars("b", n)).collect();
    def(&vars, entrywise(n, |i, j| Formula::Eq(entry("a", i, j), entry("b", i, j))))
}

fn three(n: usize) -> Vec<String> {
    ["a", "b", "c"].iter().flat_map(|p| matrix_vars(p, n)).collect()
}

/// The ring of `n × n` matrices over a ring with `add`, `mul`, `zero`,
/// `one`; `n²`-dimensional.
pub fn matrix_interpretation(n: usize) -> Result<Interpretation> {
    if n < 2 {
        return Err(Error::Malformed(format!("matrix dimension {n} < 2")));
    }
    let a = matrix_vars("a", n);
    let sum = entrywise(n, |i, j| {
        Formula::Eq(entry("c", i, j), app("add", vec![entry("a", i, j), entry("b", i, j)]))
    });
    Interpretation::new(
        n * n,
        def(&a, Formula::True),
        matrix_equality(n),
        vec![
            ("add".into(), 3, def(&three(n), sum)),
            ("mul".into(), 3, def(&three(n), product_formula(n))),
            ("zero".into(), 1, def(&a, entrywise(n, |i, j| Formula::Atom("zero".into(), vec![entry("a", i, j)])))),
            ("one".into(), 1, def(&a, identity_formula(n))),
        ],
    )
}

/// Domain of `UTₙ`: ones on the diagonal, zeros below it.
pub fn unitriangular_domain(n: usize) -> Formula {
    entrywise(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Formula::Atom("one".into(), vec![entry("a", i, j)]),
        std::cmp::Ordering::Greater => Formula::Atom("zero".into(), vec![entry("a", i, j)]),
        std::cmp::Ordering::Less => Formula::True,
    })
}

/// The group of upper unitriangular `n × n` matrices with `mul` and the
/// identity `one`.
pub fn unitriangular_interpretation(n: usize) -> Result<Interpretation> {
    if n < 3 {
        return Err(Error::Malformed(format!("unitriangular dimension {n} < 3")));
    }
    let a = matrix_vars("a", n);
    Interpretation::new(
        n * n,
        def(&a, unitriangular_domain(n)),
        matrix_equality(n),
        vec![
            ("mul".into(), 3, def(&three(n), product_formula(n))),
            ("one".into(), 1, def(&a, identity_formula(n))),
        ],
    )
}

/// Pairs of elements with a relation `r` read componentwise on both
/// coordinates, and `p` on the first one.
pub fn pairing_interpretation(p: &str, r: &str) -> Interpretation {
    let [x, y] = ["x", "y"].map(|s| var_list(s, 2));
    let at = |name: &str, args: &[&String]| {
        Formula::Atom(name.to_string(), args.iter().map(|v| Term::Var(v.to_string())).collect())
    };
    let xy: Vec<String> = x.iter().chain(&y).cloned().collect();
    Interpretation::new(
        2,
        def(&x, Formula::True),
        def(
            &xy,
            Formula::and(Formula::Eq(Term::Var(x[0].clone()), Term::Var(y[0].clone())),
                Formula::Eq(Term::Var(x[1].clone()), Term::Var(y[1].clone()))),
        ),
        vec![
            ("p".into(), 1, def(&x, at(p, &[&x[0]]))),
            (
                "r".into(),
                2,
                def(&xy, Formula::and(at(r, &[&x[0], &y[0]]), at(r, &[&x[1], &y[1]]))),
            ),
        ],
    )
    .expect("well-formed")
}

/// Text form of an interpretation: header `interpretation`, then
/// `dimension: n`, `domain: vars | formula`, `equality: vars | formula` and
/// one `relation: name arity vars | formula` line per symbol.
pub fn write_interpretation(i: &Interpretation) -> String {
    let line = |d: &Definition| format!("{} | {}", d.vars.join(" "), d.body);
    let mut s = format!(
        "interpretation\ndimension: {}\ndomain: {}\nequality: {}\n",
        i.dimension,
        line(&i.domain),
        line(&i.equality)
    );
    for (name, k, d) in &i.relations {
        s.push_str(&format!("relation: {name} {k} {}\n", line(d)));
    }
    s
}

pub fn parse_interpretation(text: &str) -> Result<Interpretation> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "interpretation")) => {}
        Some((n, h)) => return Err(err(n, format!("expected header `interpretation`, got {h:?}"))),
        None => return Err(err(1, "empty file".into())),
    }
    let definition = |n: usize, v: &str| -> Result<(Vec<String>, Definition)> {
        let (head, body) = v
            .split_once('|')
            .ok_or_else(|| err(n, "expected `variables | formula`".into()))?;
        let words: Vec<String> = head.split_whitespace().map(str::to_string).collect();
        let body = Formula::parse(body).map_err(|e| match e {
            Error::Parse { msg, .. } => err(n, msg),
            other => other,
        })?;
        Ok((words, Definition { vars: Vec::new(), body }))
    };
    let (mut dimension, mut domain, mut equality, mut relations) = (None, None, None, Vec::new());
    let mut last = 1;
    for (n, l) in lines {
        last = n;
        let (key, value) = l
            .split_once(':')
            .ok_or_else(|| err(n, format!("expected `key: value`, got {l:?}")))?;
        let value = value.trim();
        match key.trim() {
            "dimension" => {
                dimension = Some(value.parse::<usize>().map_err(|e| err(n, format!("bad dimension: {e}")))?)
            }
            "domain" | "equality" => {
                let (vars, mut d) = definition(n, value)?;
                d.vars = vars;
                let slot = if key.trim() == "domain" { &mut domain } else { &mut equality };
                if slot.replace(d).is_some() {
                    return Err(err(n, format!("repeated `{}:` line", key.trim())));
                }
            }
            "relation" => {
                let (mut words, mut d) = definition(n, value)?;
                if words.len() < 2 {
                    return Err(err(n, "expected `name arity variables | formula`".into()));
                }
                let rest = words.split_off(2);
                let arity = words[1].parse::<usize>().map_err(|e| err(n, format!("bad arity: {e}")))?;
                d.vars = rest;
                relations.push((words[0].clone(), arity, d));
            }
            other => return Err(err(n, format!("unknown key {other:?}"))),
        }
    }
    let missing = |what: &str| err(last, format!("missing `{what}:` line"));
    Interpretation::new(
        dimension.ok_or_else(|| missing("dimension"))?,
        domain.ok_or_else(|| missing("domain"))?,
        equality.ok_or_else(|| missing("equality"))?,
        relations,
    )
}
