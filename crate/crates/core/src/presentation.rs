//! Presentations of structures by automata and their validation.
//!
//! Elements are inputs over a base alphabet (possibly of several tracks); a
//! relation of arity `k` is read over `k` copies of the base alphabet, one
//! block of tracks per argument. The equality automaton is referred to as
//! `eq` in formulas and complement registrations. Construction restricts
//! equality, relations and registered complements to domain tuples.

use std::fmt;

use rand::Rng;

use crate::alphabet::{Alphabet, LetterMap};
use crate::automaton::{Automaton, Kind};
use crate::error::{Error, Result};
use crate::random::{self, SuiteRng};
use crate::tree::{Dir, MullerTreeAutomaton, RegularTree};
use crate::word::{BuchiAutomaton, DEFAULT_BUDGET};

pub const EQUALITY: &str = "eq";

#[derive(Clone, Debug)]
pub struct Relation<A> {
    pub name: String,
    pub arity: usize,
    pub automaton: A,
}

#[derive(Clone, Debug)]
pub struct Presentation<A> {
    base: Alphabet,
    domain: A,
    equality: A,
    relations: Vec<Relation<A>>,
    complements: Vec<(String, A)>,
}

pub type WordPresentation = Presentation<BuchiAutomaton>;
pub type TreePresentation = Presentation<MullerTreeAutomaton>;

impl<A: Automaton> Presentation<A> {
    pub fn new(
        base: Alphabet,
        domain: A,
        equality: A,
        relations: Vec<Relation<A>>,
        complements: Vec<(String, A)>,
    ) -> Result<Self> {
        let b = base.clone();
        let expect = |what: &str, a: &A, k: usize| -> Result<()> {
            let want = b.power(k)?;
            if *a.alphabet() != want {
                return Err(Error::Malformed(format!(
                    "{what} reads {} but arity {k} over the base needs {want}",
                    a.alphabet()
                )));
            }
            Ok(())
        };
        expect("domain", &domain, 1)?;
        expect(EQUALITY, &equality, 2)?;
        for (i, r) in relations.iter().enumerate() {
            if r.arity == 0 {
                return Err(Error::Malformed(format!("relation {} has arity 0", r.name)));
            }
            if r.name == EQUALITY || relations[..i].iter().any(|s| s.name == r.name) {
                return Err(Error::Malformed(format!("relation name {} is taken", r.name)));
            }
            expect(&r.name, &r.automaton, r.arity)?;
        }
        let mut p = Presentation {
            base,
            domain,
            equality,
            relations: Vec::new(),
            complements: Vec::new(),
        };
        // every automaton is restricted to domain tuples once and for all
        p.equality = p.within_domain(p.equality.clone(), 2)?;
        for mut r in relations {
            r.automaton = p.within_domain(r.automaton, r.arity)?;
            p.relations.push(r);
        }
        for (name, c) in complements {
            let arity = p
                .arity_of(&name)
                .ok_or_else(|| Error::Malformed(format!("complement of unknown relation {name}")))?;
            expect(&format!("complement of {name}"), &c, arity)?;
            let c = p.within_domain(c, arity)?;
            p.complements.push((name, c));
        }
        Ok(p)
    }

    fn within_domain(&self, aut: A, k: usize) -> Result<A> {
        match self.domain_tuple(k, DEFAULT_BUDGET)? {
            None => Ok(aut),
            Some(d) => Ok(aut.intersect(&d, DEFAULT_BUDGET)?.simplify()),
        }
    }

    pub fn kind(&self) -> Kind {
        A::KIND
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    /// Number of tracks one element occupies.
    pub fn element_width(&self) -> usize {
        self.base.arity()
    }

    pub fn domain(&self) -> &A {
        &self.domain
    }

    pub fn equality(&self) -> &A {
        &self.equality
    }

    pub fn relations(&self) -> &[Relation<A>] {
        &self.relations
    }

    pub fn complements(&self) -> &[(String, A)] {
        &self.complements
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        if name == EQUALITY {
            return Some(2);
        }
        self.relations.iter().find(|r| r.name == name).map(|r| r.arity)
    }

    /// Automaton of the named relation (or of equality).
    pub fn atom(&self, name: &str) -> Option<&A> {
        if name == EQUALITY {
            return Some(&self.equality);
        }
        self.relations.iter().find(|r| r.name == name).map(|r| &r.automaton)
    }

    pub fn complement_of(&self, name: &str) -> Option<&A> {
        self.complements.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// Alphabet of `k`-tuples of elements.
    pub fn tuple_alphabet(&self, k: usize) -> Result<Alphabet> {
        self.base.power(k)
    }

    /// Reads `aut`, an automaton on `slots.len()` elements, on `n`-tuples:
    /// its `j`-th argument is the element in slot `slots[j]`.
    pub fn place(&self, aut: &A, slots: &[usize], n: usize) -> Result<A> {
        let w = self.element_width();
        let tracks: Vec<usize> = slots.iter().flat_map(|&s| (0..w).map(move |t| s * w + t)).collect();
        if slots.len() == n && slots.iter().enumerate().all(|(i, &s)| i == s) {
            return Ok(aut.clone());
        }
        let map = LetterMap::track_selection(self.tuple_alphabet(n)?, aut.alphabet(), &tracks)?;
        aut.relabel_by(&map)
    }

    pub fn zip(&self, elems: &[&A::Input]) -> Result<A::Input> {
        let target = self.tuple_alphabet(elems.len())?;
        let parts: Vec<&Alphabet> = elems.iter().map(|_| &self.base).collect();
        Ok(A::zip_inputs(elems, &parts, &target))
    }

    /// Splits an input over `n`-tuples into its `n` elements.
    pub fn unzip(&self, x: &A::Input, n: usize) -> Result<Vec<A::Input>> {
        let from = self.tuple_alphabet(n)?;
        let w = self.element_width();
        Ok((0..n)
            .map(|i| {
                let tracks: Vec<usize> = (i * w..(i + 1) * w).collect();
                A::project_input(x, &from, &tracks, &self.base)
            })
            .collect())
    }

    /// Whether the named relation (or `eq`) holds of the elements.
    pub fn holds(&self, name: &str, elems: &[&A::Input]) -> Result<bool> {
        let aut = self
            .atom(name)
            .ok_or_else(|| Error::Malformed(format!("unknown relation {name}")))?;
        if self.arity_of(name) != Some(elems.len()) {
            return Err(Error::Malformed(format!(
                "{name} applied to {} elements",
                elems.len()
            )));
        }
        aut.member(&self.zip(elems)?)
    }

    pub fn in_domain(&self, x: &A::Input) -> Result<bool> {
        self.domain.member(x)
    }

    /// Domain membership for each of `n` slots (`None` if the domain is
    /// trivially everything).
    pub fn domain_tuple(&self, n: usize, budget: usize) -> Result<Option<A>> {
        if self.domain.is_trivially_universal() {
            return Ok(None);
        }
        let mut acc: Option<A> = None;
        for i in 0..n {
            let d = self.place(&self.domain, &[i], n)?;
            acc = Some(match acc {
                None => d,
                Some(a) => a.intersect(&d, budget)?,
            });
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug)]
pub struct Check<I> {
    pub name: String,
    pub mode: Mode,
    pub passed: bool,
    /// Elements witnessing a failure.
    pub counterexample: Option<Vec<I>>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport<I> {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check<I>>,
}

impl<I> ValidationReport<I> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check<I>> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl<I> fmt::Display for ValidationReport<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {} samples: {}", self.seed, self.samples)?;
        for c in &self.checks {
            let mode = match c.mode {
                Mode::Exact => "exact",
                Mode::Sampled => "sampled",
            };
            let status = if c.passed { "pass" } else { "fail" };
            write!(f, "{} {mode}-{status}", c.name)?;
            if !c.note.is_empty() {
                write!(f, " ({})", c.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sources of sample elements for checks that cannot be decided exactly.
pub trait Sampler<A: Automaton> {
    fn element(&mut self, base: &Alphabet) -> A::Input;
    /// An element likely to be equal to `x` in the presented structure.
    fn nearby(&mut self, x: &A::Input, base: &Alphabet) -> A::Input;
}

/// Random regular trees (at most 4 graph nodes) and finite relabellings
/// of them at depth at most 4.
pub struct TreeSampler {
    pub rng: SuiteRng,
}

impl Sampler<MullerTreeAutomaton> for TreeSampler {
    fn element(&mut self, base: &Alphabet) -> RegularTree {
        random::regular_tree(&mut self.rng, base, 4)
    }

    fn nearby(&mut self, x: &RegularTree, base: &Alphabet) -> RegularTree {
        let k = self.rng.gen_range(0..=3);
        let changes: Vec<(Vec<Dir>, _)> = (0..k)
            .map(|_| {
                let len = self.rng.gen_range(0..=4);
                let path = (0..len)
                    .map(|_| if self.rng.gen_bool(0.5) { Dir::L } else { Dir::R })
                    .collect();
                (path, random::letter(&mut self.rng, base))
            })
            .collect();
        x.with_labels(&changes)
    }
}

/// Random lassos and finite modifications of them.
pub struct WordSampler {
    pub rng: SuiteRng,
}

impl Sampler<BuchiAutomaton> for WordSampler {
    fn element(&mut self, base: &Alphabet) -> crate::word::LassoWord {
        random::lasso(&mut self.rng, base, 4, 4)
    }

    fn nearby(&mut self, x: &crate::word::LassoWord, base: &Alphabet) -> crate::word::LassoWord {
        let extra = self.rng.gen_range(0..=3);
        let mut stem: Vec<_> = (0..x.stem().len() + extra).map(|i| x.at(i)).collect();
        for l in stem.iter_mut() {
            if self.rng.gen_bool(0.3) {
                *l = random::letter(&mut self.rng, base);
            }
        }
        crate::word::LassoWord::new(stem, x.cycle().to_vec()).expect("non-empty loop")
    }
}

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 7;

struct Validator<'a, A: Automaton> {
    p: &'a Presentation<A>,
    budget: usize,
}

impl<A: Automaton> Validator<'_, A> {
    /// `aut ∩ domain tuple`, over `n` slots.
    fn within_domain(&self, aut: A, n: usize) -> Result<A> {
        match self.p.domain_tuple(n, self.budget)? {
            None => Ok(aut),
            Some(d) => aut.intersect(&d, self.budget),
        }
    }

    /// The negation of an atom placed on slots, relative to `n`-tuples: a
    /// registered complement, else complementation for words.
    fn negated(&self, name: &str, slots: &[usize], n: usize) -> Result<Option<A>> {
        if let Some(c) = self.p.complement_of(name) {
            return Ok(Some(self.p.place(c, slots, n)?));
        }
        match A::KIND {
            Kind::Word => {
                let pos = self.p.place(self.p.atom(name).expect("known atom"), slots, n)?;
                Ok(Some(pos.complement(self.budget)?))
            }
            Kind::Tree => Ok(None),
        }
    }

    /// Runs an exact emptiness check of the violation automaton `bad` over
    /// `n` slots; the witness is re-checked by `violated`.
    fn exact(
        &self,
        name: String,
        bad: A,
        n: usize,
        violated: impl Fn(&[A::Input]) -> Result<bool>,
    ) -> Result<Check<A::Input>> {
        let bad = self.within_domain(bad, n)?;
        match bad.find_member()? {
            None => Ok(Check {
                name,
                mode: Mode::Exact,
                passed: true,
                counterexample: None,
                note: String::new(),
            }),
            Some(w) => {
                let elems = self.p.unzip(&w, n)?;
                if !violated(&elems)? {
                    return Err(Error::Invariant(format!(
                        "counterexample for {name} does not re-check as a violation"
                    )));
                }
                Ok(Check {
                    name,
                    mode: Mode::Exact,
                    passed: false,
                    counterexample: Some(elems),
                    note: String::new(),
                })
            }
        }
    }
}

/// Decides (word kind) or decides where complements are registered and
/// otherwise samples (tree kind) that equality is an equivalence relation
/// on the domain compatible with every relation.
pub fn validate_presentation<A: Automaton>(
    p: &Presentation<A>,
    sampler: &mut dyn Sampler<A>,
    seed: u64,
    samples: usize,
    budget: usize,
) -> Result<ValidationReport<A::Input>> {
    let v = Validator { p, budget };
    let eq = |x: &A::Input, y: &A::Input| p.holds(EQUALITY, &[x, y]);
    let mut checks = Vec::new();

    // reflexivity
    checks.push(match v.negated(EQUALITY, &[0, 0], 1)? {
        Some(bad) => v.exact("reflexivity".into(), bad, 1, |e| Ok(!eq(&e[0], &e[0])?))?,
        None => sampled(p, "reflexivity", samples, |_| {
            let x = sampler.element(p.base());
            Ok((p.in_domain(&x)? && !eq(&x, &x)?, vec![x], true))
        })?,
    });

    // symmetry
    checks.push(match v.negated(EQUALITY, &[1, 0], 2)? {
        Some(neg) => {
            let bad = p.equality().intersect(&neg, budget)?;
            v.exact("symmetry".into(), bad, 2, |e| Ok(eq(&e[0], &e[1])? && !eq(&e[1], &e[0])?))?
        }
        None => sampled(p, "symmetry", samples, |_| {
            let x = sampler.element(p.base());
            let y = sampler.nearby(&x, p.base());
            let related = eq(&x, &y)?;
            Ok((related && !eq(&y, &x)?, vec![x, y], related))
        })?,
    });

    // transitivity
    let trans_neg = match A::KIND {
        Kind::Word => v.negated(EQUALITY, &[0, 2], 3)?,
        Kind::Tree => None,
    };
    checks.push(match trans_neg {
        Some(neg) => {
            let xy = p.place(p.equality(), &[0, 1], 3)?;
            let yz = p.place(p.equality(), &[1, 2], 3)?;
            let bad = xy.intersect(&yz, budget)?.intersect(&neg, budget)?;
            v.exact("transitivity".into(), bad, 3, |e| {
                Ok(eq(&e[0], &e[1])? && eq(&e[1], &e[2])? && !eq(&e[0], &e[2])?)
            })?
        }
        None => sampled(p, "transitivity", samples, |i| {
            let x = sampler.element(p.base());
            let y = if i % 4 == 3 { sampler.element(p.base()) } else { sampler.nearby(&x, p.base()) };
            let z = if i % 4 == 2 { sampler.element(p.base()) } else { sampler.nearby(&y, p.base()) };
            let premise = eq(&x, &y)? && eq(&y, &z)?;
            Ok((premise && !eq(&x, &z)?, vec![x, y, z], premise))
        })?,
    });

    // compatibility of equality with each relation, one coordinate at a time
    for r in p.relations() {
        let k = r.arity;
        for i in 0..k {
            let name = format!("compatible:{}:{}", r.name, i);
            let mut slots: Vec<usize> = (0..k).collect();
            slots[i] = k;
            let holds_with = |e: &[A::Input], slots: &[usize]| -> Result<bool> {
                let args: Vec<&A::Input> = slots.iter().map(|&s| &e[s]).collect();
                p.holds(&r.name, &args)
            };
            let check = match v.negated(&r.name, &slots, k + 1)? {
                Some(neg) => {
                    let pos = p.place(&r.automaton, &(0..k).collect::<Vec<_>>(), k + 1)?;
                    let link = p.place(p.equality(), &[i, k], k + 1)?;
                    let bad = pos.intersect(&link, budget)?.intersect(&neg, budget)?;
                    let base_slots: Vec<usize> = (0..k).collect();
                    v.exact(name, bad, k + 1, |e| {
                        Ok(holds_with(e, &base_slots)? && eq(&e[i], &e[k])? && !holds_with(e, &slots)?)
                    })?
                }
                None => sampled(p, &name, samples, |_| {
                    let mut e: Vec<A::Input> = (0..k).map(|_| sampler.element(p.base())).collect();
                    let y = sampler.nearby(&e[i], p.base());
                    e.push(y);
                    let base_slots: Vec<usize> = (0..k).collect();
                    let premise = eq(&e[i], &e[k])?;
                    let before = holds_with(&e, &base_slots)?;
                    let after = holds_with(&e, &slots)?;
                    Ok((premise && before != after, e, premise))
                })?,
            };
            checks.push(check);
        }
    }
    Ok(ValidationReport {
        seed,
        samples,
        checks,
    })
}

/// Runs `trial` `samples` times; each trial reports (violation, elements,
/// whether the premise held).
fn sampled<A: Automaton>(
    _p: &Presentation<A>,
    name: &str,
    samples: usize,
    mut trial: impl FnMut(usize) -> Result<(bool, Vec<A::Input>, bool)>,
) -> Result<Check<A::Input>> {
    let mut relevant = 0;
    for i in 0..samples {
        let (bad, elems, premise) = trial(i)?;
        relevant += usize::from(premise);
        if bad {
            return Ok(Check {
                name: name.into(),
                mode: Mode::Sampled,
                passed: false,
                counterexample: Some(elems),
                note: format!("violated at sample {i}"),
            });
        }
    }
    Ok(Check {
        name: name.into(),
        mode: Mode::Sampled,
        passed: true,
        counterexample: None,
        note: format!("{samples} samples, {relevant} with the premise satisfied"),
    })
}

/// Validation with the default sample count, seed and budget.
pub fn validate_word(p: &WordPresentation) -> Result<ValidationReport<crate::word::LassoWord>> {
    let mut s = WordSampler {
        rng: random::seeded(DEFAULT_SEED),
    };
    validate_presentation(p, &mut s, DEFAULT_SEED, DEFAULT_SAMPLES, DEFAULT_BUDGET)
}

pub fn validate_tree(p: &TreePresentation) -> Result<ValidationReport<RegularTree>> {
    let mut s = TreeSampler {
        rng: random::seeded(DEFAULT_SEED),
    };
    validate_presentation(p, &mut s, DEFAULT_SEED, DEFAULT_SAMPLES, DEFAULT_BUDGET)
}
