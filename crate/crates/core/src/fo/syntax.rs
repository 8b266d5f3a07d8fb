//! First-order formulas over a relational signature, their surface syntax
//! and the rewritings the compiler relies on.
//!
//! Surface syntax:
//! `forall x y. exists z. (subset(z,x) & !eq(z,x)) | x = y -> true`.
//! Binding: quantifiers extend as far right as possible; `!` binds
//! tightest, then `&`, `|`, `->` (right associative) and `<->`.
//! A term `f(t1,..,tk)` denotes the unique `z` with `f(t1,..,tk,z)`, so it
//! may only use relations that are graphs of total functions modulo
//! equality. A bare identifier that is not a bound variable and names a
//! unary relation denotes the element of that relation (e.g. `zero`).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename(from, to)).collect()),
        }
    }
}

impl Formula {
    pub fn atom(name: &str, vars: &[&str]) -> Formula {
        Formula::Atom(name.to_string(), vars.iter().map(|v| Term::var(v)).collect())
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(Term::var(x), Term::var(y))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction of all parts (`true` if none).
    pub fn all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Disjunction of all parts (`false` if none).
    pub fn any(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |b, v| Formula::Exists(v.to_string(), Box::new(b)))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |b, v| Formula::Forall(v.to_string(), Box::new(b)))
    }

    /// Free variables in sorted order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out.into_iter().collect()
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Maximal nesting of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                out.insert(v.clone());
                f.collect_all(out);
            }
        }
    }

    /// Renames the free occurrences of `from` to `to`; `to` must not be
    /// bound anywhere in `self`.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        let r = |f: &Formula| Box::new(f.rename_free(from, to));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(n, args) => {
                Formula::Atom(n.clone(), args.iter().map(|a| a.rename(from, to)).collect())
            }
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Not(f) => Formula::Not(r(f)),
            Formula::And(a, b) => Formula::And(r(a), r(b)),
            Formula::Or(a, b) => Formula::Or(r(a), r(b)),
            Formula::Implies(a, b) => Formula::Implies(r(a), r(b)),
            Formula::Iff(a, b) => Formula::Iff(r(a), r(b)),
            Formula::Exists(v, _) | Formula::Forall(v, _) if v == from => self.clone(),
            Formula::Exists(v, f) => Formula::Exists(v.clone(), r(f)),
            Formula::Forall(v, f) => Formula::Forall(v.clone(), r(f)),
        }
    }

    /// Renames every bound variable to a fresh name `prefix<n>`, so that
    /// substitution never captures.
    pub fn freshen_bound(&self, prefix: &str, counter: &mut usize) -> Formula {
        let mut go = |f: &Formula| f.freshen_bound(prefix, counter);
        match self {
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) => self.clone(),
            Formula::Not(f) => Formula::Not(Box::new(go(f))),
            Formula::And(a, b) => {
                let a = go(a);
                Formula::And(Box::new(a), Box::new(go(b)))
            }
            Formula::Or(a, b) => {
                let a = go(a);
                Formula::Or(Box::new(a), Box::new(go(b)))
            }
            Formula::Implies(a, b) => {
                let a = go(a);
                Formula::Implies(Box::new(a), Box::new(go(b)))
            }
            Formula::Iff(a, b) => {
                let a = go(a);
                Formula::Iff(Box::new(a), Box::new(go(b)))
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let fresh = format!("{prefix}{}", *counter);
                *counter += 1;
                let body = f.freshen_bound(prefix, counter).rename_free(v, &fresh);
                if matches!(self, Formula::Exists(..)) {
                    Formula::Exists(fresh, Box::new(body))
                } else {
                    Formula::Forall(fresh, Box::new(body))
                }
            }
        }
    }

    /// Negation normal form without `->` and `<->`.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        let bx = Box::new;
        match (self, positive) {
            (Formula::True, true) | (Formula::False, false) => Formula::True,
            (Formula::True, false) | (Formula::False, true) => Formula::False,
            (Formula::Atom(..) | Formula::Eq(..), true) => self.clone(),
            (Formula::Atom(..) | Formula::Eq(..), false) => Formula::Not(bx(self.clone())),
            (Formula::Not(f), s) => f.nnf_signed(!s),
            (Formula::And(a, b), true) => Formula::And(bx(a.nnf_signed(true)), bx(b.nnf_signed(true))),
            (Formula::And(a, b), false) => Formula::Or(bx(a.nnf_signed(false)), bx(b.nnf_signed(false))),
            (Formula::Or(a, b), true) => Formula::Or(bx(a.nnf_signed(true)), bx(b.nnf_signed(true))),
            (Formula::Or(a, b), false) => Formula::And(bx(a.nnf_signed(false)), bx(b.nnf_signed(false))),
            (Formula::Implies(a, b), true) => Formula::Or(bx(a.nnf_signed(false)), bx(b.nnf_signed(true))),
            (Formula::Implies(a, b), false) => Formula::And(bx(a.nnf_signed(true)), bx(b.nnf_signed(false))),
            (Formula::Iff(a, b), s) => {
                let both = Formula::And(bx(a.nnf_signed(true)), bx(b.nnf_signed(s)));
                let neither = Formula::And(bx(a.nnf_signed(false)), bx(b.nnf_signed(!s)));
                Formula::Or(bx(both), bx(neither))
            }
            (Formula::Exists(v, f), true) => Formula::Exists(v.clone(), bx(f.nnf_signed(true))),
            (Formula::Exists(v, f), false) => Formula::Forall(v.clone(), bx(f.nnf_signed(false))),
            (Formula::Forall(v, f), true) => Formula::Forall(v.clone(), bx(f.nnf_signed(true))),
            (Formula::Forall(v, f), false) => Formula::Exists(v.clone(), bx(f.nnf_signed(false))),
        }
    }

    pub fn parse(text: &str) -> Result<Formula> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let f = p.formula()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => write!(f, "{name}({})", join(args)),
        }
    }
}

fn join(args: &[Term]) -> String {
    args.iter().map(Term::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Formula {
    /// Fully parenthesized output that re-parses to the same formula.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(n, args) => write!(f, "{n}({})", join(args)),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Formula::Exists(v, g) => write!(f, "(exists {v}. {g})"),
            Formula::Forall(v, g) => write!(f, "(forall {v}. {g})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Equals,
    NotEquals,
}

/// Tokens with their byte offsets.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let two = text.get(i..i + 2).unwrap_or("");
        let three = text.get(i..i + 3).unwrap_or("");
        let tok = if c.is_whitespace() {
            i += 1;
            continue;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        } else if three == "<->" {
            i += 3;
            Tok::Iff
        } else if two == "->" {
            i += 2;
            Tok::Implies
        } else if two == "!=" {
            i += 2;
            Tok::NotEquals
        } else {
            i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '!' | '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '=' => Tok::Equals,
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {c:?} at offset {start}"),
                    })
                }
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let at = self.tokens.get(self.pos).map_or("end of input".to_string(), |(t, o)| {
            format!("{t:?} at offset {o}")
        });
        Error::Parse {
            line: 1,
            msg: format!("{msg} (found {at})"),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {t:?}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    fn quantifier(&self) -> Option<bool> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "forall" => Some(true),
            Some(Tok::Ident(s)) if s == "exists" => Some(false),
            _ => None,
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if let Some(universal) = self.quantifier() {
            self.pos += 1;
            let mut vars = vec![self.ident()?];
            while !self.eat(&Tok::Dot) {
                vars.push(self.ident()?);
            }
            let body = self.formula()?;
            let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
            return Ok(if universal {
                Formula::forall(&vars, body)
            } else {
                Formula::exists(&vars, body)
            });
        }
        let left = self.implication()?;
        if self.eat(&Tok::Iff) {
            let right = self.formula()?;
            return Ok(Formula::Iff(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let right = if self.quantifier().is_some() { self.formula()? } else { self.implication()? };
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let g = if self.quantifier().is_some() { self.formula()? } else { self.conjunction()? };
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = if self.quantifier().is_some() { self.formula()? } else { self.unary()? };
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            let f = if self.quantifier().is_some() { self.formula()? } else { self.unary()? };
            return Ok(Formula::not(f));
        }
        if self.quantifier().is_some() {
            return self.formula();
        }
        if self.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.expect(&Tok::RParen)?;
            return Ok(f);
        }
        match self.peek() {
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                return Ok(Formula::True);
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                return Ok(Formula::False);
            }
            _ => {}
        }
        let t = self.term()?;
        if self.eat(&Tok::Equals) {
            return Ok(Formula::Eq(t, self.term()?));
        }
        if self.eat(&Tok::NotEquals) {
            return Ok(Formula::not(Formula::Eq(t, self.term()?)));
        }
        match t {
            Term::App(name, mut args) if name == "eq" && args.len() == 2 => {
                let b = args.pop().expect("two");
                let a = args.pop().expect("two");
                Ok(Formula::Eq(a, b))
            }
            Term::App(name, args) => Ok(Formula::Atom(name, args)),
            Term::Var(_) => Err(self.error("expected an atom")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if !self.eat(&Tok::LParen) {
            return Ok(Term::Var(name));
        }
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        Ok(Term::App(name, args))
    }
}
