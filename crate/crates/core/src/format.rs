//! Line-based text formats for automata and regular trees.
//!
//! Every file starts with a header line (`buchi`, `muller`, `parity` or
//! `rtree`) followed by `key: value` lines. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{parse_err, Error, Result};
use crate::tree::{Designated, MullerTreeAutomaton, ParityTreeAutomaton, RegularTree};
use crate::word::BuchiAutomaton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomatonFile {
    Buchi(BuchiAutomaton),
    Muller(MullerTreeAutomaton),
    Parity(ParityTreeAutomaton),
}

impl AutomatonFile {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AutomatonFile::Buchi(a) => a.alphabet(),
            AutomatonFile::Muller(a) => a.alphabet(),
            AutomatonFile::Parity(a) => a.alphabet(),
        }
    }
}

struct Lines<'a> {
    header: (usize, &'a str),
    fields: Vec<(usize, &'a str, &'a str)>,
}

fn split_lines(text: &str) -> Result<Lines<'_>> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let header = content.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut fields = Vec::new();
    for (line, l) in content {
        let (key, value) = l
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("expected `key: value`, got {l:?}")))?;
        fields.push((line, key.trim(), value.trim()));
    }
    Ok(Lines { header, fields })
}

impl<'a> Lines<'a> {
    fn single(&self, key: &str) -> Result<(usize, &'a str)> {
        let mut found = self.fields.iter().filter(|f| f.1 == key);
        match (found.next(), found.next()) {
            (Some(&(line, _, v)), None) => Ok((line, v)),
            (None, _) => Err(parse_err(self.header.0, format!("missing `{key}:` line"))),
            (Some(_), Some(&(line, _, _))) => Err(parse_err(line, format!("repeated `{key}:` line"))),
        }
    }

    fn optional(&self, key: &str) -> Result<Option<(usize, &'a str)>> {
        if self.fields.iter().any(|f| f.1 == key) {
            self.single(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn all(&self, key: &'a str) -> impl Iterator<Item = (usize, &'a str)> + '_ {
        self.fields.iter().filter(move |f| f.1 == key).map(|f| (f.0, f.2))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.fields.iter().find(|f| !allowed.contains(&f.1)) {
            Some(&(line, k, _)) => Err(parse_err(line, format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected a number, got {s:?}")))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| number(line, t))
        .collect()
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

fn alphabet_of(lines: &Lines) -> Result<Alphabet> {
    let (line, v) = lines.single("alphabet")?;
    at_line(line, Alphabet::parse_listing(v))
}

/// Splits `tokens` into a letter (possibly written with inner spaces) and
/// the trailing `tail` state numbers.
fn letter_and_states(
    line: usize,
    alphabet: &Alphabet,
    v: &str,
    head: usize,
    tail: usize,
) -> Result<(Vec<usize>, crate::alphabet::Letter, Vec<usize>)> {
    let toks: Vec<&str> = v.split_whitespace().collect();
    if toks.len() < head + tail + 1 {
        return Err(parse_err(line, format!("malformed transition {v:?}")));
    }
    let first = toks[..head].iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?;
    let last = toks[toks.len() - tail..]
        .iter()
        .map(|t| number(line, t))
        .collect::<Result<Vec<_>>>()?;
    let letter = at_line(line, alphabet.parse_letter(&toks[head..toks.len() - tail].join("")))?;
    Ok((first, letter, last))
}

pub fn parse_automaton(text: &str) -> Result<AutomatonFile> {
    let lines = split_lines(text)?;
    match lines.header.1 {
        "buchi" => parse_buchi(text).map(AutomatonFile::Buchi),
        "muller" => parse_muller(text).map(AutomatonFile::Muller),
        "parity" => parse_parity(text).map(AutomatonFile::Parity),
        h => Err(parse_err(lines.header.0, format!("unknown header {h:?}"))),
    }
}

fn expect_header(lines: &Lines, want: &str) -> Result<()> {
    if lines.header.1 != want {
        return Err(parse_err(
            lines.header.0,
            format!("expected header `{want}`, got {:?}", lines.header.1),
        ));
    }
    Ok(())
}

pub fn parse_buchi(text: &str) -> Result<BuchiAutomaton> {
    let lines = split_lines(text)?;
    expect_header(&lines, "buchi")?;
    lines.check_keys(&["alphabet", "states", "initial", "accepting", "trans"])?;
    let alphabet = alphabet_of(&lines)?;
    let (sl, sv) = lines.single("states")?;
    let n = number(sl, sv)?;
    let (il, iv) = lines.single("initial")?;
    let initial = numbers(il, iv)?;
    let accepting = match lines.optional("accepting")? {
        Some((al, av)) => numbers(al, av)?,
        None => Vec::new(),
    };
    let mut trans = Vec::new();
    for (line, v) in lines.all("trans") {
        let (p, a, q) = letter_and_states(line, &alphabet, v, 1, 1)?;
        if p[0] >= n || q[0] >= n {
            return Err(parse_err(line, "state out of range"));
        }
        trans.push((p[0], a, q[0]));
    }
    at_line(il, BuchiAutomaton::new(alphabet, n, initial, accepting, trans))
}

fn parse_sets(line: usize, v: &str) -> Result<Vec<Vec<usize>>> {
    let mut sets = Vec::new();
    let mut rest = v.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| parse_err(line, format!("expected `{{` in {v:?}")))?;
        let close = body
            .find('}')
            .ok_or_else(|| parse_err(line, format!("unclosed set in {v:?}")))?;
        sets.push(numbers(line, &body[..close])?);
        rest = body[close + 1..].trim_start();
    }
    Ok(sets)
}

/// States, initial state and transitions `(q, a, ql, qr)`.
type TreeBody = (usize, usize, Vec<(usize, crate::alphabet::Letter, usize, usize)>);

fn tree_body(lines: &Lines, alphabet: &Alphabet) -> Result<TreeBody> {
    let (sl, sv) = lines.single("states")?;
    let n = number(sl, sv)?;
    let (il, iv) = lines.single("initial")?;
    let init = number(il, iv)?;
    let mut trans = Vec::new();
    for (line, v) in lines.all("trans") {
        let (p, a, kids) = letter_and_states(line, alphabet, v, 1, 2)?;
        trans.push((p[0], a, kids[0], kids[1]));
    }
    Ok((n, init, trans))
}

pub fn parse_muller(text: &str) -> Result<MullerTreeAutomaton> {
    let lines = split_lines(text)?;
    expect_header(&lines, "muller")?;
    lines.check_keys(&["alphabet", "states", "initial", "trans", "acc", "prio"])?;
    let alphabet = alphabet_of(&lines)?;
    let (n, init, trans) = tree_body(&lines, &alphabet)?;
    let has_prio = lines.all("prio").next().is_some();
    let designated = if has_prio {
        if let Some((line, _)) = lines.all("acc").next() {
            return Err(parse_err(line, "`acc:` and `prio:` are exclusive"));
        }
        Designated::Priorities(priorities(&lines, n)?)
    } else {
        let mut sets = Vec::new();
        for (line, v) in lines.all("acc") {
            sets.extend(parse_sets(line, v)?);
        }
        Designated::Sets(sets)
    };
    at_line(lines.header.0, MullerTreeAutomaton::new(alphabet, n, init, trans, designated))
}

fn priorities(lines: &Lines, n: usize) -> Result<Vec<u32>> {
    let mut prio: Vec<Option<u32>> = vec![None; n];
    for (line, v) in lines.all("prio") {
        let nums = numbers(line, v)?;
        let [q, p] = nums[..] else {
            return Err(parse_err(line, "expected `prio: state priority`"));
        };
        if q >= n {
            return Err(parse_err(line, format!("state {q} out of range")));
        }
        if prio[q].replace(p as u32).is_some() {
            return Err(parse_err(line, format!("priority of state {q} given twice")));
        }
    }
    prio.into_iter()
        .enumerate()
        .map(|(q, p)| p.ok_or_else(|| parse_err(lines.header.0, format!("state {q} lacks a priority"))))
        .collect()
}

pub fn parse_parity(text: &str) -> Result<ParityTreeAutomaton> {
    let lines = split_lines(text)?;
    expect_header(&lines, "parity")?;
    lines.check_keys(&["alphabet", "states", "initial", "trans", "prio"])?;
    let alphabet = alphabet_of(&lines)?;
    let (n, init, trans) = tree_body(&lines, &alphabet)?;
    let prio = priorities(&lines, n)?;
    at_line(lines.header.0, ParityTreeAutomaton::new(alphabet, init, trans, prio))
}

/// Parses a regular tree over `alphabet`; an `alphabet:` line, if present,
/// must agree with it.
pub fn parse_rtree(text: &str, alphabet: &Alphabet) -> Result<RegularTree> {
    let (own, tree) = parse_rtree_with(text, Some(alphabet))?;
    debug_assert!(own == *alphabet);
    Ok(tree)
}

/// Parses a regular tree whose file names its alphabet.
pub fn parse_rtree_standalone(text: &str) -> Result<(Alphabet, RegularTree)> {
    parse_rtree_with(text, None)
}

fn parse_rtree_with(text: &str, given: Option<&Alphabet>) -> Result<(Alphabet, RegularTree)> {
    let lines = split_lines(text)?;
    expect_header(&lines, "rtree")?;
    lines.check_keys(&["alphabet", "root", "node"])?;
    let alphabet = match (lines.optional("alphabet")?, given) {
        (Some((line, v)), Some(g)) => {
            let own = at_line(line, Alphabet::parse_listing(v))?;
            if own != *g {
                return Err(parse_err(line, "tree alphabet differs from the expected one"));
            }
            own
        }
        (Some((line, v)), None) => at_line(line, Alphabet::parse_listing(v))?,
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(parse_err(lines.header.0, "missing `alphabet:` line")),
    };
    let (rl, rv) = lines.single("root")?;
    let root = number(rl, rv)?;
    let mut nodes: Vec<Option<(crate::alphabet::Letter, usize, usize)>> = Vec::new();
    for (line, v) in lines.all("node") {
        let (id, a, kids) = letter_and_states(line, &alphabet, v, 1, 2)?;
        let id = id[0];
        if nodes.len() <= id {
            nodes.resize(id + 1, None);
        }
        if nodes[id].replace((a, kids[0], kids[1])).is_some() {
            return Err(parse_err(line, format!("node {id} given twice")));
        }
    }
    let nodes = nodes
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.ok_or_else(|| parse_err(lines.header.0, format!("node {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    let tree = at_line(rl, RegularTree::new(nodes, root))?;
    Ok((alphabet, tree))
}

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_buchi(a: &BuchiAutomaton) -> String {
    let al = a.alphabet();
    let mut s = String::new();
    writeln!(s, "buchi").unwrap();
    writeln!(s, "alphabet: {al}").unwrap();
    writeln!(s, "states: {}", a.num_states()).unwrap();
    writeln!(s, "initial: {}", join(a.initial().iter().copied())).unwrap();
    writeln!(s, "accepting: {}", join(a.accepting_states())).unwrap();
    for (p, x, q) in a.transitions() {
        writeln!(s, "trans: {p} {} {q}", al.letter_name(x)).unwrap();
    }
    s
}

fn write_tree_body(
    s: &mut String,
    al: &Alphabet,
    n: usize,
    init: usize,
    trans: impl Iterator<Item = (usize, crate::alphabet::Letter, usize, usize)>,
) {
    writeln!(s, "alphabet: {al}").unwrap();
    writeln!(s, "states: {n}").unwrap();
    writeln!(s, "initial: {init}").unwrap();
    for (p, x, l, r) in trans {
        writeln!(s, "trans: {p} {} {l} {r}", al.letter_name(x)).unwrap();
    }
}

pub fn write_muller(a: &MullerTreeAutomaton) -> String {
    let mut s = String::from("muller\n");
    write_tree_body(&mut s, a.alphabet(), a.num_states(), a.initial(), a.transitions());
    match a.designated() {
        Designated::Sets(sets) => {
            let body: Vec<String> = sets
                .iter()
                .map(|set| {
                    let inner: Vec<String> = set.iter().map(|q| q.to_string()).collect();
                    format!("{{{}}}", inner.join(","))
                })
                .collect();
            writeln!(s, "acc: {}", body.join(" ")).unwrap();
        }
        Designated::Priorities(p) => {
            for (q, pr) in p.iter().enumerate() {
                writeln!(s, "prio: {q} {pr}").unwrap();
            }
        }
    }
    s
}

pub fn write_parity(a: &ParityTreeAutomaton) -> String {
    let mut s = String::from("parity\n");
    write_tree_body(&mut s, a.alphabet(), a.num_states(), a.initial(), a.transitions());
    for q in 0..a.num_states() {
        writeln!(s, "prio: {q} {}", a.priority(q)).unwrap();
    }
    s
}

pub fn write_rtree(t: &RegularTree, alphabet: &Alphabet) -> String {
    t.display(alphabet).to_string()
}
