//! The subcommands, as functions from arguments to an [`Outcome`].

use std::fs;
use std::path::{Path, PathBuf};

use omega_automatic::automaton::Automaton;
use omega_automatic::fo::{
    apply_interpretation, decide_sentence, matrix_interpretation, parse_interpretation,
    ring_interpretation, unitriangular_interpretation, write_interpretation, Formula, Interpretation,
};
use omega_automatic::format::{self, AutomatonFile};
use omega_automatic::presentation::{
    validate_presentation, Mode, Presentation, Sampler, TreeSampler, WordSampler,
};
use omega_automatic::random;
use omega_automatic::structures::{
    antichain_tree, build_antichain_automaton, build_b1_presentation, build_b2_presentation,
    build_fin_automaton, build_fin_k_automaton, build_no_antichain_automaton, chain_tree,
};
use omega_automatic::suite::{run_suite, SUITES};
use omega_automatic::{Alphabet, Error, LassoWord, RegularTree, Result};
use serde::Serialize;

use crate::bundle::{self, Bundle};
use crate::outcome::{Outcome, Record};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Prefixes parse errors with the file they came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

/// Text of a single input in its file format.
trait InputFile: Automaton {
    const EXTENSION: &'static str;
    fn input_text(x: &Self::Input, alphabet: &Alphabet) -> String;
}

impl InputFile for omega_automatic::BuchiAutomaton {
    const EXTENSION: &'static str = "lasso";
    fn input_text(x: &LassoWord, alphabet: &Alphabet) -> String {
        format!("{}\n", x.display(alphabet))
    }
}

impl InputFile for omega_automatic::MullerTreeAutomaton {
    const EXTENSION: &'static str = "rtree";
    fn input_text(x: &RegularTree, alphabet: &Alphabet) -> String {
        format::write_rtree(x, alphabet)
    }
}

fn parse_lasso(text: &str, alphabet: &Alphabet) -> Result<LassoWord> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, l) = content.next().ok_or_else(|| Error::Parse {
        line: 1,
        msg: "empty lasso file".into(),
    })?;
    if let Some((extra, _)) = content.next() {
        return Err(Error::Parse {
            line: extra,
            msg: "expected a single `stem|loop` line".into(),
        });
    }
    LassoWord::parse(l, alphabet).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

pub fn member(automaton: &Path, input: &Path) -> Result<Outcome> {
    let aut = in_file(automaton, format::parse_automaton(&read(automaton)?))?;
    let text = read(input)?;
    let accepted = match &aut {
        AutomatonFile::Buchi(a) => a.accepts(&in_file(input, parse_lasso(&text, a.alphabet()))?)?,
        AutomatonFile::Muller(a) => a.accepts(&in_file(input, format::parse_rtree(&text, a.alphabet()))?)?,
        AutomatonFile::Parity(a) => a.accepts(&in_file(input, format::parse_rtree(&text, a.alphabet()))?)?,
    };
    Ok(Outcome::ok(vec![Record::new("verdict").with("accepted", accepted)]))
}

/// Default witness path: the automaton path with `.witness` appended.
fn witness_path(automaton: &Path) -> PathBuf {
    let mut s = automaton.as_os_str().to_owned();
    s.push(".witness");
    PathBuf::from(s)
}

pub fn empty(automaton: &Path, witness: Option<&Path>) -> Result<Outcome> {
    let aut = in_file(automaton, format::parse_automaton(&read(automaton)?))?;
    let found = match &aut {
        AutomatonFile::Buchi(a) => a.find_accepted().map(|w| format!("{}\n", w.display(a.alphabet()))),
        AutomatonFile::Muller(a) => a.find_accepted()?.map(|t| format::write_rtree(&t, a.alphabet())),
        AutomatonFile::Parity(a) => a.find_accepted()?.map(|t| format::write_rtree(&t, a.alphabet())),
    };
    let Some(text) = found else {
        return Ok(Outcome::ok(vec![Record::new("verdict").with("empty", true)]));
    };
    let path = witness.map_or_else(|| witness_path(automaton), Path::to_path_buf);
    write(&path, &text)?;
    Ok(Outcome::ok(vec![Record::new("verdict")
        .with("empty", false)
        .with("witness", path.display())]))
}

fn with_interpretation<A: Automaton>(
    p: Presentation<A>,
    interpretation: Option<&Path>,
    budget: usize,
) -> Result<Presentation<A>> {
    match interpretation {
        None => Ok(p),
        Some(path) => {
            let i = in_file(path, parse_interpretation(&read(path)?))?;
            apply_interpretation(&p, &i, budget)
        }
    }
}

/// File-name-safe form of a check name.
fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions<'a> {
    pub interpretation: Option<&'a Path>,
    pub seed: u64,
    pub samples: usize,
    pub budget: usize,
    /// Directory for counterexample files; defaults to the bundle.
    pub out: Option<&'a Path>,
}

fn validate_as<A: InputFile>(
    p: Presentation<A>,
    dir: &Path,
    sampler: &mut dyn Sampler<A>,
    o: ValidateOptions,
) -> Result<Outcome> {
    let p = with_interpretation(p, o.interpretation, o.budget)?;
    let report = validate_presentation(&p, sampler, o.seed, o.samples, o.budget)?;
    let out = o.out.unwrap_or(dir);
    let mut records = vec![Record::new("report").with("seed", report.seed).with("samples", report.samples)];
    for c in &report.checks {
        let mode = match c.mode {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        };
        let mut r = Record::new("check")
            .with("name", &c.name)
            .with("mode", mode)
            .with("status", if c.passed { "pass" } else { "fail" });
        if let Some(elems) = &c.counterexample {
            for (i, x) in elems.iter().enumerate() {
                let path = out.join(format!("{}.{i}.{}", file_stem(&c.name), A::EXTENSION));
                write(&path, &A::input_text(x, p.base()))?;
                r = r.with(&format!("witness{i}"), path.display());
            }
        }
        if !c.note.is_empty() {
            r = r.with("note", &c.note);
        }
        records.push(r);
    }
    if report.all_passed() {
        Ok(Outcome::ok(records))
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Ok(Outcome::fail(format!("{failed} check(s) failed"), records))
    }
}

pub fn validate(dir: &Path, o: ValidateOptions) -> Result<Outcome> {
    match bundle::load(dir)? {
        Bundle::Word(p) => validate_as(p, dir, &mut WordSampler { rng: random::seeded(o.seed) }, o),
        Bundle::Tree(p) => validate_as(p, dir, &mut TreeSampler { rng: random::seeded(o.seed) }, o),
    }
}

fn decide_as<A: Automaton>(
    p: Presentation<A>,
    sentence: &Formula,
    interpretation: Option<&Path>,
    budget: usize,
) -> Result<Outcome> {
    let p = with_interpretation(p, interpretation, budget)?;
    let d = decide_sentence(&p, sentence, budget)?;
    let mut records = vec![Record::new("verdict").with("holds", d.holds)];
    for (var, x) in &d.witnesses {
        records.push(
            Record::new("witness")
                .with("var", var)
                .with("value", A::show_input(x, p.base())),
        );
    }
    Ok(Outcome::ok(records))
}

/// `sentence` is a path to a sentence file if one exists, otherwise the
/// sentence itself.
pub fn decide(dir: &Path, sentence: &str, interpretation: Option<&Path>, budget: usize) -> Result<Outcome> {
    let as_path = Path::new(sentence);
    let s = if as_path.is_file() {
        in_file(as_path, Formula::parse(&read(as_path)?))?
    } else {
        Formula::parse(sentence)?
    };
    match bundle::load(dir)? {
        Bundle::Word(p) => decide_as(p, &s, interpretation, budget),
        Bundle::Tree(p) => decide_as(p, &s, interpretation, budget),
    }
}

/// A named construction `build` can materialize.
#[derive(Clone, Debug, Serialize)]
pub struct Builder {
    pub name: &'static str,
    /// What is written: `buchi`, `muller`, `rtree`, `bundle`,
    /// `interpretation` or `manifest`.
    pub output: &'static str,
    /// Whether `--n` is required.
    pub parameter: bool,
    pub description: &'static str,
}

pub const BUILDERS: [Builder; 12] = [
    Builder { name: "fin", output: "buchi", parameter: false, description: "words with finitely many 1s" },
    Builder { name: "fin_k", output: "buchi", parameter: true, description: "words with at most n letters 1" },
    Builder { name: "T", output: "muller", parameter: false, description: "trees whose 1-set has an infinite antichain" },
    Builder { name: "T_I", output: "muller", parameter: false, description: "trees whose 1-set has no infinite antichain" },
    Builder { name: "B1", output: "bundle", parameter: false, description: "P(N)/Fin as a word presentation" },
    Builder { name: "B2", output: "bundle", parameter: false, description: "P({l,r}*)/I as a tree presentation" },
    Builder { name: "chain", output: "rtree", parameter: true, description: "the chain {l^n r^k | k >= 1}" },
    Builder { name: "antichain", output: "rtree", parameter: false, description: "the antichain {l^n r | n >= 0}" },
    Builder { name: "ring", output: "interpretation", parameter: false, description: "boolean ring with symmetric difference" },
    Builder { name: "matrix", output: "interpretation", parameter: true, description: "n x n matrices over a ring" },
    Builder { name: "ut", output: "interpretation", parameter: true, description: "upper unitriangular n x n matrices" },
    Builder { name: "manifest", output: "manifest", parameter: false, description: "this list of builders" },
];

#[derive(Serialize)]
struct BuilderList<'a> {
    builder: &'a [Builder],
}

pub fn builders_manifest() -> String {
    toml::to_string(&BuilderList { builder: &BUILDERS }).expect("serializable")
}

fn interpretation_file(path: &Path, i: Result<Interpretation>) -> Result<Vec<PathBuf>> {
    write(path, &write_interpretation(&i?))?;
    Ok(vec![path.to_path_buf()])
}

fn file(path: &Path, text: String) -> Result<Vec<PathBuf>> {
    write(path, &text)?;
    Ok(vec![path.to_path_buf()])
}

pub fn build(name: &str, output: &Path, n: Option<usize>) -> Result<Outcome> {
    let b = BUILDERS.iter().find(|b| b.name == name).ok_or_else(|| {
        let names: Vec<&str> = BUILDERS.iter().map(|b| b.name).collect();
        Error::Malformed(format!("unknown builder {name:?}; expected one of {}", names.join(", ")))
    })?;
    let n = match (b.parameter, n) {
        (true, None) => return Err(Error::Malformed(format!("builder {name} needs --n"))),
        (false, Some(_)) => return Err(Error::Malformed(format!("builder {name} takes no --n"))),
        (_, n) => n.unwrap_or(0),
    };
    let binary = Alphabet::binary();
    let written = match name {
        "fin" => file(output, build_fin_automaton().to_text())?,
        "fin_k" => file(output, build_fin_k_automaton(n).to_text())?,
        "T" => file(output, build_antichain_automaton().to_text())?,
        "T_I" => file(output, build_no_antichain_automaton().to_text())?,
        "B1" => bundle::save(&build_b1_presentation()?, output)?,
        "B2" => bundle::save(&build_b2_presentation()?, output)?,
        "chain" => file(output, format::write_rtree(&chain_tree(n), &binary))?,
        "antichain" => file(output, format::write_rtree(&antichain_tree(), &binary))?,
        "ring" => interpretation_file(output, Ok(ring_interpretation()))?,
        "matrix" => interpretation_file(output, matrix_interpretation(n))?,
        "ut" => interpretation_file(output, unitriangular_interpretation(n))?,
        "manifest" => file(output, builders_manifest())?,
        _ => unreachable!("every listed builder is handled"),
    };
    let mut records = vec![Record::new("built").with("name", name).with("output", b.output)];
    records.extend(written.iter().map(|p| Record::new("file").with("path", p.display())));
    Ok(Outcome::ok(records))
}

/// Default instance count of each suite.
pub fn default_count(suite: &str) -> usize {
    match suite {
        "complementation" => 200,
        "antichain" => 500,
        "parity" => 100,
        _ => 200,
    }
}

/// Runs one suite, or every suite for `all`.
pub fn difftest(suite: &str, seed: u64, count: Option<usize>) -> Result<Outcome> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut records = Vec::new();
    let mut failed = Vec::new();
    for name in names {
        let report = run_suite(name, seed, count.unwrap_or_else(|| default_count(name)))?;
        records.push(
            Record::new("suite")
                .with("name", &report.suite)
                .with("seed", report.seed)
                .with("cases", report.cases)
                .with("failed", report.failed)
                .with("status", if report.passed() { "pass" } else { "fail" }),
        );
        records.extend(report.failures.iter().map(|f| Record::new("failure").with("case", f)));
        if !report.passed() {
            failed.push(report.suite.clone());
        }
    }
    if failed.is_empty() {
        Ok(Outcome::ok(records))
    } else {
        Ok(Outcome::fail(format!("suite(s) failed: {}", failed.join(", ")), records))
    }
}
