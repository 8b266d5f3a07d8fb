//! Presentation bundles: a directory holding a `presentation.toml` manifest
//! and one automaton file per component.

use std::fs;
use std::path::{Path, PathBuf};

use omega_automatic::automaton::{Automaton, Kind};
use omega_automatic::presentation::{Presentation, Relation, TreePresentation, WordPresentation, EQUALITY};
use omega_automatic::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MANIFEST: &str = "presentation.toml";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    /// `word` or `tree`.
    pub kind: String,
    pub domain: String,
    pub equality: String,
    #[serde(default, rename = "relation")]
    pub relations: Vec<RelationEntry>,
    #[serde(default, rename = "complement")]
    pub complements: Vec<ComplementEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub name: String,
    pub arity: usize,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementEntry {
    /// Relation name, or `eq` for the equality.
    pub name: String,
    pub file: String,
}

#[derive(Clone, Debug)]
pub enum Bundle {
    Word(WordPresentation),
    Tree(TreePresentation),
}

fn extension(kind: Kind) -> &'static str {
    match kind {
        Kind::Word => "buchi",
        Kind::Tree => "muller",
    }
}

fn read(dir: &Path, file: &str) -> Result<String> {
    let path = dir.join(file);
    fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_automaton<A: Automaton>(dir: &Path, file: &str) -> Result<A> {
    A::from_text(&read(dir, file)?).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{file}: {msg}"),
        },
        other => other,
    })
}

fn load_as<A: Automaton>(dir: &Path, m: &Manifest) -> Result<Presentation<A>> {
    let domain: A = read_automaton(dir, &m.domain)?;
    let equality = read_automaton(dir, &m.equality)?;
    let relations = m
        .relations
        .iter()
        .map(|r| {
            Ok(Relation {
                name: r.name.clone(),
                arity: r.arity,
                automaton: read_automaton(dir, &r.file)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let complements = m
        .complements
        .iter()
        .map(|c| Ok((c.name.clone(), read_automaton(dir, &c.file)?)))
        .collect::<Result<Vec<_>>>()?;
    let base = domain.alphabet().clone();
    Presentation::new(base, domain, equality, relations, complements)
}

pub fn load(dir: &Path) -> Result<Bundle> {
    let text = read(dir, MANIFEST)?;
    let m: Manifest = toml::from_str(&text).map_err(|e| Error::Parse {
        line: e.span().map_or(1, |s| text[..s.start].lines().count().max(1)),
        msg: format!("{MANIFEST}: {}", e.message()),
    })?;
    match m.kind.as_str() {
        "word" => Ok(Bundle::Word(load_as(dir, &m)?)),
        "tree" => Ok(Bundle::Tree(load_as(dir, &m)?)),
        k => Err(Error::Malformed(format!("{MANIFEST}: unknown kind {k:?}"))),
    }
}

/// Writes `p` as a bundle into `dir`, creating it if needed; returns the
/// files written.
pub fn save<A: Automaton>(p: &Presentation<A>, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let ext = extension(A::KIND);
    let mut written = Vec::new();
    let mut put = |file: String, text: String| -> Result<String> {
        let path = dir.join(&file);
        fs::write(&path, text)?;
        written.push(path);
        Ok(file)
    };
    let manifest = Manifest {
        kind: A::KIND.to_string(),
        domain: put(format!("domain.{ext}"), p.domain().to_text())?,
        equality: put(format!("{EQUALITY}.{ext}"), p.equality().to_text())?,
        relations: p
            .relations()
            .iter()
            .map(|r| {
                Ok(RelationEntry {
                    name: r.name.clone(),
                    arity: r.arity,
                    file: put(format!("{}.{ext}", r.name), r.automaton.to_text())?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        complements: p
            .complements()
            .iter()
            .map(|(name, a)| {
                Ok(ComplementEntry {
                    name: name.clone(),
                    file: put(format!("{name}.complement.{ext}"), a.to_text())?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let text = toml::to_string(&manifest).map_err(|e| Error::Malformed(e.to_string()))?;
    put(MANIFEST.to_string(), text)?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use omega_automatic::structures::build_b1_presentation;

    #[test]
    fn manifest_shape() {
        let text = r#"
kind = "word"
domain = "d.buchi"
equality = "eq.buchi"

[[relation]]
name = "subset"
arity = 2
file = "subset.buchi"

[[complement]]
name = "eq"
file = "eq.complement.buchi"
"#;
        let m: Manifest = toml::from_str(text).unwrap();
        assert_eq!(m.relations[0].arity, 2);
        assert_eq!(m.complements[0].name, "eq");
        let back: Manifest = toml::from_str(&toml::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn save_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let p = build_b1_presentation().unwrap();
        save(&p, dir.path()).unwrap();
        let Bundle::Word(q) = load(dir.path()).unwrap() else {
            panic!("word bundle expected")
        };
        assert_eq!(q.equality(), p.equality());
        assert_eq!(q.relations().len(), p.relations().len());
        for (a, b) in p.relations().iter().zip(q.relations()) {
            assert_eq!((&a.name, a.arity), (&b.name, b.arity));
        }
    }

    #[test]
    fn missing_manifest_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load(dir.path()), Err(Error::Io(_))));
        fs::write(dir.path().join(MANIFEST), "kind = 3\n").unwrap();
        assert!(matches!(load(dir.path()), Err(Error::Parse { line: 1, .. })));
    }
}
