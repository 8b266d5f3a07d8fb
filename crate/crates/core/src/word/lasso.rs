use std::fmt;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// The ultimately periodic ω-word `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Malformed("lasso loop must be non-empty".into()));
        }
        Ok(LassoWord { stem, cycle })
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    pub fn at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.stem.iter().chain(self.cycle.iter()).copied()
    }

    /// Canonical form: primitive loop, and the stem as short as possible.
    /// Two lassos denote the same ω-word iff their normal forms are equal.
    pub fn normalize(&self) -> LassoWord {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        let mut cycle: Vec<Letter> = self.cycle[..period].to_vec();
        let mut stem = self.stem.clone();
        while let Some(&last) = stem.last() {
            if last != *cycle.last().expect("non-empty") {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        LassoWord { stem, cycle }
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.letters().find(|l| !alphabet.contains(*l)) {
            Some(l) => Err(Error::AlphabetMismatch(format!(
                "letter index {} outside alphabet of size {}",
                l.0,
                alphabet.size()
            ))),
            None => Ok(()),
        }
    }

    /// Combines lassos track-wise: the result reads the letter tuple formed by
    /// the components' letters at each position.
    pub fn zip(words: &[&LassoWord], parts: &[&Alphabet], target: &Alphabet) -> LassoWord {
        let stem_len = words.iter().map(|w| w.stem.len()).max().unwrap_or(0);
        let cycle_len = words.iter().fold(1usize, |acc, w| lcm(acc, w.cycle.len()));
        let letter_at = |i: usize| {
            let mut comps = Vec::with_capacity(target.arity());
            for (w, a) in words.iter().zip(parts) {
                comps.extend(a.decode(w.at(i)));
            }
            target.encode(&comps)
        };
        let stem = (0..stem_len).map(letter_at).collect();
        let cycle = (stem_len..stem_len + cycle_len).map(letter_at).collect();
        LassoWord { stem, cycle }.normalize()
    }

    /// Reads the listed tracks of every letter.
    pub fn project_tracks(&self, from: &Alphabet, tracks: &[usize], to: &Alphabet) -> LassoWord {
        let map = |l: &Letter| from.restrict(*l, tracks, to);
        LassoWord {
            stem: self.stem.iter().map(map).collect(),
            cycle: self.cycle.iter().map(map).collect(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        LassoDisplay {
            word: self,
            alphabet,
        }
    }

    /// Parses `stem|loop` with space-separated letters.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<LassoWord> {
        let (stem, cycle) = s
            .split_once('|')
            .ok_or_else(|| Error::Malformed(format!("lasso {s:?} lacks '|'")))?;
        let parse_part = |p: &str| -> Result<Vec<Letter>> {
            p.split_whitespace()
                .map(|tok| alphabet.parse_letter(tok))
                .collect()
        };
        LassoWord::new(parse_part(stem)?, parse_part(cycle)?)
    }
}

struct LassoDisplay<'a> {
    word: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |ls: &[Letter]| {
            ls.iter()
                .map(|l| self.alphabet.letter_name(*l))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{}|{}", names(&self.word.stem), names(&self.word.cycle))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(stem: &[u32], cycle: &[u32]) -> LassoWord {
        LassoWord::new(
            stem.iter().map(|&x| Letter(x)).collect(),
            cycle.iter().map(|&x| Letter(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn normalization_identifies_equal_words() {
        assert_eq!(w(&[0, 1], &[0, 1, 0, 1]).normalize(), w(&[], &[0, 1]));
        assert_eq!(w(&[1], &[0, 1]).normalize(), w(&[], &[1, 0]));
        assert_ne!(w(&[1], &[0]).normalize(), w(&[], &[0]).normalize());
    }

    #[test]
    fn empty_loop_is_rejected() {
        assert!(LassoWord::new(vec![Letter(0)], vec![]).is_err());
    }

    #[test]
    fn zip_aligns_periods() {
        let a = Alphabet::binary();
        let pair = Alphabet::binary_tracks(2).unwrap();
        let x = w(&[1], &[0]);
        let y = w(&[], &[0, 1]);
        let z = LassoWord::zip(&[&x, &y], &[&a, &a], &pair);
        for i in 0..12 {
            assert_eq!(pair.decode(z.at(i)), vec![x.at(i).index(), y.at(i).index()]);
        }
        let back = z.project_tracks(&pair, &[1], &a);
        assert_eq!(back.normalize(), y.normalize());
    }

    #[test]
    fn text_round_trip() {
        let pair = Alphabet::binary_tracks(2).unwrap();
        let s = "(1,0)|(0,1) (0,0)";
        let l = LassoWord::parse(s, &pair).unwrap();
        assert_eq!(l.display(&pair).to_string(), s);
        let e = LassoWord::parse("|1", &Alphabet::binary()).unwrap();
        assert!(e.stem().is_empty());
        assert!(LassoWord::parse("1|", &Alphabet::binary()).is_err());
    }
}
