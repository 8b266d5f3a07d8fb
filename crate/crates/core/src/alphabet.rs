//! Finite alphabets, possibly multi-track.
//!
//! An alphabet of arity `n` is the product of `n` track alphabets. Letters are
//! tuples, encoded as a single mixed-radix index with the first track most
//! significant, so grouping or splitting tracks never changes letter indices.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Largest number of letters an alphabet may have.
pub const MAX_LETTERS: usize = 1 << 16;

/// Largest number of explicit transitions a relabelled automaton may have.
pub const MAX_TRANSITIONS: usize = 1 << 25;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    tracks: Vec<Vec<String>>,
    size: usize,
}

fn check_symbol(s: &str) -> Result<()> {
    if s.is_empty()
        || s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '|' | '{' | '}' | '#'))
    {
        return Err(Error::Malformed(format!("invalid alphabet symbol {s:?}")));
    }
    Ok(())
}

impl Alphabet {
    /// Product alphabet with the given track alphabets. Zero tracks yields the
    /// unit alphabet with exactly one (empty) letter.
    pub fn product(tracks: Vec<Vec<String>>) -> Result<Self> {
        let mut size: usize = 1;
        for track in &tracks {
            if track.is_empty() {
                return Err(Error::Malformed("empty track alphabet".into()));
            }
            for (i, s) in track.iter().enumerate() {
                check_symbol(s)?;
                if track[..i].contains(s) {
                    return Err(Error::Malformed(format!("duplicate symbol {s:?}")));
                }
            }
            size = size
                .checked_mul(track.len())
                .filter(|&s| s <= MAX_LETTERS)
                .ok_or_else(|| Error::Capacity {
                    what: format!("alphabet with {} tracks", tracks.len()),
                    budget: MAX_LETTERS,
                })?;
        }
        Ok(Alphabet { tracks, size })
    }

    pub fn single<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        Self::product(vec![symbols.iter().map(|s| s.as_ref().to_string()).collect()])
    }

    /// The alphabet `{0,1}`.
    pub fn binary() -> Self {
        Self::single(&["0", "1"]).expect("valid")
    }

    /// `{0,1}^n` as an `n`-track alphabet.
    pub fn binary_tracks(n: usize) -> Result<Self> {
        Self::product(vec![vec!["0".to_string(), "1".to_string()]; n])
    }

    pub fn unit() -> Self {
        Alphabet {
            tracks: Vec::new(),
            size: 1,
        }
    }

    pub fn arity(&self) -> usize {
        self.tracks.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tracks(&self) -> &[Vec<String>] {
        &self.tracks
    }

    pub fn track(&self, i: usize) -> &[String] {
        &self.tracks[i]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size as u32).map(Letter)
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.index() < self.size
    }

    pub fn encode(&self, comps: &[usize]) -> Letter {
        debug_assert_eq!(comps.len(), self.tracks.len());
        let mut idx = 0usize;
        for (c, t) in comps.iter().zip(&self.tracks) {
            debug_assert!(*c < t.len());
            idx = idx * t.len() + c;
        }
        Letter(idx as u32)
    }

    pub fn decode(&self, l: Letter) -> Vec<usize> {
        let mut idx = l.index();
        let mut out = vec![0; self.tracks.len()];
        for (slot, t) in out.iter_mut().zip(&self.tracks).rev() {
            *slot = idx % t.len();
            idx /= t.len();
        }
        out
    }

    pub fn component(&self, l: Letter, track: usize) -> usize {
        let stride: usize = self.tracks[track + 1..].iter().map(Vec::len).product();
        (l.index() / stride) % self.tracks[track].len()
    }

    /// Tracks of `self` followed by the tracks of `other`.
    pub fn concat(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut tracks = self.tracks.clone();
        tracks.extend(other.tracks.iter().cloned());
        Alphabet::product(tracks)
    }

    /// `n` copies of this alphabet's tracks side by side.
    pub fn power(&self, n: usize) -> Result<Alphabet> {
        let mut tracks = Vec::with_capacity(self.arity() * n);
        for _ in 0..n {
            tracks.extend(self.tracks.iter().cloned());
        }
        Alphabet::product(tracks)
    }

    pub fn without_track(&self, track: usize) -> Result<Alphabet> {
        if track >= self.arity() {
            return Err(Error::BadTrack {
                index: track,
                arity: self.arity(),
            });
        }
        let mut tracks = self.tracks.clone();
        tracks.remove(track);
        Alphabet::product(tracks)
    }

    pub fn with_track(&self, position: usize, new_track: &Alphabet) -> Result<Alphabet> {
        if position > self.arity() {
            return Err(Error::BadTrack {
                index: position,
                arity: self.arity(),
            });
        }
        let mut tracks = self.tracks.clone();
        for (k, t) in new_track.tracks.iter().enumerate() {
            tracks.insert(position + k, t.clone());
        }
        Alphabet::product(tracks)
    }

    /// Alphabet made of the listed tracks (in that order).
    pub fn select(&self, tracks: &[usize]) -> Result<Alphabet> {
        let mut out = Vec::with_capacity(tracks.len());
        for &t in tracks {
            if t >= self.arity() {
                return Err(Error::BadTrack {
                    index: t,
                    arity: self.arity(),
                });
            }
            out.push(self.tracks[t].clone());
        }
        Alphabet::product(out)
    }

    /// Letter of `self.select(tracks)` obtained by reading the given tracks of `l`.
    pub fn restrict(&self, l: Letter, tracks: &[usize], target: &Alphabet) -> Letter {
        let comps = self.decode(l);
        let picked: Vec<usize> = tracks.iter().map(|&t| comps[t]).collect();
        target.encode(&picked)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let comps = self.decode(l);
        if self.arity() == 1 {
            return self.tracks[0][comps[0]].clone();
        }
        let parts: Vec<&str> = comps
            .iter()
            .zip(&self.tracks)
            .map(|(&c, t)| t[c].as_str())
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_letter(&self, s: &str) -> Result<Letter> {
        let s = s.trim();
        let parts: Vec<&str> = if self.arity() == 1 {
            vec![s]
        } else {
            let inner = s
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::AlphabetMismatch(format!("expected tuple letter, got {s:?}")))?;
            if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(str::trim).collect()
            }
        };
        if parts.len() != self.arity() {
            return Err(Error::AlphabetMismatch(format!(
                "letter {s:?} has {} components, alphabet has arity {}",
                parts.len(),
                self.arity()
            )));
        }
        let mut comps = Vec::with_capacity(parts.len());
        for (p, t) in parts.iter().zip(&self.tracks) {
            let c = t
                .iter()
                .position(|x| x == p)
                .ok_or_else(|| Error::AlphabetMismatch(format!("symbol {p:?} not in alphabet")))?;
            comps.push(c);
        }
        Ok(self.encode(&comps))
    }

    /// Parses a comma-separated list of letters (as written by [`fmt::Display`])
    /// and recovers the track alphabets from it.
    pub fn parse_listing(s: &str) -> Result<Alphabet> {
        let letters = split_top_level(s)?;
        if letters.is_empty() {
            return Err(Error::Malformed("empty alphabet".into()));
        }
        let comps: Vec<Vec<String>> = letters
            .iter()
            .map(|l| {
                if let Some(inner) = l.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                    if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner.split(',').map(|p| p.trim().to_string()).collect()
                    }
                } else {
                    vec![l.clone()]
                }
            })
            .collect();
        let arity = comps[0].len();
        if comps.iter().any(|c| c.len() != arity) {
            return Err(Error::Malformed("letters of differing arity".into()));
        }
        let mut tracks: Vec<Vec<String>> = vec![Vec::new(); arity];
        for c in &comps {
            for (t, sym) in tracks.iter_mut().zip(c) {
                if !t.contains(sym) {
                    t.push(sym.clone());
                }
            }
        }
        let alphabet = Alphabet::product(tracks)?;
        if alphabet.size() != comps.len() {
            return Err(Error::Malformed(format!(
                "listed {} letters but the track product has {}",
                comps.len(),
                alphabet.size()
            )));
        }
        let mut seen = vec![false; alphabet.size()];
        for l in &letters {
            let idx = alphabet.parse_letter(l)?.index();
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Malformed(format!("duplicate letter {l}")));
            }
        }
        Ok(alphabet)
    }
}

/// A total map from the letters of a target alphabet to letters of a source
/// alphabet; induces a letter-to-letter map on words and trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    target: Alphabet,
    image: Vec<Letter>,
}

impl LetterMap {
    pub fn from_fn(target: Alphabet, f: impl Fn(Letter) -> Letter) -> Self {
        let image = target.letters().map(f).collect();
        LetterMap { target, image }
    }

    /// Builds a map from explicit pairs; fails unless every target letter is mapped.
    pub fn from_pairs(
        target: Alphabet,
        pairs: impl IntoIterator<Item = (Letter, Letter)>,
    ) -> Result<Self> {
        let mut image = vec![None; target.size()];
        for (from, to) in pairs {
            if !target.contains(from) {
                return Err(Error::PartialMap(format!("letter {} not in target", from.0)));
            }
            image[from.index()] = Some(to);
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                l.ok_or_else(|| {
                    Error::PartialMap(format!(
                        "no image for letter {}",
                        target.letter_name(Letter(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LetterMap { target, image })
    }

    /// Map reading the given source tracks, in order, from each target letter;
    /// realizes permutation, duplication and insertion of tracks.
    pub fn track_selection(target: Alphabet, source: &Alphabet, tracks: &[usize]) -> Result<Self> {
        if tracks.len() != source.arity() {
            return Err(Error::PartialMap(format!(
                "{} tracks selected for a source of arity {}",
                tracks.len(),
                source.arity()
            )));
        }
        for (k, &t) in tracks.iter().enumerate() {
            if t >= target.arity() {
                return Err(Error::BadTrack {
                    index: t,
                    arity: target.arity(),
                });
            }
            if target.track(t) != source.track(k) {
                return Err(Error::AlphabetMismatch(format!(
                    "track {t} of the target differs from source track {k}"
                )));
            }
        }
        let tracks = tracks.to_vec();
        Ok(Self::from_fn(target.clone(), |l| {
            let comps = target.decode(l);
            source.encode(&tracks.iter().map(|&t| comps[t]).collect::<Vec<_>>())
        }))
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.image[l.index()]
    }

    pub(crate) fn check_source(&self, source: &Alphabet) -> Result<()> {
        match self.image.iter().find(|l| !source.contains(**l)) {
            Some(l) => Err(Error::AlphabetMismatch(format!(
                "letter map image {} outside source alphabet",
                l.0
            ))),
            None => Ok(()),
        }
    }
}

fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Malformed("unbalanced parentheses".into()));
                }
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Malformed("unbalanced parentheses".into()));
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    if out.iter().any(String::is_empty) {
        return Err(Error::Malformed("empty letter in alphabet listing".into()));
    }
    Ok(out)
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.letters().map(|l| self.letter_name(l)).collect();
        write!(f, "{}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_first_track_most_significant() {
        let a = Alphabet::product(vec![
            vec!["0".into(), "1".into()],
            vec!["a".into(), "b".into(), "c".into()],
        ])
        .unwrap();
        assert_eq!(a.size(), 6);
        let l = a.encode(&[1, 2]);
        assert_eq!(l, Letter(5));
        assert_eq!(a.decode(l), vec![1, 2]);
        assert_eq!(a.component(l, 0), 1);
        assert_eq!(a.component(l, 1), 2);
        assert_eq!(a.letter_name(l), "(1,c)");
        assert_eq!(a.parse_letter("(1,c)").unwrap(), l);
    }

    #[test]
    fn listing_round_trip_recovers_tracks() {
        let a = Alphabet::binary_tracks(3).unwrap();
        let b = Alphabet::parse_listing(&a.to_string()).unwrap();
        assert_eq!(a, b);
        let s = Alphabet::parse_listing("0,1").unwrap();
        assert_eq!(s, Alphabet::binary());
        let u = Alphabet::parse_listing("()").unwrap();
        assert_eq!(u, Alphabet::unit());
        assert_eq!(u.size(), 1);
    }

    #[test]
    fn rejects_incomplete_products_and_bad_symbols() {
        assert!(Alphabet::parse_listing("(0,0),(1,1)").is_err());
        assert!(Alphabet::single(&["a b"]).is_err());
        assert!(Alphabet::single::<&str>(&[]).is_err());
        assert!(Alphabet::binary().parse_letter("2").is_err());
    }

    #[test]
    fn grouping_preserves_indices() {
        let a = Alphabet::binary_tracks(2).unwrap();
        let sel = a.select(&[1, 0]).unwrap();
        let l = a.encode(&[1, 0]);
        assert_eq!(a.restrict(l, &[1, 0], &sel), sel.encode(&[0, 1]));
        assert!(a.without_track(2).is_err());
        assert_eq!(a.without_track(0).unwrap(), Alphabet::binary());
    }
}
